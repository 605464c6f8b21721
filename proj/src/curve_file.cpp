#include "hyp2/curve_file.hpp"

#include <fstream>

#include "hyp2/integer.hpp"

namespace hyp2 {

using nlohmann::json;

namespace {

mpz_class to_mpz(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  throw SchemaError(where + ": expected an integer or a decimal string");
}

IntPoly to_poly(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a nonempty coefficient list");
  IntPoly out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_mpz(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

json poly_json(const IntPoly& f) {
  json out = json::array();
  for (const auto& c : f) {
    if (c.fits_slong_p() && abs(c) < (mpz_class(1) << 53)) {
      out.push_back(c.get_si());
    } else {
      out.push_back(c.get_str());
    }
  }
  return out;
}

}  // namespace

const CurveEntry& CurveFile::find(const std::string& label) const {
  for (const auto& c : curves) {
    if (c.label == label) return c;
  }
  throw std::out_of_range("no curve labelled '" + label + "'");
}

CurveFile parse_curve_file(const json& j) {
  if (!j.is_object()) throw SchemaError("top level must be an object");
  if (!j.contains("schema_version") || j["schema_version"] != 1) throw SchemaError("schema_version must be 1");
  if (!j.contains("curves") || !j["curves"].is_array()) throw SchemaError("missing curves list");
  CurveFile file;
  for (std::size_t k = 0; k < j["curves"].size(); ++k) {
    const json& cj = j["curves"][k];
    const std::string where = "curves[" + std::to_string(k) + "]";
    if (!cj.is_object()) throw SchemaError(where + ": expected an object");
    if (!cj.contains("label") || !cj["label"].is_string()) throw SchemaError(where + ".label: expected a string");
    CurveEntry entry;
    entry.label = cj["label"].get<std::string>();
    if (!cj.contains("c")) throw SchemaError(where + ".c missing");
    if (!cj.contains("f")) throw SchemaError(where + ".f missing");
    entry.curve.c = to_mpz(cj["c"], where + ".c");
    entry.curve.f = to_poly(cj["f"], where + ".f");
    if (cj.contains("base_residue_degree")) {
      const json& d = cj["base_residue_degree"];
      if (!d.is_number_integer() || d.get<long>() < 1) throw SchemaError(where + ".base_residue_degree: positive integer");
      entry.curve.base_degree = d.get<unsigned>();
    }
    try {
      entry.curve.validate();
    } catch (const InvalidCurve& e) {
      throw SchemaError(where + ": " + e.what());
    }
    if (cj.contains("odd_primes")) {
      const json& ops = cj["odd_primes"];
      if (!ops.is_array()) throw SchemaError(where + ".odd_primes: expected a list");
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const std::string w = where + ".odd_primes[" + std::to_string(i) + "]";
        const json& op = ops[i];
        if (!op.is_object() || !op.contains("p") || !op["p"].is_number_unsigned()) throw SchemaError(w + ".p: expected a prime");
        const auto p = op["p"].get<std::uint32_t>();
        if (p % 2 == 0 || !is_prime(p)) throw SchemaError(w + ".p: expected an odd prime");
        if (!op.contains("factors") || !op["factors"].is_array()) throw SchemaError(w + ".factors: expected a list");
        std::vector<IntPoly> factors;
        IntPoly prod{1};
        for (std::size_t t = 0; t < op["factors"].size(); ++t) {
          factors.push_back(to_poly(op["factors"][t], w + ".factors[" + std::to_string(t) + "]"));
          if (factors.back().size() > 3 || factors.back().size() < 2 || factors.back().back() != 1) {
            throw SchemaError(w + ": factors must be monic of degree 1 or 2");
          }
          prod = multiply(prod, factors.back());
        }
        if (prod != entry.curve.f) throw SchemaError(w + ": factors do not multiply to f");
        entry.odd_primes[p] = std::move(factors);
      }
    }
    for (const auto& other : file.curves) {
      if (other.label == entry.label) throw SchemaError(where + ": duplicate label " + entry.label);
    }
    file.curves.push_back(std::move(entry));
  }
  return file;
}

CurveFile load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return parse_curve_file(j);
}

json curve_file_json(const CurveFile& file) {
  json curves = json::array();
  for (const auto& e : file.curves) {
    json c = {{"label", e.label},
              {"c", poly_json({e.curve.c})[0]},
              {"f", poly_json(e.curve.f)},
              {"base_residue_degree", e.curve.base_degree}};
    if (!e.odd_primes.empty()) {
      json ops = json::array();
      for (const auto& [p, fs] : e.odd_primes) {
        json factors = json::array();
        for (const auto& f : fs) factors.push_back(poly_json(f));
        ops.push_back({{"p", p}, {"factors", factors}});
      }
      c["odd_primes"] = ops;
    }
    curves.push_back(c);
  }
  return {{"schema_version", file.schema_version}, {"curves", curves}};
}

}  // namespace hyp2
