#include "hyp2/cluster_pictures.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hyp2/integer.hpp"
#include "hyp2/resultant.hpp"
#include "hyp2/unram.hpp"

namespace hyp2 {

namespace {

Cluster build(const ValuationMatrix& v, const std::vector<std::size_t>& members, Val depth) {
  Cluster c{depth, {}, {}};
  std::vector<std::size_t> parent(members.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (v[members[i]][members[j]] > depth) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> groups(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) groups[find(i)].push_back(members[i]);
  for (const auto& grp : groups) {
    if (grp.empty()) continue;
    if (grp.size() == 1) {
      c.leaves.push_back(grp.front());
      continue;
    }
    Val inner = Val::infinity();
    for (std::size_t a : grp) {
      for (std::size_t b : grp) {
        if (a != b) inner = std::min(inner, v[a][b]);
      }
    }
    if (!inner.is_finite()) throw std::invalid_argument("repeated root");
    c.children.push_back(build(v, grp, inner));
  }
  return c;
}

void collect_leaves(const Cluster& c, std::vector<std::size_t>& out) {
  out.insert(out.end(), c.leaves.begin(), c.leaves.end());
  for (const auto& ch : c.children) collect_leaves(ch, out);
}

void fill_matrix(const Cluster& c, ValuationMatrix& m) {
  // Leaves in different parts of c meet exactly at c.
  std::vector<std::vector<std::size_t>> parts;
  for (std::size_t l : c.leaves) parts.push_back({l});
  for (const auto& ch : c.children) {
    parts.emplace_back();
    collect_leaves(ch, parts.back());
    fill_matrix(ch, m);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      for (std::size_t a : parts[i]) {
        for (std::size_t b : parts[j]) m[a][b] = m[b][a] = c.depth;
      }
    }
  }
}

nlohmann::json val_json(const Val& v) { return {{"num", v.num()}, {"den", v.den()}}; }

nlohmann::json cluster_json(const Cluster& c) {
  std::vector<nlohmann::json> kids;
  for (const auto& ch : c.children) kids.push_back(cluster_json(ch));
  std::sort(kids.begin(), kids.end(), [](const auto& a, const auto& b) { return a.dump() < b.dump(); });
  return {{"depth", val_json(c.depth)}, {"leaves", c.leaves.size()}, {"children", kids}};
}

std::string cluster_ascii(const Cluster& c) {
  std::vector<std::string> parts;
  for (const auto& ch : c.children) parts.push_back(cluster_ascii(ch));
  std::sort(parts.begin(), parts.end());
  for (std::size_t i = 0; i < c.leaves.size(); ++i) parts.emplace_back("*");
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + parts[i];
  return s + ")_" + c.depth.to_string();
}

// a + b sqrt(p) with a, b in the unramified quadratic ring.
struct ArenaElem {
  UnramElem a, b;

  ArenaElem operator-(const ArenaElem& o) const { return {a - o.a, b - o.b}; }

  Val valuation() const {
    const UnramValuation va = a.valuation(), vb = b.valuation();
    const Val x = Val::integer(va.value);
    const Val y = Val::integer(vb.value) + Val::rational(1, 2);
    if (va.saturated && vb.saturated) throw PrecisionExhausted("root difference vanishes");
    if (va.saturated) {
      if (y >= x) throw PrecisionExhausted("root difference");
      return y;
    }
    if (vb.saturated) {
      if (x >= y) throw PrecisionExhausted("root difference");
      return x;
    }
    return std::min(x, y);
  }
};

// Square root of a unit of Z_p inside the unramified quadratic ring.
UnramElem unit_sqrt(const UnramElem& u) {
  const UnramRing& ring = u.ring();
  const FqField& k = ring.residue_field();
  std::mt19937_64 rng(1);
  const FqPoly x2 = FqPoly::monomial(k.one(), 2) - FqPoly::constant(u.reduce());
  const auto roots = fq_roots(x2, rng);
  if (roots.empty()) throw std::logic_error("unit has no square root in the quadratic residue field");
  UnramElem s = ring.lift(roots.front());
  const UnramElem half = ring.from_int(2).inverse();
  for (int i = 0; i < 80 && !(s * s == u); ++i) s = (s + u * s.inverse()) * half;
  if (!(s * s == u)) throw std::logic_error("Newton iteration for a square root did not converge");
  return s;
}

Poly<BigInt> integer_poly(const IntPoly& c) { return Poly<BigInt>(IntegerRing{}, std::vector<BigInt>(c.begin(), c.end())); }

std::vector<std::vector<ArenaElem>> odd_p_roots(const std::vector<IntPoly>& factors, std::uint32_t p, unsigned precision) {
  if (p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("odd_p_picture needs an odd prime");
  for (const auto& f : factors) {
    if (f.size() > 3) throw UnsupportedExtension("factor of degree > 2");
  }
  if (precision == 0) {
    Poly<BigInt> prod = Poly<BigInt>::constant(BigInt(1L));
    for (const auto& f : factors) prod *= integer_poly(f);
    const BigInt disc = poly_discriminant(prod);
    if (disc.is_zero()) throw std::invalid_argument("factors have a repeated root");
    precision = static_cast<unsigned>(integer_valuation(disc.value(), p) + 16);
  }
  const UnramRing ring(p, 2, precision);
  const UnramElem half = ring.from_int(2).inverse();
  std::vector<std::vector<ArenaElem>> out;
  for (const auto& f : factors) {
    if (f.size() < 2 || f.back() != 1) throw std::invalid_argument("factors must be monic of degree 1 or 2");
    if (f.size() == 2) {
      out.push_back({{ring.from_integer(-f[0]), ring.zero()}});
      continue;
    }
    const mpz_class disc = f[1] * f[1] - 4 * f[0];
    if (disc == 0) throw std::invalid_argument("quadratic factor with a double root");
    const long v = integer_valuation(disc, p);
    mpz_class unit = disc, pk = 1;
    for (long i = 0; i < v; ++i) unit /= p;
    for (long i = 0; i < v / 2; ++i) pk *= p;
    // sqrt(disc) = p^{v div 2} (sqrt p)^{v mod 2} sqrt(unit)
    const UnramElem root = unit_sqrt(ring.from_integer(unit)) * ring.from_integer(pk) * half;
    const UnramElem centre = ring.from_integer(-f[1]) * half;
    if (v % 2 == 0) {
      out.push_back({{centre + root, ring.zero()}, {centre - root, ring.zero()}});
    } else {
      out.push_back({{centre, root}, {centre, -root}});
    }
  }
  return out;
}

}  // namespace

std::size_t Cluster::size() const {
  std::size_t n = leaves.size();
  for (const auto& c : children) n += c.size();
  return n;
}

ClusterPicture picture_from_valuations(const ValuationMatrix& v, std::vector<std::string> labels) {
  const std::size_t n = v.size();
  if (n < 2) throw std::invalid_argument("a picture needs at least two roots");
  Val top = Val::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) top = std::min(top, v[i][j]);
  }
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  return {std::move(labels), build(v, all, top), {}};
}

ValuationMatrix valuation_matrix(const ClusterPicture& pic) {
  const std::size_t n = pic.top.size();
  ValuationMatrix m(n, std::vector<Val>(n, Val::infinity()));
  fill_matrix(pic.top, m);
  return m;
}

ClusterPicture picture_from_certificate(const StarCertificate& cert) {
  if (!cert.certified()) throw NotCertified();
  ClusterPicture pic;
  pic.top.depth = Val::integer(0);
  for (std::size_t i = 0; i < cert.pairs.size(); ++i) {
    pic.leaf_labels.push_back("alpha" + std::to_string(i + 1));
    pic.leaf_labels.push_back("beta" + std::to_string(i + 1));
    pic.top.children.push_back({cert.pairs[i].depth, {2 * i, 2 * i + 1}, {}});
  }
  pic.twin_frobenius = cert.frobenius_perm;
  return pic;
}

ClusterPicture shifted_picture(const ClusterPicture& pic) {
  if (!(pic.top.depth == Val::integer(0)) || !pic.top.leaves.empty()) {
    throw std::invalid_argument("shifted_picture expects a depth-0 top cluster of twins");
  }
  ClusterPicture out{pic.leaf_labels, {pic.top.depth, {}, {}}, {}};
  std::vector<std::size_t> new_index(pic.top.children.size(), SIZE_MAX);
  for (std::size_t i = 0; i < pic.top.children.size(); ++i) {
    const auto& twin = pic.top.children[i];
    if (twin.leaves.size() != 2 || !twin.children.empty()) throw std::invalid_argument("child is not a twin");
    const Val d = twin.depth - Val::integer(2);
    if (d < Val::integer(0)) throw std::invalid_argument("twin shallower than v(4)");
    if (d == Val::integer(0)) {
      out.top.leaves.insert(out.top.leaves.end(), twin.leaves.begin(), twin.leaves.end());
    } else {
      new_index[i] = out.top.children.size();
      out.top.children.push_back({d, twin.leaves, {}});
    }
  }
  if (!pic.twin_frobenius.empty()) {
    for (std::size_t i = 0; i < pic.top.children.size(); ++i) {
      if (new_index[i] != SIZE_MAX) out.twin_frobenius.push_back(new_index[pic.twin_frobenius[i]]);
    }
  }
  return out;
}

nlohmann::json canonical_json(const ClusterPicture& pic) {
  return {{"roots", pic.top.size()}, {"top", cluster_json(pic.top)}};
}

bool same_picture(const ClusterPicture& a, const ClusterPicture& b) { return canonical_json(a) == canonical_json(b); }

std::string ascii_picture(const ClusterPicture& pic) { return cluster_ascii(pic.top); }

ValuationMatrix odd_p_valuations(const std::vector<IntPoly>& factors, std::uint32_t p, unsigned precision) {
  std::vector<ArenaElem> roots;
  for (const auto& rs : odd_p_roots(factors, p, precision)) roots.insert(roots.end(), rs.begin(), rs.end());
  ValuationMatrix m(roots.size(), std::vector<Val>(roots.size(), Val::infinity()));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) m[i][j] = m[j][i] = (roots[i] - roots[j]).valuation();
  }
  return m;
}

ClusterPicture odd_p_picture(const std::vector<IntPoly>& factors, std::uint32_t p, unsigned precision) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    for (std::size_t j = 0; j + 1 < factors[k].size(); ++j) labels.push_back(std::to_string(k) + "." + std::to_string(j));
  }
  return picture_from_valuations(odd_p_valuations(factors, p, precision), std::move(labels));
}

std::vector<OracleCheck> valuation_oracle(const std::vector<IntPoly>& factors, std::uint32_t p) {
  const auto roots = odd_p_roots(factors, p, 0);
  std::vector<OracleCheck> out;
  for (std::size_t g = 0; g < factors.size(); ++g) {
    if (roots[g].size() == 2) {
      const BigInt disc = poly_discriminant(integer_poly(factors[g]));
      const Val dist = (roots[g][0] - roots[g][1]).valuation();
      out.push_back({"disc of factor " + std::to_string(g), Val::integer(integer_valuation(disc.value(), p)),
                     dist + dist});
    }
    for (std::size_t h = g + 1; h < factors.size(); ++h) {
      const BigInt res = poly_resultant(integer_poly(factors[g]), integer_poly(factors[h]));
      if (res.is_zero()) throw std::invalid_argument("factors share a root");
      Val sum = Val::integer(0);
      for (const auto& a : roots[g]) {
        for (const auto& b : roots[h]) sum = sum + (a - b).valuation();
      }
      out.push_back({"res of factors " + std::to_string(g) + "," + std::to_string(h),
                     Val::integer(integer_valuation(res.value(), p)), sum});
    }
  }
  return out;
}

}  // namespace hyp2
