#include "hyp2/star_certify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hyp2/integer.hpp"
#include "hyp2/resultant.hpp"

namespace hyp2 {

namespace {

Poly<BigInt> integer_poly(const std::vector<mpz_class>& c) {
  return Poly<BigInt>(IntegerRing{}, std::vector<BigInt>(c.begin(), c.end()));
}

FqPoly reduce_mod2(const std::vector<mpz_class>& c, const FqField& field) {
  std::vector<FqElem> out;
  for (const auto& x : c) out.push_back(mpz_odd_p(x.get_mpz_t()) ? field.one() : field.zero());
  return FqPoly(field, std::move(out));
}

FqElem sigma_base(FqElem x, unsigned d) {
  for (unsigned i = 0; i < d; ++i) x = x.frobenius();
  return x;
}

// Everything after the residue checks; may throw PrecisionExhausted.
void lift_pairs(StarCertificate& cert, const FqPoly& qbar, unsigned precision, std::mt19937_64& rng) {
  const auto& curve = cert.curve;
  const unsigned d = curve.base_degree;
  const unsigned m = cert.common_degree;
  const FqField field(2, m);
  const FqPoly qbar_m = map_coeffs(qbar, field, [&](const FqElem& e) { return e.is_zero() ? field.zero() : field.one(); });

  // Pair order: orbits under the base Frobenius, each opened by its smallest
  // unused root.
  const std::vector<FqElem> roots = fq_roots(qbar_m, rng);
  if (static_cast<int>(roots.size()) != qbar.degree()) throw std::logic_error("residue square root does not split");
  std::vector<FqElem> ordered;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    FqElem r = roots[i];
    do {
      const auto pos = static_cast<std::size_t>(std::find(roots.begin(), roots.end(), r) - roots.begin());
      used[pos] = true;
      ordered.push_back(r);
      r = sigma_base(r, d);
    } while (!(r == roots[i]));
  }

  const UnramRing ring(2, m, precision);
  const UnramPoly f = from_integers(ring, curve.f);
  std::vector<FqPoly> seeds;
  for (const auto& r : ordered) seeds.push_back(FqPoly::linear(r) * FqPoly::linear(r));
  const std::vector<UnramPoly> lifts = hensel_lift_factors(f, seeds);

  cert.precision = precision;
  cert.pairs.clear();
  cert.failed_pair.reset();
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    const UnramElem b = lifts[i].coeff(1);
    const UnramElem c0 = lifts[i].coeff(0);
    if (!b.reduce().is_zero()) throw std::logic_error("lifted pair factor has odd linear coefficient");
    const UnramElem gamma = (-b).divide_by_p_power(1);
    const UnramElem gamma_full = gamma.extend(precision);
    UnramElem eta = ring.zero();
    try {
      eta = (gamma_full * gamma_full - c0).divide_by_p_power(2);
    } catch (const NotDivisible&) {
      cert.verdict = Verdict::Fail;
      cert.reason = FailReason::DiscCondition;
      cert.failed_pair = i;
      return;
    }
    const UnramValuation v = eta.valuation();
    if (v.saturated) throw PrecisionExhausted("valuation of eta_" + std::to_string(i));
    cert.pairs.push_back(PairData{i, gamma, eta, v.value, fq_absolute_degree(ordered[i]), ordered[i],
                                  Val::integer(2) + Val::integer(v.value).half()});
  }

  cert.frobenius_perm.assign(ordered.size(), 0);
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const FqElem image = sigma_base(ordered[i], d);
    cert.frobenius_perm[i] =
        static_cast<std::size_t>(std::find(ordered.begin(), ordered.end(), image) - ordered.begin());
  }
  for (std::size_t i = 0; i < cert.pairs.size(); ++i) {
    const auto& src = cert.pairs[i];
    const auto& dst = cert.pairs[cert.frobenius_perm[i]];
    if (!(src.gamma.frobenius(d) == dst.gamma) || !(src.eta.frobenius(d) == dst.eta)) {
      throw std::logic_error("pair data is not Galois-stable");
    }
  }

  const bool star = std::all_of(cert.pairs.begin(), cert.pairs.end(), [](const PairData& p) { return p.eta_valuation == 0; });
  cert.verdict = star ? Verdict::Star : Verdict::StarStar;
  cert.reason = FailReason::None;
}

}  // namespace

void CurveInput::validate() const {
  if (c == 0) throw InvalidCurve("c must be nonzero");
  if (base_degree == 0) throw InvalidCurve("base residue degree must be positive");
  if (f.size() < 7 || (f.size() - 1) % 2 != 0) throw InvalidCurve("f must have even degree >= 6");
  if (f.back() != 1) throw InvalidCurve("f must be monic");
  if (f.size() > 65) throw InvalidCurve("degree of f above 64 is not supported");
  if (poly_discriminant(integer_poly(f)).is_zero()) throw InvalidCurve("f is not squarefree");
}

CurveInput CurveInput::translated(const mpz_class& u) const {
  const auto shifted = taylor_shift(integer_poly(f), BigInt(u));
  CurveInput out = *this;
  out.f.clear();
  for (const auto& x : shifted.coeffs()) out.f.push_back(x.value());
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Star: return "Star";
    case Verdict::StarStar: return "StarStar";
    case Verdict::Fail: return "Fail";
  }
  return "?";
}

std::string to_string(FailReason r) {
  switch (r) {
    case FailReason::None: return "None";
    case FailReason::CNotOneMod4: return "CNotOneMod4";
    case FailReason::FBarNotASquare: return "FBarNotASquare";
    case FailReason::QBarNotSeparable: return "QBarNotSeparable";
    case FailReason::DiscCondition: return "DiscCondition";
    case FailReason::PrecisionExhausted: return "PrecisionExhausted";
  }
  return "?";
}

unsigned PairData::degree_over_base(unsigned base_degree) const {
  return std::lcm(base_degree, residue_degree) / base_degree;
}

int StarCertificate::a_bar() const { return mpz_odd_p(a.get_mpz_t()) ? 1 : 0; }

std::vector<std::vector<std::size_t>> StarCertificate::orbits() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(frobenius_perm.size(), false);
  for (std::size_t i = 0; i < frobenius_perm.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t j = i; !seen[j]; j = frobenius_perm[j]) {
      seen[j] = true;
      orbit.push_back(j);
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

UnramPoly StarCertificate::pair_quadratic(std::size_t i) const {
  const auto& p = pairs.at(i);
  const UnramElem g = p.gamma.extend(precision);
  const UnramElem e = p.eta.extend(precision);
  const UnramPoly lin = UnramPoly::linear(g);
  return lin * lin - UnramPoly::constant(g.ring().from_int(4) * e);
}

unsigned default_precision(const CurveInput& curve) {
  const BigInt disc = poly_discriminant(integer_poly(curve.f));
  const long v = integer_valuation(disc.value(), 2);
  return static_cast<unsigned>(std::max<long>(64, 2 * v + 16));
}

StarCertificate certify(const CurveInput& curve, const CertifyOptions& options) {
  curve.validate();
  StarCertificate cert;
  cert.curve = curve;
  const int g = curve.genus();
  cert.small_residue_field = curve.base_degree < 63 && (std::uint64_t{1} << curve.base_degree) < static_cast<std::uint64_t>(g + 1);

  mpz_class c_mod4;
  mpz_fdiv_r_ui(c_mod4.get_mpz_t(), curve.c.get_mpz_t(), 4);
  if (c_mod4 != 1) {
    cert.reason = FailReason::CNotOneMod4;
    return cert;
  }
  cert.a = (curve.c - 1) / 4;

  const FqField f2(2, 1);
  FqPoly qbar(f2);
  try {
    qbar = char2_poly_sqrt(reduce_mod2(curve.f, f2));
  } catch (const NotASquare&) {
    cert.reason = FailReason::FBarNotASquare;
    return cert;
  }
  if (gcd(qbar, derivative(qbar)).degree() > 0) {
    cert.reason = FailReason::QBarNotSeparable;
    return cert;
  }

  std::mt19937_64 rng(options.seed);
  unsigned m = curve.base_degree;
  for (const auto& fac : fq_factor(qbar, rng)) m = std::lcm(m, static_cast<unsigned>(fac.factor.degree()));
  cert.common_degree = m;

  const unsigned n = options.precision ? options.precision : default_precision(curve);
  for (unsigned attempt = 0; attempt < 2; ++attempt) {
    try {
      lift_pairs(cert, qbar, attempt == 0 ? n : 2 * n, rng);
      return cert;
    } catch (const PrecisionExhausted&) {
    }
  }
  cert.verdict = Verdict::Fail;
  cert.reason = FailReason::PrecisionExhausted;
  cert.pairs.clear();
  return cert;
}

std::vector<PairReport> pairing_report(const StarCertificate& cert) {
  if (!cert.certified()) throw NotCertified();
  std::vector<PairReport> out;
  for (std::size_t i = 0; i < cert.pairs.size(); ++i) out.push_back({i, cert.pairs[i].r, cert.pair_quadratic(i)});
  return out;
}

}  // namespace hyp2
