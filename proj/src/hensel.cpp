#include "hyp2/hensel.hpp"

#include <stdexcept>

namespace hyp2 {

namespace {

UnramPoly reduce_mod_p_power(const UnramPoly& f, unsigned k) {
  return map_coeffs(f, f.ring(), [k](const UnramElem& c) { return c.reduce_mod_p_power(k); });
}

// Forces an exact 1 in the leading position of a polynomial known to be
// monic of degree `deg` mod p^k, dropping garbage above it.
UnramPoly normalize_monic(UnramPoly f, int deg) {
  std::vector<UnramElem> c = f.coeffs();
  c.resize(static_cast<std::size_t>(deg) + 1, f.ring().zero());
  c.back() = f.ring().one();
  return UnramPoly(f.ring(), std::move(c));
}

struct Lifted {
  UnramPoly g, h;
};

// Quadratic Hensel lifting of f = g h with s g + t h = 1, all given mod p.
Lifted lift_pair(const UnramPoly& f, const FqPoly& g0, const FqPoly& h0) {
  const auto& ring = f.ring();
  const Xgcd eg = xgcd(g0, h0);
  if (eg.g.degree() != 0) throw SeedsNotCoprime();
  UnramPoly g = lift_to(ring, g0), h = lift_to(ring, h0);
  UnramPoly s = lift_to(ring, eg.s), t = lift_to(ring, eg.t);
  const UnramPoly one = UnramPoly::constant(ring.one());
  const int dg = g0.degree(), dh = h0.degree();
  for (unsigned k = 1; k < ring.precision();) {
    const unsigned k2 = std::min(2 * k, ring.precision());
    const UnramPoly e = f - g * h;
    auto [q, r] = divrem(s * e, h);
    UnramPoly g_new = normalize_monic(reduce_mod_p_power(g + t * e + q * g, k2), dg);
    UnramPoly h_new = normalize_monic(reduce_mod_p_power(h + r, k2), dh);
    const UnramPoly b = s * g_new + t * h_new - one;
    auto [c, d] = divrem(s * b, h_new);
    s = reduce_mod_p_power(s - d, k2);
    t = reduce_mod_p_power(t - t * b - c * g_new, k2);
    g = std::move(g_new);
    h = std::move(h_new);
    k = k2;
  }
  return {std::move(g), std::move(h)};
}

void lift_tree(const UnramPoly& f, const std::vector<FqPoly>& seeds, std::size_t lo, std::size_t hi,
               std::vector<UnramPoly>& out) {
  if (hi - lo == 1) {
    out[lo] = f;
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const auto& F = seeds[lo].ring();
  FqPoly g0 = FqPoly::constant(F.one()), h0 = FqPoly::constant(F.one());
  for (std::size_t i = lo; i < mid; ++i) g0 *= seeds[i];
  for (std::size_t i = mid; i < hi; ++i) h0 *= seeds[i];
  auto [g, h] = lift_pair(f, g0, h0);
  lift_tree(g, seeds, lo, mid, out);
  lift_tree(h, seeds, mid, hi, out);
}

}  // namespace

UnramPoly lift_to(const UnramRing& ring, const FqPoly& f) {
  return map_coeffs(f, ring, [&ring](const FqElem& c) { return ring.lift(c); });
}

FqPoly reduce(const UnramPoly& f) {
  return map_coeffs(f, f.ring().residue_field(), [](const UnramElem& c) { return c.reduce(); });
}

UnramPoly truncate(const UnramPoly& f, unsigned precision) {
  const UnramRing target = f.ring().with_precision(precision);
  return map_coeffs(f, target, [precision](const UnramElem& c) { return c.truncate(precision); });
}

UnramPoly extend(const UnramPoly& f, unsigned precision) {
  const UnramRing target = f.ring().with_precision(precision);
  return map_coeffs(f, target, [precision](const UnramElem& c) { return c.extend(precision); });
}

UnramPoly divide_by_p_power(const UnramPoly& f, unsigned k) {
  const UnramRing target = f.ring().with_precision(f.ring().precision() - k);
  return map_coeffs(f, target, [k](const UnramElem& c) { return c.divide_by_p_power(k); });
}

UnramPoly from_integers(const UnramRing& ring, const std::vector<mpz_class>& coeffs) {
  std::vector<UnramElem> c;
  c.reserve(coeffs.size());
  for (const auto& v : coeffs) c.push_back(ring.from_integer(v));
  return UnramPoly(ring, std::move(c));
}

std::vector<UnramPoly> hensel_lift_factors(const UnramPoly& f, const std::vector<FqPoly>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("hensel_lift_factors: no seeds");
  if (!f.is_monic()) throw std::invalid_argument("hensel_lift_factors: f must be monic");
  const FqField& F = f.ring().residue_field();
  FqPoly prod = FqPoly::constant(F.one());
  for (const auto& s : seeds) {
    if (!(s.ring() == F)) throw RingMismatch("hensel_lift_factors: seed over the wrong field");
    if (!s.is_monic()) throw std::invalid_argument("hensel_lift_factors: seeds must be monic");
    prod *= s;
  }
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i + 1; j < seeds.size(); ++j) {
      if (gcd(seeds[i], seeds[j]).degree() != 0) throw SeedsNotCoprime();
    }
  }
  if (!(prod == reduce(f))) throw ProductMismatch();
  std::vector<UnramPoly> out(seeds.size(), UnramPoly(f.ring()));
  lift_tree(f, seeds, 0, seeds.size(), out);
  return out;
}

}  // namespace hyp2
