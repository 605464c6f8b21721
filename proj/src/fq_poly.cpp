#include "hyp2/fq_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyp2 {

namespace {

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^{q^k} mod f, computed by k applications of the q-power map.
FqPoly x_pow_q_iter(const FqPoly& f, unsigned k) {
  const mpz_class q = f.ring().order();
  FqPoly h = FqPoly::x(f.ring()) % f;
  for (unsigned i = 0; i < k; ++i) h = pow_mod(h, q, f);
  return h;
}

FqPoly random_poly(const FqField& field, int below_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> digit(0, field.p() - 1);
  std::vector<FqElem> c;
  for (int i = 0; i < below_degree; ++i) {
    std::vector<std::uint32_t> v(field.degree());
    for (auto& x : v) x = digit(rng);
    c.push_back(field.element(std::move(v)));
  }
  return FqPoly(field, std::move(c));
}

// p-th root of a polynomial whose derivative vanishes.
FqPoly pth_root(const FqPoly& f) {
  const auto p = f.ring().p();
  std::vector<FqElem> c;
  for (std::size_t i = 0; i < f.size(); i += p) {
    // inverse Frobenius on coefficients: x^{p^{m-1}}
    FqElem r = f.coeffs()[i];
    for (unsigned k = 1; k < f.ring().degree(); ++k) r = r.frobenius();
    c.push_back(r);
  }
  return FqPoly(f.ring(), std::move(c));
}

}  // namespace

bool canonical_less(const FqPoly& a, const FqPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.size(); i-- > 0;) {
    const auto cmp = a.coeffs()[i] <=> b.coeffs()[i];
    if (cmp != 0) return cmp < 0;
  }
  return false;
}

FqPoly make_monic(const FqPoly& f) {
  if (f.is_zero() || f.is_monic()) return f;
  return f * f.lead().inverse();
}

FqPoly gcd(FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

Xgcd xgcd(const FqPoly& a, const FqPoly& b) {
  const auto& F = a.ring();
  FqPoly r0 = a, r1 = b;
  FqPoly s0 = FqPoly::constant(F.one()), s1(F);
  FqPoly t0(F), t1 = FqPoly::constant(F.one());
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FqPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    FqPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const FqElem inv = r0.lead().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

bool is_irreducible(const FqPoly& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const FqPoly g = make_monic(f);
  const FqPoly x = FqPoly::x(f.ring());
  if (!(x_pow_q_iter(g, static_cast<unsigned>(n)) == x % g)) return false;
  for (unsigned d : prime_divisors(static_cast<unsigned>(n))) {
    const FqPoly h = x_pow_q_iter(g, static_cast<unsigned>(n) / d) - x;
    if (gcd(g, h).degree() != 0) return false;
  }
  return true;
}

std::vector<FqFactor> squarefree_decomposition(const FqPoly& f) {
  std::vector<FqFactor> out;
  if (f.degree() <= 0) return out;
  const auto p = f.ring().p();
  FqPoly a = make_monic(f);
  const FqPoly da = derivative(a);
  if (da.is_zero()) {
    for (auto& [g, e] : squarefree_decomposition(pth_root(a))) out.push_back({g, e * p});
    return out;
  }
  // Musser's algorithm.
  FqPoly c = gcd(a, da);
  FqPoly w = divrem(a, c).first;
  unsigned i = 1;
  while (w.degree() > 0) {
    FqPoly y = gcd(w, c);
    FqPoly z = divrem(w, y).first;
    if (z.degree() > 0) out.push_back({make_monic(z), i});
    ++i;
    w = std::move(y);
    c = divrem(c, w).first;
  }
  if (c.degree() > 0) {
    for (auto& [g, e] : squarefree_decomposition(pth_root(c))) out.push_back({g, e * p});
  }
  return out;
}

std::vector<FqFactor> distinct_degree_factorization(const FqPoly& f) {
  std::vector<FqFactor> out;
  FqPoly rest = make_monic(f);
  const FqPoly x = FqPoly::x(f.ring());
  const mpz_class q = f.ring().order();
  FqPoly h = x % rest;
  for (unsigned d = 1; 2 * static_cast<int>(d) <= rest.degree(); ++d) {
    h = pow_mod(h, q, rest);
    FqPoly g = gcd(rest, h - x);
    if (g.degree() > 0) {
      out.push_back({g, d});
      rest = divrem(rest, g).first;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.push_back({rest, static_cast<unsigned>(rest.degree())});
  return out;
}

std::vector<FqPoly> equal_degree_factorization(const FqPoly& f, unsigned degree, std::mt19937_64& rng) {
  const FqPoly g = make_monic(f);
  if (g.degree() <= 0) return {};
  if (static_cast<unsigned>(g.degree()) == degree) return {g};
  const auto& F = g.ring();
  const mpz_class q = F.order();
  for (;;) {
    const FqPoly a = random_poly(F, g.degree(), rng);
    if (a.degree() < 1) continue;
    FqPoly b(F);
    if (F.p() == 2) {
      // Trace map a + a^2 + ... + a^{2^{m d - 1}} mod g.
      FqPoly term = a;
      b = a;
      for (unsigned i = 1; i < F.degree() * degree; ++i) {
        term = (term * term) % g;
        b += term;
      }
    } else {
      mpz_class e;
      mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), degree);
      e = (e - 1) / 2;
      b = pow_mod(a, e, g) - FqPoly::constant(F.one());
    }
    FqPoly d = gcd(g, b);
    if (d.degree() <= 0 || d.degree() == g.degree()) continue;
    auto left = equal_degree_factorization(d, degree, rng);
    auto right = equal_degree_factorization(divrem(g, d).first, degree, rng);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
}

std::vector<FqFactor> fq_factor(const FqPoly& f, std::mt19937_64& rng) {
  if (f.is_zero()) throw std::invalid_argument("fq_factor: zero polynomial");
  std::vector<FqFactor> out;
  for (const auto& [sf, mult] : squarefree_decomposition(f)) {
    for (const auto& [part, d] : distinct_degree_factorization(sf)) {
      for (auto& irr : equal_degree_factorization(part, d, rng)) out.push_back({std::move(irr), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const FqFactor& a, const FqFactor& b) {
    if (canonical_less(a.factor, b.factor)) return true;
    if (canonical_less(b.factor, a.factor)) return false;
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

std::vector<FqElem> fq_roots(const FqPoly& f, std::mt19937_64& rng) {
  if (f.is_zero()) throw std::invalid_argument("fq_roots: zero polynomial");
  const FqPoly x = FqPoly::x(f.ring());
  FqPoly g = make_monic(f);
  const FqPoly xq = pow_mod(x, f.ring().order(), g);
  g = gcd(g, xq - x);
  std::vector<FqElem> roots;
  for (const auto& lin : equal_degree_factorization(g, 1, rng)) roots.push_back(-lin.coeffs()[0]);
  std::sort(roots.begin(), roots.end());
  return roots;
}

FqPoly char2_poly_sqrt(const FqPoly& f) {
  const auto& F = f.ring();
  if (F.p() != 2) throw std::domain_error("char2_poly_sqrt needs characteristic 2");
  std::vector<FqElem> c;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i % 2 == 1) {
      if (!f.coeffs()[i].is_zero()) throw NotASquare();
      continue;
    }
    c.push_back(f.coeffs()[i].sqrt_char2());
  }
  return FqPoly(F, std::move(c));
}

FqPoly fq_poly_from_ints(const FqField& field, const std::vector<long>& coeffs) {
  std::vector<FqElem> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.push_back(field.from_int(v));
  return FqPoly(field, std::move(c));
}

}  // namespace hyp2
