#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hyp2/errors.hpp"

namespace hyp2 {

/// Dense univariate polynomial over a coefficient ring, low degree first.
///
/// E is an element type carrying its ring: it exposes `ring_type`, `ring()`,
/// `is_zero()`, ring arithmetic and `inverse()`. The ring handle provides
/// `zero()`, `one()` and `from_int()`. The zero polynomial has no coefficients,
/// and the leading coefficient of any other polynomial is nonzero.
template <class E>
class Poly {
 public:
  using element_type = E;
  using ring_type = typename E::ring_type;

  explicit Poly(ring_type ring) : ring_(std::move(ring)) {}
  Poly(ring_type ring, std::vector<E> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
    for (const auto& e : c_) {
      if (!(e.ring() == ring_)) throw RingMismatch("Poly coefficient from a different ring");
    }
    trim();
  }

  static Poly constant(const E& c) { return Poly(c.ring(), {c}); }
  static Poly monomial(const E& c, std::size_t k) {
    std::vector<E> v(k + 1, c.ring().zero());
    v[k] = c;
    return Poly(c.ring(), std::move(v));
  }
  static Poly x(const ring_type& ring) { return monomial(ring.one(), 1); }
  /// Monic linear polynomial x - r.
  static Poly linear(const E& r) { return Poly(r.ring(), {-r, r.ring().one()}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const ring_type& ring() const { return ring_; }
  const std::vector<E>& coeffs() const { return c_; }
  E coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ring_.zero(); }
  const E& lead() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == ring_.one(); }

  void set_coeff(std::size_t i, E v) {
    if (i >= c_.size()) c_.resize(i + 1, ring_.zero());
    c_[i] = std::move(v);
    trim();
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), ring_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), ring_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const E& s) {
    for (auto& e : c_) e *= s;
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const E& s) { return a *= s; }
  friend Poly operator*(const E& s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a) {
    for (auto& e : a.c_) e = -e;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.ring_);
    std::vector<E> out(a.c_.size() + b.c_.size() - 1, a.ring_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(a.ring_, std::move(out));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.ring_ == b.ring_ && a.c_ == b.c_;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  ring_type ring_;
  std::vector<E> c_;
};

/// Quotient and remainder; the divisor's leading coefficient must be a unit.
template <class E>
std::pair<Poly<E>, Poly<E>> divrem(const Poly<E>& a, const Poly<E>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const auto& ring = a.ring();
  const int db = b.degree();
  if (a.degree() < db) return {Poly<E>(ring), a};
  const E lead_inv = b.lead() == ring.one() ? ring.one() : b.lead().inverse();
  std::vector<E> r = a.coeffs();
  std::vector<E> q(static_cast<std::size_t>(a.degree() - db + 1), ring.zero());
  for (int i = a.degree(); i >= db; --i) {
    const auto top = static_cast<std::size_t>(i);
    if (r[top].is_zero()) continue;
    const E t = r[top] * lead_inv;
    const auto shift = static_cast<std::size_t>(i - db);
    q[shift] = t;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(db); ++j) r[shift + j] -= t * b.coeffs()[j];
  }
  r.resize(static_cast<std::size_t>(db), ring.zero());
  return {Poly<E>(ring, std::move(q)), Poly<E>(ring, std::move(r))};
}

template <class E>
Poly<E> operator%(const Poly<E>& a, const Poly<E>& b) {
  return divrem(a, b).second;
}

template <class E>
Poly<E> derivative(const Poly<E>& f) {
  const auto& ring = f.ring();
  std::vector<E> out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f.coeffs()[i] * ring.from_int(static_cast<long>(i)));
  return Poly<E>(ring, std::move(out));
}

template <class E>
E evaluate(const Poly<E>& f, const E& x) {
  E acc = f.ring().zero();
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f.coeffs()[i];
  return acc;
}

/// f(x + u).
template <class E>
Poly<E> taylor_shift(const Poly<E>& f, const E& u) {
  const Poly<E> xu(f.ring(), {u, f.ring().one()});
  Poly<E> acc(f.ring());
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * xu + Poly<E>::constant(f.coeffs()[i]);
  return acc;
}

template <class E>
Poly<E> pow_mod(Poly<E> base, const mpz_class& exponent, const Poly<E>& modulus) {
  Poly<E> result = Poly<E>::constant(base.ring().one()) % modulus;
  base = base % modulus;
  const auto bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % modulus;
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = (result * base) % modulus;
  }
  return result;
}

template <class E>
Poly<E> product(const std::vector<Poly<E>>& factors, const typename E::ring_type& ring) {
  Poly<E> acc = Poly<E>::constant(ring.one());
  for (const auto& f : factors) acc *= f;
  return acc;
}

/// Applies `fn` to every coefficient, producing a polynomial over `target`.
template <class E, class Ring, class Fn>
auto map_coeffs(const Poly<E>& f, const Ring& target, Fn fn) {
  using Out = typename Ring::element_type;
  std::vector<Out> out;
  out.reserve(f.size());
  for (const auto& c : f.coeffs()) out.push_back(fn(c));
  return Poly<Out>(target, std::move(out));
}

}  // namespace hyp2
