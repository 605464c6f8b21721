#pragma once

#include <vector>

#include "hyp2/fq.hpp"
#include "hyp2/integer.hpp"
#include "hyp2/poly.hpp"
#include "hyp2/unram.hpp"

namespace hyp2 {

template <class E>
using DenseMatrix = std::vector<std::vector<E>>;

/// Exact determinant over Z (fraction-free Bareiss elimination).
BigInt determinant(DenseMatrix<BigInt> a);
/// Determinant over a finite field.
FqElem determinant(DenseMatrix<FqElem> a);
/// Determinant over Z_p[t]/(L, p^N) with full valuation pivoting: every
/// pivot has minimal valuation in its trailing block, so elimination loses no
/// precision. Throws PrecisionExhausted if a trailing block vanishes
/// identically mod p^N.
UnramElem determinant(DenseMatrix<UnramElem> a);

template <class E>
DenseMatrix<E> sylvester_matrix(const Poly<E>& f, const Poly<E>& g) {
  const auto n = static_cast<std::size_t>(f.degree());
  const auto m = static_cast<std::size_t>(g.degree());
  const auto& ring = f.ring();
  DenseMatrix<E> s(n + m, std::vector<E>(n + m, ring.zero()));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) s[i][i + j] = f.coeffs()[n - j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) s[m + i][i + j] = g.coeffs()[m - j];
  }
  return s;
}

/// Res(f, g) = lc(f)^{deg g} * prod g(roots of f).
template <class E>
E poly_resultant(const Poly<E>& f, const Poly<E>& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of the zero polynomial");
  if (f.degree() + g.degree() == 0) return f.ring().one();
  return determinant(sylvester_matrix(f, g));
}

namespace detail {
inline BigInt divide_by_lead(const BigInt& x, const BigInt& lc) {
  if (!mpz_divisible_p(x.value().get_mpz_t(), lc.value().get_mpz_t())) {
    throw NotDivisible("discriminant: resultant not divisible by leading coefficient");
  }
  return BigInt(mpz_class(x.value() / lc.value()));
}
template <class E>
E divide_by_lead(const E& x, const E& lc) {
  return x * lc.inverse();
}
}  // namespace detail

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
template <class E>
E poly_discriminant(const Poly<E>& f) {
  const int n = f.degree();
  if (n < 1) throw std::invalid_argument("discriminant of a constant");
  E r = detail::divide_by_lead(poly_resultant(f, derivative(f)), f.lead());
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

}  // namespace hyp2
