#include "hyp2/resultant.hpp"

#include <utility>

namespace hyp2 {

BigInt determinant(DenseMatrix<BigInt> a) {
  const std::size_t n = a.size();
  if (n == 0) return BigInt(1L);
  mpz_class prev = 1;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return BigInt(0L);
      std::swap(a[k], a[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[k][k].value() * a[i][j].value() - a[i][k].value() * a[k][j].value();
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = BigInt(std::move(t));
      }
    }
    prev = a[k][k].value();
  }
  BigInt d = a[n - 1][n - 1];
  return negate ? -d : d;
}

FqElem determinant(DenseMatrix<FqElem> a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("determinant: empty matrix over a field needs a field handle");
  const FqField field = a[0][0].field();
  FqElem det = field.one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && a[r][k].is_zero()) ++r;
    if (r == n) return field.zero();
    if (r != k) {
      std::swap(a[k], a[r]);
      det = -det;
    }
    det *= a[k][k];
    const FqElem inv = a[k][k].inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      const FqElem factor = a[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= factor * a[k][j];
    }
  }
  return det;
}

UnramElem determinant(DenseMatrix<UnramElem> a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("determinant: empty matrix over a ring needs a ring handle");
  const UnramRing ring = a[0][0].ring();
  const unsigned prec = ring.precision();
  UnramElem det = ring.one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pi = n, pj = n;
    std::int64_t best = prec;
    for (std::size_t i = k; i < n; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        const auto v = a[i][j].valuation();
        if (!v.saturated && v.value < best) {
          best = v.value;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == n) throw PrecisionExhausted("determinant: trailing block vanishes mod p^N");
    if (pi != k) {
      std::swap(a[pi], a[k]);
      det = -det;
    }
    if (pj != k) {
      for (auto& row : a) std::swap(row[pj], row[k]);
      det = -det;
    }
    const auto v = static_cast<unsigned>(best);
    det *= a[k][k];
    const UnramElem unit_inv = a[k][k].divide_by_p_power(v).inverse();
    const UnramElem pv = ring.from_integer([&] {
      mpz_class r;
      mpz_ui_pow_ui(r.get_mpz_t(), ring.p(), v);
      return r;
    }());
    std::vector<UnramElem> pivot_row;
    for (std::size_t j = k + 1; j < n; ++j) pivot_row.push_back(a[k][j].divide_by_p_power(v));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      const UnramElem factor = a[i][k].divide_by_p_power(v) * unit_inv;
      for (std::size_t j = k + 1; j < n; ++j) {
        const UnramElem t = (factor * pivot_row[j - k - 1]).extend(prec) * pv;
        a[i][j] -= t;
      }
      a[i][k] = ring.zero();
    }
  }
  return det;
}

}  // namespace hyp2
