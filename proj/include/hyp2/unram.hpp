#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hyp2/fq.hpp"
#include "hyp2/val.hpp"

namespace hyp2 {

class UnramElem;

/// Z_p[t]/(L(t)) truncated mod p^N, where L lifts the default modulus of
/// F_{p^M} digit by digit. This is the ring of integers of the unramified
/// extension of degree M, known to absolute precision N.
class UnramRing {
 public:
  using element_type = UnramElem;

  UnramRing(std::uint32_t p, unsigned degree, unsigned precision);

  std::uint32_t p() const { return impl_->p; }
  unsigned degree() const { return impl_->m; }
  unsigned precision() const { return impl_->n; }
  const mpz_class& modulus() const { return impl_->modulus; }
  const FqField& residue_field() const { return impl_->residue; }
  std::span<const std::uint32_t> lift_poly() const { return impl_->residue.modulus(); }
  UnramRing with_precision(unsigned precision) const { return UnramRing(p(), degree(), precision); }

  UnramElem zero() const;
  UnramElem one() const;
  UnramElem from_int(long v) const;
  UnramElem from_integer(const mpz_class& v) const;
  UnramElem generator() const;
  UnramElem element(std::vector<mpz_class> coeffs) const;
  /// Digit-wise lift of a residue-field element (coefficients in [0, p)).
  UnramElem lift(const FqElem& x) const;

  bool operator==(const UnramRing& o) const {
    return impl_ == o.impl_ || (p() == o.p() && degree() == o.degree() && precision() == o.precision());
  }

 private:
  struct Impl {
    std::uint32_t p;
    unsigned m;
    unsigned n;
    mpz_class modulus;
    FqField residue;
    // frobenius_basis[j] = coefficients of sigma(t^j).
    std::vector<std::vector<mpz_class>> frobenius_basis;
  };
  explicit UnramRing(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static std::shared_ptr<const Impl> build(std::uint32_t p, unsigned degree, unsigned precision);

  std::shared_ptr<const Impl> impl_;
  friend class UnramElem;
};

/// p-adic valuation of a truncated element: exact when some coefficient is
/// nonzero mod p^N, otherwise saturated (the value is only known to be >= N).
struct UnramValuation {
  bool saturated;
  std::int64_t value;  // exact valuation, or N when saturated

  /// Throws PrecisionExhausted when saturated.
  Val val() const;
};

class UnramElem {
 public:
  using ring_type = UnramRing;

  UnramElem(UnramRing ring, std::vector<mpz_class> coeffs);

  const UnramRing& ring() const { return ring_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_zero() const;
  /// Lies in the base ring Z_p (all non-constant coefficients vanish).
  bool is_base() const;

  UnramElem& operator+=(const UnramElem& o);
  UnramElem& operator-=(const UnramElem& o);
  UnramElem& operator*=(const UnramElem& o);
  friend UnramElem operator+(UnramElem a, const UnramElem& b) { return a += b; }
  friend UnramElem operator-(UnramElem a, const UnramElem& b) { return a -= b; }
  friend UnramElem operator*(UnramElem a, const UnramElem& b) { return a *= b; }
  UnramElem operator-() const;

  UnramValuation valuation() const;
  FqElem reduce() const;
  /// The ring automorphism lifting x -> x^p on the residue field.
  UnramElem frobenius() const;
  UnramElem frobenius(unsigned times) const;
  /// Throws NotAUnit unless the valuation is 0.
  UnramElem inverse() const;

  /// Same element at a lower precision.
  UnramElem truncate(unsigned precision) const;
  /// Representative of this class in the ring of higher precision (the
  /// added digits are zero).
  UnramElem extend(unsigned precision) const;
  /// Exact division by p^k; the result is known to precision N - k.
  /// Throws NotDivisible.
  UnramElem divide_by_p_power(unsigned k) const;
  /// Coefficients reduced mod p^k, staying in this ring.
  UnramElem reduce_mod_p_power(unsigned k) const;

  bool operator==(const UnramElem& o) const { return ring_ == o.ring_ && c_ == o.c_; }

  std::string to_string() const;

 private:
  void normalize();

  UnramRing ring_;
  std::vector<mpz_class> c_;
};

}  // namespace hyp2
