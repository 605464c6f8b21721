#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hyp2 {

class FqElem;

/// The finite field F_p[t]/(modulus).
///
/// Shareable handle; two handles compare equal when p and the modulus agree.
/// The default modulus of degree m is the lexicographically smallest monic
/// irreducible, comparing coefficient tuples (c_0, ..., c_{m-1}).
class FqField {
 public:
  using element_type = FqElem;

  FqField(std::uint32_t p, unsigned degree);
  /// Monic modulus, low degree first; checked for irreducibility.
  FqField(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t p() const { return impl_->p; }
  unsigned degree() const { return impl_->m; }
  std::span<const std::uint32_t> modulus() const { return impl_->modulus; }
  mpz_class order() const;

  FqElem zero() const;
  FqElem one() const;
  FqElem from_int(long v) const;
  /// Class of t.
  FqElem generator() const;
  FqElem element(std::vector<std::uint32_t> coeffs) const;
  /// Inverse of FqElem::index(); valid while p^m fits in 64 bits.
  FqElem from_index(std::uint64_t index) const;

  bool operator==(const FqField& o) const;

 private:
  struct Impl {
    std::uint32_t p;
    unsigned m;
    std::vector<std::uint32_t> modulus;  // m + 1 entries, monic
  };
  explicit FqField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
  friend class FqElem;
};

/// Element of an FqField in the power basis of its generator.
class FqElem {
 public:
  using ring_type = FqField;

  FqElem(FqField field, std::vector<std::uint32_t> coeffs);

  const FqField& ring() const { return field_; }
  const FqField& field() const { return field_; }
  std::span<const std::uint32_t> coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  /// Member of the prime field.
  bool is_prime_field() const;
  /// sum c_i p^i.
  std::uint64_t index() const;

  FqElem& operator+=(const FqElem& o);
  FqElem& operator-=(const FqElem& o);
  FqElem& operator*=(const FqElem& o);
  friend FqElem operator+(FqElem a, const FqElem& b) { return a += b; }
  friend FqElem operator-(FqElem a, const FqElem& b) { return a -= b; }
  friend FqElem operator*(FqElem a, const FqElem& b) { return a *= b; }
  FqElem operator-() const;
  friend FqElem operator/(const FqElem& a, const FqElem& b) { return a * b.inverse(); }

  FqElem pow(const mpz_class& e) const;
  FqElem pow(std::uint64_t e) const { return pow(mpz_class(std::to_string(e))); }
  /// x^p.
  FqElem frobenius() const;
  /// Throws NotAUnit on zero.
  FqElem inverse() const;
  /// Square root in characteristic 2 (inverse Frobenius).
  FqElem sqrt_char2() const;

  bool operator==(const FqElem& o) const { return field_ == o.field_ && c_ == o.c_; }
  std::strong_ordering operator<=>(const FqElem& o) const { return c_ <=> o.c_; }

  std::string to_string() const;

 private:
  FqField field_;
  std::vector<std::uint32_t> c_;
};

/// x + x^p + ... + x^{p^{m-1}} over the whole field.
FqElem fq_trace(const FqElem& x);
/// Trace from the subfield of degree `sub_degree` (which must contain x) to F_p.
FqElem fq_trace(const FqElem& x, unsigned sub_degree);
/// [x, x^q, x^{q^2}, ...] up to the first repetition; q must be a power of p.
std::vector<FqElem> fq_frobenius_orbit(const FqElem& x, const mpz_class& q);
/// Smallest d >= 1 with x^{p^d} = x.
unsigned fq_absolute_degree(const FqElem& x);

bool is_prime(std::uint64_t n);

}  // namespace hyp2
