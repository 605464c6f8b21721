#pragma once

#include <string>

#include <gmpxx.h>

#include "hyp2/errors.hpp"

namespace hyp2 {

class BigInt;

/// The ring Z, as a handle for Poly<BigInt>.
struct IntegerRing {
  using element_type = BigInt;
  BigInt zero() const;
  BigInt one() const;
  BigInt from_int(long v) const;
  bool operator==(const IntegerRing&) const { return true; }
};

class BigInt {
 public:
  using ring_type = IntegerRing;

  BigInt() = default;
  BigInt(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  BigInt(mpz_class v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  IntegerRing ring() const { return {}; }
  const mpz_class& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
  BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
  BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }
  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
  BigInt operator-() const { return BigInt(mpz_class(-v_)); }

  /// Only +-1 are units.
  BigInt inverse() const {
    if (v_ != 1 && v_ != -1) throw NotAUnit();
    return *this;
  }

  bool operator==(const BigInt& o) const { return v_ == o.v_; }
  std::string to_string() const { return v_.get_str(); }

 private:
  mpz_class v_;
};

inline BigInt IntegerRing::zero() const { return BigInt(0L); }
inline BigInt IntegerRing::one() const { return BigInt(1L); }
inline BigInt IntegerRing::from_int(long v) const { return BigInt(v); }

/// p-adic valuation of a nonzero integer.
inline long integer_valuation(const mpz_class& x, unsigned long p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  mpz_class rest;
  mpz_class pz(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace hyp2
