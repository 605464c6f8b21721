#pragma once

#include <stdexcept>
#include <string>

namespace hyp2 {

// Arithmetic errors.
struct NotAUnit : std::domain_error {
  NotAUnit() : std::domain_error("element is not a unit") {}
};

struct NotDivisible : std::domain_error {
  explicit NotDivisible(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a quantity vanishes to working precision and no decision can
/// be made from it. Callers may retry at a larger precision.
struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what)
      : std::runtime_error("precision exhausted: " + what) {}
};

/// Elements from rings with different parameters were combined.
struct RingMismatch : std::logic_error {
  explicit RingMismatch(const std::string& what) : std::logic_error(what) {}
};

// Polynomial errors.
struct NotASquare : std::domain_error {
  NotASquare() : std::domain_error("polynomial is not a square") {}
};

struct SeedsNotCoprime : std::invalid_argument {
  SeedsNotCoprime() : std::invalid_argument("Hensel seeds are not pairwise coprime") {}
};

struct ProductMismatch : std::invalid_argument {
  ProductMismatch()
      : std::invalid_argument("product of Hensel seeds does not reduce to f") {}
};

// Pipeline errors.
struct InvalidCurve : std::invalid_argument {
  explicit InvalidCurve(const std::string& what) : std::invalid_argument(what) {}
};

struct NotCertified : std::invalid_argument {
  NotCertified() : std::invalid_argument("certificate verdict is Fail") {}
};

struct NotStar : std::invalid_argument {
  NotStar() : std::invalid_argument("certificate verdict is not Star") {}
};

struct UnsupportedExtension : std::invalid_argument {
  explicit UnsupportedExtension(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace hyp2
