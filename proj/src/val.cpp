#include "hyp2/val.hpp"

#include <numeric>
#include <stdexcept>

namespace hyp2 {

Val Val::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den != 1 && den != 2) {
    throw std::domain_error("valuation outside (1/2)Z: " + std::to_string(num) + "/" +
                            std::to_string(den));
  }
  return Val(true, num, den);
}

Val Val::operator+(const Val& o) const {
  if (!finite_ || !o.finite_) return infinity();
  return rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Val Val::operator-(const Val& o) const {
  if (!finite_ || !o.finite_) throw std::domain_error("subtraction with infinite valuation");
  return rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Val Val::operator-() const {
  if (!finite_) throw std::domain_error("negation of infinite valuation");
  return Val(true, -num_, den_);
}

Val Val::half() const {
  if (!finite_) return *this;
  return rational(num_, 2 * den_);
}

std::strong_ordering Val::operator<=>(const Val& o) const {
  if (!finite_ || !o.finite_) {
    if (finite_ == o.finite_) return std::strong_ordering::equal;
    return finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return num_ * o.den_ <=> o.num_ * den_;
}

std::string Val::to_string() const {
  if (!finite_) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace hyp2
