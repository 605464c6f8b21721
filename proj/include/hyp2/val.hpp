#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace hyp2 {

/// Valuation in (1/2)Z, or +infinity.
///
/// Values are stored as num/den with den in {1, 2} and the fraction reduced.
class Val {
 public:
  constexpr Val() = default;

  static constexpr Val integer(std::int64_t n) { return Val(true, n, 1); }
  static constexpr Val infinity() { return Val(false, 0, 1); }
  /// Reduces num/den; throws std::domain_error if the result is not in (1/2)Z.
  static Val rational(std::int64_t num, std::int64_t den);

  constexpr bool is_finite() const { return finite_; }
  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  bool is_integer() const { return finite_ && den_ == 1; }

  Val operator+(const Val& o) const;
  /// Finite operands only.
  Val operator-(const Val& o) const;
  Val operator-() const;
  /// Half of an integer valuation.
  Val half() const;

  bool operator==(const Val& o) const = default;
  std::strong_ordering operator<=>(const Val& o) const;

  std::string to_string() const;

 private:
  constexpr Val(bool finite, std::int64_t num, std::int64_t den)
      : finite_(finite), num_(num), den_(den) {}

  bool finite_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hyp2
