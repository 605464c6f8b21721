#pragma once

#include <cstdint>
#include <vector>

#include "hyp2/star_certify.hpp"

namespace hyp2 {

/// Even subset of the 2g+2 roots, ordered alpha_1 beta_1 alpha_2 beta_2 ...,
/// modulo taking the complement. Stored as the representative avoiding
/// root 0 (the lexicographically smaller of the two).
class TwoTorsionElt {
 public:
  /// Throws std::invalid_argument on odd size or bits beyond `roots`.
  TwoTorsionElt(std::uint64_t mask, unsigned roots);
  static TwoTorsionElt zero(unsigned roots) { return {0, roots}; }

  std::uint64_t mask() const { return mask_; }
  unsigned roots() const { return roots_; }
  bool is_zero() const { return mask_ == 0; }

  friend TwoTorsionElt operator+(const TwoTorsionElt& a, const TwoTorsionElt& b);
  bool operator==(const TwoTorsionElt&) const = default;

 private:
  std::uint64_t mask_;
  unsigned roots_;
};

/// Subspace of J[2] with a fully reduced row-echelon basis over F_2.
class Subgroup {
 public:
  explicit Subgroup(unsigned roots) : roots_(roots) {}
  static Subgroup span(const std::vector<TwoTorsionElt>& gens, unsigned roots);

  /// Adds a generator; returns false if it was already in the span.
  bool insert(const TwoTorsionElt& x);
  bool contains(const TwoTorsionElt& x) const;
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<TwoTorsionElt>& basis() const { return basis_; }

 private:
  std::uint64_t reduce(std::uint64_t m) const;

  unsigned roots_;
  std::vector<TwoTorsionElt> basis_;  // sorted by pivot (highest set bit), descending
};

/// Generated by the twin subsets {alpha_i, beta_i}. Throws NotStar.
Subgroup reduction_kernel(const StarCertificate& cert);

bool membership(const TwoTorsionElt& s, const Subgroup& h);

struct TorsionDims {
  int total;
  int kernel;
  int image;
};
/// Throws NotStar.
TorsionDims dims(const StarCertificate& cert);

}  // namespace hyp2
