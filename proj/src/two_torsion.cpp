#include "hyp2/two_torsion.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hyp2 {

namespace {

std::uint64_t full_mask(unsigned roots) { return roots == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << roots) - 1; }

int top_bit(std::uint64_t m) { return 63 - std::countl_zero(m); }

}  // namespace

TwoTorsionElt::TwoTorsionElt(std::uint64_t mask, unsigned roots) : mask_(mask), roots_(roots) {
  if (roots == 0 || roots > 64 || roots % 2 != 0) throw std::invalid_argument("root count must be even and at most 64");
  if (mask & ~full_mask(roots)) throw std::invalid_argument("mask has bits beyond the root set");
  if (std::popcount(mask) % 2 != 0) throw std::invalid_argument("subset must have even size");
  if (mask_ & 1) mask_ ^= full_mask(roots);
}

TwoTorsionElt operator+(const TwoTorsionElt& a, const TwoTorsionElt& b) {
  if (a.roots_ != b.roots_) throw std::invalid_argument("different root sets");
  return {a.mask_ ^ b.mask_, a.roots_};
}

std::uint64_t Subgroup::reduce(std::uint64_t m) const {
  for (const auto& b : basis_) {
    if (m >> top_bit(b.mask()) & 1) m ^= b.mask();
  }
  return m;
}

bool Subgroup::insert(const TwoTorsionElt& x) {
  if (x.roots() != roots_) throw std::invalid_argument("different root sets");
  const std::uint64_t r = reduce(x.mask());
  if (r == 0) return false;
  const int pivot = top_bit(r);
  for (auto& b : basis_) {
    if (b.mask() >> pivot & 1) b = TwoTorsionElt(b.mask() ^ r, roots_);
  }
  basis_.emplace_back(r, roots_);
  std::sort(basis_.begin(), basis_.end(), [](const auto& a, const auto& b) { return a.mask() > b.mask(); });
  return true;
}

bool Subgroup::contains(const TwoTorsionElt& x) const { return reduce(x.mask()) == 0; }

Subgroup Subgroup::span(const std::vector<TwoTorsionElt>& gens, unsigned roots) {
  Subgroup h(roots);
  for (const auto& g : gens) h.insert(g);
  return h;
}

Subgroup reduction_kernel(const StarCertificate& cert) {
  if (cert.verdict != Verdict::Star) throw NotStar();
  const auto roots = static_cast<unsigned>(2 * cert.pairs.size());
  std::vector<TwoTorsionElt> twins;
  for (std::size_t i = 0; i < cert.pairs.size(); ++i) twins.emplace_back(std::uint64_t{3} << (2 * i), roots);
  return Subgroup::span(twins, roots);
}

bool membership(const TwoTorsionElt& s, const Subgroup& h) { return h.contains(s); }

TorsionDims dims(const StarCertificate& cert) {
  const int total = 2 * cert.genus();
  const int kernel = static_cast<int>(reduction_kernel(cert).dimension());
  return {total, kernel, total - kernel};
}

}  // namespace hyp2
