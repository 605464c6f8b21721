#include "hyp2/fq.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "hyp2/errors.hpp"
#include "hyp2/fq_poly.hpp"

namespace hyp2 {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a * b) % p; }

std::uint64_t pack_bits(std::span<const std::uint32_t> c) {
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < c.size(); ++i) w |= static_cast<std::uint64_t>(c[i] & 1U) << i;
  return w;
}

// Carry-less product of two words, as (low, high).
std::pair<std::uint64_t, std::uint64_t> clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  for (unsigned i = 0; i < 64 && b != 0; ++i, b >>= 1) {
    if ((b & 1U) == 0) continue;
    lo ^= a << i;
    if (i != 0) hi ^= a >> (64 - i);
  }
  return {lo, hi};
}

bool bit(std::pair<std::uint64_t, std::uint64_t> w, unsigned k) {
  return k < 64 ? ((w.first >> k) & 1U) != 0 : ((w.second >> (k - 64)) & 1U) != 0;
}

void flip_shifted(std::pair<std::uint64_t, std::uint64_t>& w, std::uint64_t mask, unsigned shift) {
  if (shift == 0) {
    w.first ^= mask;
    return;
  }
  if (shift < 64) {
    w.first ^= mask << shift;
    w.second ^= mask >> (64 - shift);
  } else {
    w.second ^= mask << (shift - 64);
  }
}

std::vector<std::uint32_t> lowest_irreducible(std::uint32_t p, unsigned m) {
  if (m == 1) return {0, 1};
  std::vector<std::uint32_t> c(m + 1, 0);
  c[m] = 1;
  c[0] = 1;  // c_0 = 0 is divisible by x
  const FqField prime(p, 1);
  // Increment the tuple (c_0, ..., c_{m-1}) in lexicographic order, c_{m-1}
  // being the fastest-moving position.
  for (;;) {
    if (c[0] != 0) {
      std::vector<FqElem> coeffs;
      coeffs.reserve(m + 1);
      for (auto v : c) coeffs.push_back(prime.from_int(v));
      if (is_irreducible(FqPoly(prime, std::move(coeffs)))) return c;
    }
    unsigned pos = m;
    while (pos-- > 0) {
      if (++c[pos] < p) break;
      c[pos] = 0;
      if (pos == 0) throw std::logic_error("no irreducible polynomial found");
    }
  }
}

}  // namespace

FqField::FqField(std::uint32_t p, unsigned degree) {
  if (!is_prime(p)) throw std::invalid_argument("FqField: p must be prime");
  if (degree == 0) throw std::invalid_argument("FqField: degree must be positive");
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const Impl>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({p, degree}); it != cache.end()) {
      impl_ = it->second;
      return;
    }
  }
  auto impl = std::make_shared<Impl>(Impl{p, degree, lowest_irreducible(p, degree)});
  std::lock_guard lock(mutex);
  impl_ = cache.emplace(std::pair{p, degree}, std::move(impl)).first->second;
}

FqField::FqField(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("FqField: p must be prime");
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw std::invalid_argument("FqField: modulus must be monic of positive degree");
  }
  for (auto v : modulus) {
    if (v >= p) throw std::invalid_argument("FqField: modulus coefficient not reduced");
  }
  const auto m = static_cast<unsigned>(modulus.size() - 1);
  if (m > 1) {
    const FqField prime(p, 1);
    std::vector<FqElem> coeffs;
    for (auto v : modulus) coeffs.push_back(prime.from_int(v));
    if (!is_irreducible(FqPoly(prime, std::move(coeffs)))) {
      throw std::invalid_argument("FqField: modulus is reducible");
    }
  }
  impl_ = std::make_shared<Impl>(Impl{p, m, std::move(modulus)});
}

mpz_class FqField::order() const {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p(), degree());
  return q;
}

FqElem FqField::zero() const { return FqElem(*this, std::vector<std::uint32_t>(degree(), 0)); }
FqElem FqField::one() const { return from_int(1); }

FqElem FqField::from_int(long v) const {
  std::vector<std::uint32_t> c(degree(), 0);
  const long r = v % static_cast<long>(p());
  c[0] = static_cast<std::uint32_t>(r < 0 ? r + static_cast<long>(p()) : r);
  return FqElem(*this, std::move(c));
}

FqElem FqField::generator() const {
  if (degree() == 1) return from_int(-static_cast<long>(modulus()[0]));
  std::vector<std::uint32_t> c(degree(), 0);
  c[1] = 1;
  return FqElem(*this, std::move(c));
}

FqElem FqField::element(std::vector<std::uint32_t> coeffs) const {
  coeffs.resize(degree(), 0);
  for (auto& v : coeffs) v %= p();
  return FqElem(*this, std::move(coeffs));
}

FqElem FqField::from_index(std::uint64_t index) const {
  std::vector<std::uint32_t> c(degree(), 0);
  for (unsigned i = 0; i < degree(); ++i) {
    c[i] = static_cast<std::uint32_t>(index % p());
    index /= p();
  }
  return FqElem(*this, std::move(c));
}

bool FqField::operator==(const FqField& o) const {
  return impl_ == o.impl_ || (impl_->p == o.impl_->p && impl_->modulus == o.impl_->modulus);
}

FqElem::FqElem(FqField field, std::vector<std::uint32_t> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  if (c_.size() != field_.degree()) throw std::invalid_argument("FqElem: wrong coefficient count");
}

bool FqElem::is_zero() const {
  for (auto v : c_) {
    if (v != 0) return false;
  }
  return true;
}

bool FqElem::is_one() const { return c_[0] == 1 && is_prime_field(); }

bool FqElem::is_prime_field() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

std::uint64_t FqElem::index() const {
  std::uint64_t idx = 0;
  for (std::size_t i = c_.size(); i-- > 0;) idx = idx * field_.p() + c_[i];
  return idx;
}

FqElem& FqElem::operator+=(const FqElem& o) {
  if (!(field_ == o.field_)) throw RingMismatch("FqElem: different fields");
  const auto p = field_.p();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const auto s = static_cast<std::uint64_t>(c_[i]) + o.c_[i];
    c_[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  return *this;
}

FqElem& FqElem::operator-=(const FqElem& o) {
  if (!(field_ == o.field_)) throw RingMismatch("FqElem: different fields");
  const auto p = field_.p();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : static_cast<std::uint32_t>(c_[i] + (p - o.c_[i]));
  }
  return *this;
}

FqElem FqElem::operator-() const {
  FqElem r = field_.zero();
  r -= *this;
  return r;
}

FqElem& FqElem::operator*=(const FqElem& o) {
  if (!(field_ == o.field_)) throw RingMismatch("FqElem: different fields");
  const unsigned m = field_.degree();
  const auto p = field_.p();
  const auto mod = field_.modulus();
  if (m == 1) {
    c_[0] = static_cast<std::uint32_t>(mulmod(c_[0], o.c_[0], p));
    return *this;
  }
  if (p == 2 && m <= 64) {
    auto w = clmul(pack_bits(c_), pack_bits(o.c_));
    const std::uint64_t low_mod = pack_bits(mod.first(m));
    for (unsigned k = 2 * m - 2; k >= m; --k) {
      if (bit(w, k)) {
        flip_shifted(w, low_mod, k - m);
        flip_shifted(w, std::uint64_t{1}, k);
      }
    }
    for (unsigned i = 0; i < m; ++i) c_[i] = static_cast<std::uint32_t>((w.first >> i) & 1U);
    return *this;
  }
  std::vector<std::uint64_t> prod(2 * m - 1, 0);
  for (unsigned i = 0; i < m; ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + mulmod(c_[i], o.c_[j], p)) % p;
  }
  for (unsigned k = 2 * m - 2; k >= m; --k) {
    const std::uint64_t t = prod[k];
    if (t == 0) continue;
    for (unsigned j = 0; j < m; ++j) prod[k - m + j] = (prod[k - m + j] + mulmod(p - t, mod[j], p)) % p;
    prod[k] = 0;
  }
  for (unsigned i = 0; i < m; ++i) c_[i] = static_cast<std::uint32_t>(prod[i]);
  return *this;
}

FqElem FqElem::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(mpz_class(-e));
  FqElem result = field_.one();
  const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result *= result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result *= *this;
  }
  return result;
}

FqElem FqElem::frobenius() const { return pow(static_cast<std::uint64_t>(field_.p())); }

FqElem FqElem::inverse() const {
  if (is_zero()) throw NotAUnit();
  return pow(mpz_class(field_.order() - 2));
}

FqElem FqElem::sqrt_char2() const {
  if (field_.p() != 2) throw std::domain_error("sqrt_char2 needs characteristic 2");
  FqElem r = *this;
  for (unsigned i = 1; i < field_.degree(); ++i) r *= r;
  return r;
}

std::string FqElem::to_string() const {
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += "+";
    const bool unit = c_[i] == 1;
    if (i == 0 || !unit) s += std::to_string(c_[i]);
    if (i >= 1) s += (unit ? "" : "*") + std::string("t");
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

FqElem fq_trace(const FqElem& x) { return fq_trace(x, x.field().degree()); }

FqElem fq_trace(const FqElem& x, unsigned sub_degree) {
  FqElem acc = x.field().zero();
  FqElem y = x;
  for (unsigned i = 0; i < sub_degree; ++i) {
    acc += y;
    y = y.frobenius();
  }
  if (!(y == x)) throw std::invalid_argument("fq_trace: element not in the requested subfield");
  return acc;
}

std::vector<FqElem> fq_frobenius_orbit(const FqElem& x, const mpz_class& q) {
  mpz_class r = q;
  const auto p = x.field().p();
  while (r > 1 && mpz_divisible_ui_p(r.get_mpz_t(), p)) r /= p;
  if (r != 1 || q < p) throw std::invalid_argument("fq_frobenius_orbit: q is not a power of p");
  std::vector<FqElem> orbit{x};
  for (FqElem y = x.pow(q); !(y == x); y = y.pow(q)) orbit.push_back(y);
  return orbit;
}

unsigned fq_absolute_degree(const FqElem& x) {
  unsigned d = 1;
  for (FqElem y = x.frobenius(); !(y == x); y = y.frobenius()) ++d;
  return d;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace hyp2
