#include "hyp2/unram.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "hyp2/errors.hpp"

namespace hyp2 {

namespace {

void reduce_mod(mpz_class& x, const mpz_class& modulus, std::uint32_t p, unsigned n) {
  if (p == 2) {
    mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), n);
  } else {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  }
}

std::int64_t p_valuation(const mpz_class& x, std::uint32_t p) {
  if (p == 2) return static_cast<std::int64_t>(mpz_scan1(x.get_mpz_t(), 0));
  mpz_class tmp;
  mpz_class pz(p);
  return static_cast<std::int64_t>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

mpz_class power(std::uint32_t p, unsigned k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

}  // namespace

Val UnramValuation::val() const {
  if (saturated) throw PrecisionExhausted("valuation is at least " + std::to_string(value));
  return Val::integer(value);
}

UnramRing::UnramRing(std::uint32_t p, unsigned degree, unsigned precision) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, unsigned, unsigned>, std::shared_ptr<const Impl>> cache;
  const auto key = std::tuple{p, degree, precision};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) {
      impl_ = it->second;
      return;
    }
  }
  auto impl = build(p, degree, precision);
  std::lock_guard lock(mutex);
  impl_ = cache.emplace(key, std::move(impl)).first->second;
}

std::shared_ptr<const UnramRing::Impl> UnramRing::build(std::uint32_t p, unsigned degree, unsigned precision) {
  if (precision == 0) throw std::invalid_argument("UnramRing: precision must be positive");
  auto impl = std::make_shared<Impl>(Impl{p, degree, precision, power(p, precision), FqField(p, degree), {}});
  const unsigned m = degree;
  auto identity = [m] {
    std::vector<std::vector<mpz_class>> basis(m, std::vector<mpz_class>(m, 0));
    for (unsigned j = 0; j < m; ++j) basis[j][j] = 1;
    return basis;
  };
  impl->frobenius_basis = identity();
  if (m == 1) return impl;

  // Newton iteration for the root of L congruent to t^p, in a ring whose
  // Frobenius table is still the identity (only ring arithmetic is used).
  const UnramRing ring{std::shared_ptr<const Impl>(impl)};
  std::vector<UnramElem> lcoef;
  for (auto c : ring.lift_poly()) lcoef.push_back(ring.from_int(c));
  auto eval = [&](const UnramElem& s, bool deriv) {
    UnramElem acc = ring.zero();
    for (std::size_t i = lcoef.size(); i-- > (deriv ? 1U : 0U);) {
      const UnramElem c = deriv ? lcoef[i] * ring.from_int(static_cast<long>(i)) : lcoef[i];
      acc = acc * s + c;
    }
    return acc;
  };
  UnramElem s = ring.generator();
  {
    UnramElem g = s;
    for (unsigned i = 1; i < p; ++i) s *= g;
  }
  for (unsigned k = 1; k < 2 * precision + 2; k *= 2) s -= eval(s, false) * eval(s, true).inverse();
  if (!eval(s, false).is_zero()) throw std::logic_error("UnramRing: Frobenius lift did not converge");

  std::vector<std::vector<mpz_class>> basis;
  UnramElem pw = ring.one();
  for (unsigned j = 0; j < m; ++j) {
    basis.push_back(pw.coeffs());
    pw *= s;
  }
  impl->frobenius_basis = std::move(basis);
  return impl;
}

UnramElem UnramRing::zero() const { return UnramElem(*this, std::vector<mpz_class>(degree(), 0)); }
UnramElem UnramRing::one() const { return from_int(1); }
UnramElem UnramRing::from_int(long v) const { return from_integer(mpz_class(v)); }

UnramElem UnramRing::from_integer(const mpz_class& v) const {
  std::vector<mpz_class> c(degree(), 0);
  c[0] = v;
  return UnramElem(*this, std::move(c));
}

UnramElem UnramRing::generator() const {
  if (degree() == 1) return from_int(-static_cast<long>(lift_poly()[0]));
  std::vector<mpz_class> c(degree(), 0);
  c[1] = 1;
  return UnramElem(*this, std::move(c));
}

UnramElem UnramRing::element(std::vector<mpz_class> coeffs) const {
  coeffs.resize(degree(), 0);
  return UnramElem(*this, std::move(coeffs));
}

UnramElem UnramRing::lift(const FqElem& x) const {
  if (!(x.field() == residue_field())) throw RingMismatch("UnramRing::lift: residue field mismatch");
  std::vector<mpz_class> c;
  for (auto v : x.coeffs()) c.emplace_back(static_cast<unsigned long>(v));
  return UnramElem(*this, std::move(c));
}

UnramElem::UnramElem(UnramRing ring, std::vector<mpz_class> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  if (c_.size() != ring_.degree()) throw std::invalid_argument("UnramElem: wrong coefficient count");
  normalize();
}

void UnramElem::normalize() {
  for (auto& x : c_) reduce_mod(x, ring_.modulus(), ring_.p(), ring_.precision());
}

bool UnramElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpz_class& x) { return x == 0; });
}

bool UnramElem::is_base() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const mpz_class& x) { return x == 0; });
}

UnramElem& UnramElem::operator+=(const UnramElem& o) {
  if (!(ring_ == o.ring_)) throw RingMismatch("UnramElem: different rings or precisions");
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] += o.c_[i];
    if (c_[i] >= ring_.modulus()) c_[i] -= ring_.modulus();
  }
  return *this;
}

UnramElem& UnramElem::operator-=(const UnramElem& o) {
  if (!(ring_ == o.ring_)) throw RingMismatch("UnramElem: different rings or precisions");
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] -= o.c_[i];
    if (c_[i] < 0) c_[i] += ring_.modulus();
  }
  return *this;
}

UnramElem UnramElem::operator-() const {
  UnramElem r = ring_.zero();
  r -= *this;
  return r;
}

UnramElem& UnramElem::operator*=(const UnramElem& o) {
  if (!(ring_ == o.ring_)) throw RingMismatch("UnramElem: different rings or precisions");
  const unsigned m = ring_.degree();
  if (m == 1) {
    c_[0] *= o.c_[0];
    normalize();
    return *this;
  }
  std::vector<mpz_class> prod(2 * m - 1, 0);
  for (unsigned i = 0; i < m; ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) mpz_addmul(prod[i + j].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
  }
  const auto lift = ring_.lift_poly();
  for (unsigned k = 2 * m - 2; k >= m; --k) {
    if (prod[k] == 0) continue;
    for (unsigned j = 0; j < m; ++j) {
      if (lift[j] != 0) mpz_submul_ui(prod[k - m + j].get_mpz_t(), prod[k].get_mpz_t(), lift[j]);
    }
    prod[k] = 0;
  }
  prod.resize(m);
  c_ = std::move(prod);
  normalize();
  return *this;
}

UnramValuation UnramElem::valuation() const {
  std::int64_t best = ring_.precision();
  for (const auto& x : c_) {
    if (x != 0) best = std::min(best, p_valuation(x, ring_.p()));
  }
  return {best >= static_cast<std::int64_t>(ring_.precision()), best};
}

FqElem UnramElem::reduce() const {
  std::vector<std::uint32_t> c;
  for (const auto& x : c_) c.push_back(static_cast<std::uint32_t>(mpz_fdiv_ui(x.get_mpz_t(), ring_.p())));
  return ring_.residue_field().element(std::move(c));
}

UnramElem UnramElem::frobenius() const {
  const auto& basis = ring_.impl_->frobenius_basis;
  std::vector<mpz_class> out(c_.size(), 0);
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) mpz_addmul(out[i].get_mpz_t(), c_[j].get_mpz_t(), basis[j][i].get_mpz_t());
  }
  return UnramElem(ring_, std::move(out));
}

UnramElem UnramElem::frobenius(unsigned times) const {
  UnramElem r = *this;
  for (unsigned i = 0; i < times % ring_.degree(); ++i) r = r.frobenius();
  return r;
}

UnramElem UnramElem::inverse() const {
  const auto v = valuation();
  if (v.saturated || v.value != 0) throw NotAUnit();
  UnramElem y = ring_.lift(reduce().inverse());
  const UnramElem two = ring_.from_int(2);
  for (unsigned k = 1; k < ring_.precision(); k *= 2) y = y * (two - *this * y);
  return y;
}

UnramElem UnramElem::truncate(unsigned precision) const {
  if (precision > ring_.precision()) throw std::invalid_argument("truncate: precision must not increase");
  return UnramElem(ring_.with_precision(precision), c_);
}

UnramElem UnramElem::extend(unsigned precision) const {
  if (precision < ring_.precision()) throw std::invalid_argument("extend: precision must not decrease");
  return UnramElem(ring_.with_precision(precision), c_);
}

UnramElem UnramElem::divide_by_p_power(unsigned k) const {
  if (k == 0) return *this;
  if (k >= ring_.precision()) throw PrecisionExhausted("division by p^" + std::to_string(k));
  const mpz_class pk = power(ring_.p(), k);
  std::vector<mpz_class> out;
  for (const auto& x : c_) {
    if (!mpz_divisible_p(x.get_mpz_t(), pk.get_mpz_t())) {
      throw NotDivisible("element not divisible by p^" + std::to_string(k));
    }
    out.push_back(x / pk);
  }
  return UnramElem(ring_.with_precision(ring_.precision() - k), std::move(out));
}

UnramElem UnramElem::reduce_mod_p_power(unsigned k) const {
  if (k >= ring_.precision()) return *this;
  const mpz_class pk = power(ring_.p(), k);
  std::vector<mpz_class> out;
  for (const auto& x : c_) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
    out.push_back(r);
  }
  return UnramElem(ring_, std::move(out));
}

std::string UnramElem::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ", ";
    s += c_[i].get_str();
  }
  return s + "] mod " + std::to_string(ring_.p()) + "^" + std::to_string(ring_.precision());
}

}  // namespace hyp2
