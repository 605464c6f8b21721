#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hyp2/hensel.hpp"
#include "hyp2/unram.hpp"
#include "hyp2/val.hpp"

namespace hyp2 {

/// y^2 = c f(x) over the unramified extension of Q_2 of degree
/// `base_degree`, with integer coefficients.
struct CurveInput {
  mpz_class c;
  std::vector<mpz_class> f;  // low degree first, monic
  unsigned base_degree = 1;

  int genus() const { return (static_cast<int>(f.size()) - 1) / 2 - 1; }
  /// Throws InvalidCurve unless c != 0, f is monic of even degree >= 6 and
  /// disc(f) != 0.
  void validate() const;
  /// The same curve after x -> x + u.
  CurveInput translated(const mpz_class& u) const;
};

enum class Verdict { Star, StarStar, Fail };

enum class FailReason {
  None,
  CNotOneMod4,
  FBarNotASquare,
  QBarNotSeparable,
  DiscCondition,
  PrecisionExhausted,
};

std::string to_string(Verdict v);
std::string to_string(FailReason r);

/// One quadratic factor (x - gamma)^2 - 4 eta of f over the common ring.
struct PairData {
  std::size_t index;
  UnramElem gamma;       // known to precision N - 1
  UnramElem eta;         // known to precision N - 2
  long eta_valuation;
  unsigned residue_degree;  // degree of r over F_2
  FqElem r;
  Val depth;  // 2 + v(eta)/2

  /// Degree of k(r) over the base residue field k.
  unsigned degree_over_base(unsigned base_degree) const;
};

struct StarCertificate {
  CurveInput curve;
  Verdict verdict = Verdict::Fail;
  FailReason reason = FailReason::None;
  std::optional<std::size_t> failed_pair;  // for DiscCondition
  mpz_class a;                             // (c - 1)/4
  std::vector<PairData> pairs;
  /// gamma_{perm[i]} = sigma(gamma_i), where sigma generates Gal(K^nr / K).
  std::vector<std::size_t> frobenius_perm;
  unsigned common_degree = 0;  // M: the pairs live over the degree-M ring
  unsigned precision = 0;      // N
  /// |k| = 2^d < g + 1; recorded only.
  bool small_residue_field = false;

  bool certified() const { return verdict != Verdict::Fail; }
  int genus() const { return curve.genus(); }
  /// Residue of a in F_2 (0 or 1).
  int a_bar() const;
  /// Orbits of frobenius_perm, each starting at its smallest index.
  std::vector<std::vector<std::size_t>> orbits() const;
  /// Lifted quadratic factor of pair i over the degree-M ring.
  UnramPoly pair_quadratic(std::size_t i) const;
};

struct CertifyOptions {
  /// Working precision; 0 selects max(64, 2 v_2(disc f) + 16).
  unsigned precision = 0;
  std::uint64_t seed = 0x5eed;
};

/// Runs the full check. Returns a Fail verdict (never throws) for the
/// checkable failure reasons; throws InvalidCurve for malformed input.
StarCertificate certify(const CurveInput& curve, const CertifyOptions& options = {});

/// Default working precision for a curve.
unsigned default_precision(const CurveInput& curve);

struct PairReport {
  std::size_t index;
  FqElem r;
  UnramPoly quadratic;
};

/// Throws NotCertified on a Fail verdict.
std::vector<PairReport> pairing_report(const StarCertificate& cert);

}  // namespace hyp2
