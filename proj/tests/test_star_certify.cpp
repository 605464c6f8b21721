#include <doctest.h>

#include <algorithm>
#include <random>

#include "curve_gen.hpp"
#include "hyp2/star_certify.hpp"

using namespace hyp2;
using testgen::global_curve;
using testgen::ex111_curve;

namespace {

std::vector<Val> depths(const StarCertificate& cert) {
  std::vector<Val> out;
  for (const auto& p : cert.pairs) out.push_back(p.depth);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long> eta_valuations(const StarCertificate& cert) {
  std::vector<long> out;
  for (const auto& p : cert.pairs) out.push_back(p.eta_valuation);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> cycle_type(const StarCertificate& cert) {
  std::vector<std::size_t> out;
  for (const auto& o : cert.orbits()) out.push_back(o.size());
  std::sort(out.begin(), out.end());
  return out;
}

UnramPoly product_of_pairs(const StarCertificate& cert) {
  std::vector<UnramPoly> quads;
  for (std::size_t i = 0; i < cert.pairs.size(); ++i) quads.push_back(cert.pair_quadratic(i));
  return product(quads, quads.front().ring());
}

}  // namespace

TEST_CASE("certify: global example") {
  const auto cert = certify(global_curve());
  REQUIRE(cert.verdict == Verdict::StarStar);
  CHECK(cert.common_degree == 2);
  CHECK(cert.a == 0);
  CHECK(depths(cert) == std::vector<Val>{Val::integer(2), Val::integer(3), Val::integer(3)});
  // Pair 0 sits over r = 0; the other two are conjugate over F_4 and swapped.
  CHECK(cert.pairs[0].r.is_zero());
  CHECK(cert.frobenius_perm == std::vector<std::size_t>{0, 2, 1});
  CHECK(cert.pairs[1].residue_degree == 2);
  CHECK(product_of_pairs(cert) == from_integers(UnramRing(2, 2, cert.precision), cert.curve.f));
}

TEST_CASE("certify: the second worked example") {
  const auto cert = certify(ex111_curve());
  REQUIRE(cert.verdict == Verdict::StarStar);
  CHECK(cert.a == 1);
  CHECK(eta_valuations(cert) == std::vector<long>{1, 2, 2});
  CHECK(depths(cert) == std::vector<Val>{Val::rational(5, 2), Val::integer(3), Val::integer(3)});
  const FqField f4(2, 2);
  const FqElem z = f4.generator();
  CHECK(cert.pairs[0].r == f4.zero());
  CHECK(cert.pairs[1].r == z);
  CHECK(cert.pairs[2].r == z * z);
  // gamma_1 = 0 and eta_1 = 2 exactly.
  CHECK(cert.pairs[0].gamma.is_zero());
  CHECK(cert.pairs[0].eta == cert.pairs[0].eta.ring().from_int(2));
}

TEST_CASE("certify: residue failures") {
  auto curve = global_curve();
  curve.c = 3;
  CHECK(certify(curve).reason == FailReason::CNotOneMod4);
  curve.c = 2;
  CHECK(certify(curve).reason == FailReason::CNotOneMod4);
  curve.c = -3;  // -3 = 1 mod 4
  CHECK(certify(curve).verdict == Verdict::StarStar);

  // x^6 + 1 = (x^3 + 1)^2 mod 2 with x^3 + 1 separable, so the residue checks
  // pass; the pair over r = 1 is x^2 + 1, whose roots are too close.
  const auto sextic = certify({1, {1, 0, 0, 0, 0, 0, 1}, 1});
  CHECK(sextic.verdict == Verdict::Fail);
  CHECK(sextic.reason == FailReason::DiscCondition);

  // (x + 1)^6 = x^6 + x^4 + x^2 + 1 mod 2.
  const auto cube = certify({1, {3, 0, 1, 0, 1, 0, 1}, 1});
  CHECK(cube.reason == FailReason::QBarNotSeparable);

  const CurveInput not_square{1, {1, 1, 0, 0, 0, 0, 1}, 1};
  CHECK(certify(not_square).reason == FailReason::FBarNotASquare);
}

TEST_CASE("certify: a pair closer than v(4) fails the distance condition") {
  // (x^2 - 2) has root distance v(2 sqrt 2) = 3/2 < 2.
  const auto f = testgen::zpoly(std::vector<long>{-2, 0, 1}) * testgen::zpoly(std::vector<long>{-3, -2, 1}) *
                 (testgen::zpoly(std::vector<long>{1, 2, 3, 2, 1}) + testgen::zpoly(std::vector<long>{0, 4}));
  const auto cert = certify({1, testgen::coeffs(f), 1});
  CHECK(cert.verdict == Verdict::Fail);
  CHECK(cert.reason == FailReason::DiscCondition);
  REQUIRE(cert.failed_pair.has_value());
  CHECK(*cert.failed_pair == 0);
}

TEST_CASE("certify: malformed input") {
  CHECK_THROWS_AS(certify({1, {1, 0, 0, 0, 0, 1}, 1}), InvalidCurve);
  CHECK_THROWS_AS(certify({1, {1, 0, 0, 0, 0, 0, 2}, 1}), InvalidCurve);
  CHECK_THROWS_AS(certify({0, {1, 0, 0, 0, 0, 0, 1}, 1}), InvalidCurve);
  // (x^3 + x + 1)^2 is not squarefree.
  CHECK_THROWS_AS(certify({1, {1, 2, 1, 2, 2, 0, 1}, 1}), InvalidCurve);
}

TEST_CASE("pairing_report") {
  const auto global = certify(global_curve());
  const auto report = pairing_report(global);
  REQUIRE(report.size() == 3);
  const UnramRing ring(2, 2, global.precision);
  CHECK(report[0].quadratic == from_integers(ring, {-4, 0, 1}));
  // The conjugate pairs have centres phi_+ and phi_-, the roots of x^2 - x - 13.
  const UnramElem g1 = global.pairs[1].gamma, g2 = global.pairs[2].gamma;
  CHECK(g1 + g2 == g1.ring().from_int(1));
  CHECK(g1 * g2 == g1.ring().from_int(-13));
  CHECK(global.pairs[1].eta == global.pairs[1].eta.ring().from_int(4));

  // The second example pairs roots across its rational factors: the pairs
  // over zeta_3 and its conjugate have centres zeta_3^{+-1} and eta = 4.
  const auto ex = certify(ex111_curve());
  const auto rep = pairing_report(ex);
  CHECK(rep[0].quadratic == from_integers(UnramRing(2, 2, ex.precision), {-8, 0, 1}));
  const UnramElem z = ex.pairs[1].gamma;
  CHECK(z * z + z + z.ring().one() == z.ring().zero());
  CHECK(ex.pairs[1].eta == ex.pairs[1].eta.ring().from_int(4));

  auto bad = global_curve();
  bad.c = 3;
  CHECK_THROWS_AS(pairing_report(certify(bad)), NotCertified);
}

TEST_CASE("Star certificates have all depths 2") {
  std::mt19937_64 rng(11);
  for (int g : {2, 3, 4}) {
    const auto cert = certify(testgen::random_curve(g, testgen::Shape::Star, rng));
    REQUIRE(cert.verdict == Verdict::Star);
    for (const auto& p : cert.pairs) CHECK(p.depth == Val::integer(2));
  }
}

TEST_CASE("certificate properties on random curves") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<long> shift(-1000, 1000);
  for (int it = 0; it < 30; ++it) {
    const int g = 2 + it % 3;
    const auto curve = testgen::random_curve(g, testgen::Shape::Any, rng);
    const auto cert = certify(curve);
    REQUIRE(cert.certified());
    // Soundness.
    CHECK(product_of_pairs(cert) == from_integers(UnramRing(2, cert.common_degree, cert.precision), curve.f));
    // Galois closure.
    for (std::size_t i = 0; i < cert.pairs.size(); ++i) {
      const auto& dst = cert.pairs[cert.frobenius_perm[i]];
      CHECK(cert.pairs[i].gamma.frobenius(curve.base_degree) == dst.gamma);
      CHECK(cert.pairs[i].eta.frobenius(curve.base_degree) == dst.eta);
      CHECK(cert.pairs[i].eta_valuation >= 0);
    }
    // Determinism.
    const auto again = certify(curve);
    CHECK(again.frobenius_perm == cert.frobenius_perm);
    for (std::size_t i = 0; i < cert.pairs.size(); ++i) CHECK(again.pairs[i].gamma == cert.pairs[i].gamma);
    // Translation invariance.
    const auto moved = certify(curve.translated(shift(rng)));
    CHECK(moved.verdict == cert.verdict);
    CHECK(eta_valuations(moved) == eta_valuations(cert));
    CHECK(cycle_type(moved) == cycle_type(cert));
  }
}

TEST_CASE("precision pinning and doubling") {
  const auto curve = ex111_curve();
  const auto small = certify(curve, {.precision = 8});
  const auto large = certify(curve, {.precision = 100});
  REQUIRE(small.certified());
  CHECK(eta_valuations(small) == eta_valuations(large));
  CHECK(small.pairs[1].gamma == large.pairs[1].gamma.truncate(small.pairs[1].gamma.ring().precision()));
  // At precision 3, eta is known only mod 2 so v(eta) saturates; the retry
  // at precision 6 succeeds.
  const auto tight = certify(curve, {.precision = 3});
  CHECK(tight.verdict == Verdict::StarStar);
  CHECK(tight.precision == 6);
  // At precision 2 nothing can be decided even after doubling.
  CHECK(certify(curve, {.precision = 2}).reason == FailReason::PrecisionExhausted);
}

TEST_CASE("small residue field flag") {
  CHECK(certify(global_curve()).small_residue_field);  // |F_2| < 3
  auto curve = global_curve();
  curve.base_degree = 2;
  const auto cert = certify(curve);
  CHECK_FALSE(cert.small_residue_field);
  // Over F_4 every pair is fixed by Frobenius.
  CHECK(cert.frobenius_perm == std::vector<std::size_t>{0, 1, 2});
}
