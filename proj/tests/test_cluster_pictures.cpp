#include <doctest.h>

#include <algorithm>
#include <random>

#include "curve_gen.hpp"
#include "hyp2/cluster_pictures.hpp"

using namespace hyp2;

namespace {

const std::vector<IntPoly> kGlobalFactors = {{-2, 1}, {2, 1}, {-1, 7, 1}, {7, -9, 1}};

std::vector<Val> twin_depths(const ClusterPicture& pic) {
  std::vector<Val> out;
  for (const auto& c : pic.top.children) {
    CHECK(c.size() == 2);
    out.push_back(c.depth);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("odd-p pictures of the global example") {
  for (std::uint32_t p : {7U, 17U, 29U}) {
    const auto pic = odd_p_picture(kGlobalFactors, p);
    CHECK(pic.top.depth == Val::integer(0));
    CHECK(twin_depths(pic) == std::vector<Val>{Val::integer(1)});
    CHECK(pic.top.leaves.size() == 4);
  }
  const auto p11 = odd_p_picture(kGlobalFactors, 11);
  CHECK(twin_depths(p11) == std::vector<Val>{Val::integer(1), Val::integer(1)});
  CHECK(p11.top.leaves.size() == 2);
  const auto p53 = odd_p_picture(kGlobalFactors, 53);
  CHECK(twin_depths(p53) == std::vector<Val>{Val::rational(1, 2), Val::rational(1, 2)});
  // A prime of good reduction has no proper clusters.
  CHECK(odd_p_picture(kGlobalFactors, 3).top.children.empty());
}

TEST_CASE("valuation oracle") {
  for (std::uint32_t p : {3U, 5U, 7U, 11U, 17U, 29U, 53U}) {
    for (const auto& chk : valuation_oracle(kGlobalFactors, p)) CHECK_MESSAGE(chk.ok(), chk.what << " at p=" << p);
  }
  const auto at7 = valuation_oracle(kGlobalFactors, 7);
  // Res(x - 2, x^2 - 9x + 7) = 2^2 - 9*2 + 7 = -7.
  const auto it = std::find_if(at7.begin(), at7.end(), [](const OracleCheck& c) { return c.what == "res of factors 0,3"; });
  REQUIRE(it != at7.end());
  CHECK(it->expected == Val::integer(1));
  const auto at53 = valuation_oracle(kGlobalFactors, 53);
  CHECK(at53[0].what != "");
  for (const auto& c : at53) {
    if (c.what == "disc of factor 2") CHECK(c.observed == Val::integer(1));
  }
  // Coprime mod p gives valuation 0.
  for (const auto& c : valuation_oracle({{1, 1}, {1, 0, 1}}, 5)) CHECK(c.expected == Val::integer(0));

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coef(-300, 300);
  for (int it = 0; it < 40; ++it) {
    std::vector<IntPoly> fs;
    for (int k = 0; k < 3; ++k) {
      if (rng() % 2) {
        fs.push_back({coef(rng), 1});
      } else {
        fs.push_back({coef(rng), coef(rng), 1});
      }
    }
    const std::uint32_t p = std::vector<std::uint32_t>{3, 5, 7, 13}[rng() % 4];
    try {
      for (const auto& chk : valuation_oracle(fs, p)) CHECK(chk.ok());
      const auto pic = odd_p_picture(fs, p);
      CHECK(valuation_matrix(pic) == odd_p_valuations(fs, p));
    } catch (const std::invalid_argument&) {
      // repeated roots; skip
    }
  }
}

TEST_CASE("odd-p input errors") {
  CHECK_THROWS_AS(odd_p_picture({{1, 0, 0, 1}, {2, 1}}, 7), UnsupportedExtension);
  CHECK_THROWS_AS(odd_p_picture(kGlobalFactors, 2), std::invalid_argument);
  CHECK_THROWS_AS(odd_p_picture({{1, 1}, {1, 1}}, 7), std::invalid_argument);
  CHECK_THROWS_AS(odd_p_picture(kGlobalFactors, 7, 1), PrecisionExhausted);
}

TEST_CASE("pictures from certificates") {
  const auto ex = picture_from_certificate(certify(testgen::ex111_curve()));
  CHECK(twin_depths(ex) == std::vector<Val>{Val::rational(5, 2), Val::integer(3), Val::integer(3)});
  CHECK(ex.twin_frobenius == std::vector<std::size_t>{0, 2, 1});
  const auto exs = shifted_picture(ex);
  CHECK(twin_depths(exs) == std::vector<Val>{Val::rational(1, 2), Val::integer(1), Val::integer(1)});

  const auto gl = picture_from_certificate(certify(testgen::global_curve()));
  CHECK(twin_depths(gl) == std::vector<Val>{Val::integer(2), Val::integer(3), Val::integer(3)});
  const auto shifted = shifted_picture(gl);
  CHECK(twin_depths(shifted) == std::vector<Val>{Val::integer(1), Val::integer(1)});
  CHECK(shifted.top.leaves.size() == 2);
  CHECK(same_picture(shifted, odd_p_picture(kGlobalFactors, 11)));
  CHECK_FALSE(same_picture(shifted, odd_p_picture(kGlobalFactors, 7)));
  CHECK(shifted.twin_frobenius == std::vector<std::size_t>{1, 0});

  std::mt19937_64 rng(6);
  const auto star = picture_from_certificate(certify(testgen::random_curve(3, testgen::Shape::Star, rng)));
  for (const auto& c : star.top.children) CHECK(c.depth == Val::integer(2));
  CHECK(shifted_picture(star).top.children.empty());
}

TEST_CASE("canonical form and rendering") {
  const auto gl = shifted_picture(picture_from_certificate(certify(testgen::global_curve())));
  CHECK(ascii_picture(gl) == "((* *)_1 (* *)_1 * *)_0");
  const auto j = canonical_json(gl);
  CHECK(j["roots"] == 6);
  CHECK(j["top"]["leaves"] == 2);
  CHECK(j["top"]["children"][0]["depth"]["num"] == 1);
  CHECK(ascii_picture(odd_p_picture(kGlobalFactors, 53)) == "((* *)_1/2 (* *)_1/2 * *)_0");
  // Labels and child order do not matter.
  auto other = gl;
  std::reverse(other.top.children.begin(), other.top.children.end());
  other.leaf_labels.assign(other.leaf_labels.size(), "x");
  CHECK(same_picture(gl, other));
}

TEST_CASE("ultrametric round trip") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 50; ++it) {
    const auto cert = certify(testgen::random_curve(2 + it % 3, testgen::Shape::Any, rng));
    const auto pic = picture_from_certificate(cert);
    const auto m = valuation_matrix(pic);
    const auto back = picture_from_valuations(m, pic.leaf_labels);
    CHECK(same_picture(back, pic));
    CHECK(valuation_matrix(back) == m);
    // Translation invariance.
    const auto moved = picture_from_certificate(certify(cert.curve.translated(static_cast<long>(rng() % 999) - 499)));
    CHECK(same_picture(moved, pic));
  }
  // A nested example.
  const Val z = Val::integer(0), one = Val::integer(1), two = Val::integer(2), inf = Val::infinity();
  const ValuationMatrix nested = {{inf, two, one, z}, {two, inf, one, z}, {one, one, inf, z}, {z, z, z, inf}};
  const auto pic = picture_from_valuations(nested, {});
  CHECK(ascii_picture(pic) == "(((* *)_2 *)_1 *)_0");
  CHECK(valuation_matrix(pic) == nested);
}
