#include <doctest.h>

#include <algorithm>
#include <random>

#include "curve_gen.hpp"
#include "fibre_oracles.hpp"
#include "hyp2/special_fibre.hpp"

using namespace hyp2;

namespace {

FqPoly over(const FqField& field, const std::vector<long>& c) { return fq_poly_from_ints(field, c); }

std::vector<long> thicknesses(const std::vector<NodeData>& ns) {
  std::vector<long> out;
  for (const auto& n : ns) out.push_back(n.thickness);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("stable model of the worked examples") {
  const FqField f4(2, 2);
  const auto ex = stable_model(certify(testgen::ex111_curve()));
  const FqPoly q = over(f4, {0, 1, 1, 1});
  CHECK(ex.q_bar == q);
  CHECK(ex.p_bar == q * q);

  const auto gl = stable_model(certify(testgen::global_curve()));
  CHECK(gl.q_bar == q);
  const FqPoly w = over(f4, {1, 1, 1});
  CHECK(gl.p_bar == w * w);
  CHECK(gl.p_bar_closed_form == gl.p_bar);
  // Q descends: all its coefficients are in Z_2.
  for (const auto& c : gl.q.coeffs()) CHECK(c.is_base());
}

TEST_CASE("smoothness scan") {
  const FqField f2(2, 1);
  const auto ex = stable_model(certify(testgen::ex111_curve()));
  const auto scan = smoothness_scan(ex.q_bar, ex.p_bar);
  REQUIRE(scan.size() == 4);
  for (const auto& pt : scan) CHECK(pt.kind == (pt.x ? PointKind::Node : PointKind::Smooth));

  // Q = x^2 (x + 1) has a double root at 0.
  const auto worse = smoothness_scan(over(f2, {0, 0, 1, 1}), over(f2, {1, 0, 1}));
  REQUIRE(worse.size() == 3);
  CHECK(worse[0].kind == PointKind::Worse);
  CHECK(worse[1].kind == PointKind::Node);
  CHECK(worse[2].kind == PointKind::Smooth);

  // Roots outside the coefficient field are found in an extension.
  const auto ext = smoothness_scan(over(f2, {1, 1, 1}), over(f2, {1}));
  REQUIRE(ext.size() == 3);
  CHECK(ext[0].x->field().degree() == 2);
  for (const auto& pt : ext) CHECK(pt.kind == PointKind::Smooth);

  std::mt19937_64 rng(4);
  for (int g : {2, 3, 4}) {
    const auto cert = certify(testgen::random_curve(g, testgen::Shape::Star, rng));
    const auto m = stable_model(cert);
    const auto pts = smoothness_scan(m.q_bar, m.p_bar);
    CHECK(pts.size() == static_cast<std::size_t>(g + 2));
    for (const auto& pt : pts) CHECK(pt.kind == PointKind::Smooth);
    CHECK(m.q_bar.degree() == g + 1);
    CHECK(m.p_bar.degree() <= 2 * g + 2);
  }
}

TEST_CASE("nodes and split flags of the worked examples") {
  const auto ex = certify(testgen::ex111_curve());
  const auto ns = nodes(ex);
  REQUIRE(ns.size() == 3);
  CHECK(thicknesses(ns) == std::vector<long>{1, 2, 2});
  CHECK(ns[0].r.is_zero());
  CHECK_FALSE(ns[0].split);
  CHECK(ns[1].split);
  CHECK(ns[2].split);
  CHECK(ns[1].orbit_id == ns[2].orbit_id);
  CHECK(ns[1].degree_over_base == 2);

  const auto gl = certify(testgen::global_curve());
  const auto gn = nodes(gl);
  REQUIRE(gn.size() == 2);
  CHECK(thicknesses(gn) == std::vector<long>{2, 2});
  CHECK(gn[0].pair_index == 1);
  // beta = eta_0 / zeta^2 = zeta has trace 1 over F_4.
  CHECK_FALSE(gn[0].split);
  CHECK_THROWS_AS(split_flag(gl, 0), std::invalid_argument);

  std::mt19937_64 rng(8);
  CHECK(nodes(certify(testgen::random_curve(3, testgen::Shape::Star, rng))).empty());
}

TEST_CASE("split flag with a = 0 and all eta mod 2 zero is split") {
  const FqField f8(2, 3);
  std::vector<FqElem> r{f8.zero(), f8.one(), f8.generator()};
  std::vector<FqElem> eta(3, f8.zero());
  for (std::size_t i = 0; i < 3; ++i) CHECK(node_split_trace(0, r, eta, i, 3).is_zero());
  CHECK_FALSE(node_split_trace(1, r, eta, 0, 3).is_zero());  // trace of 1 over F_8
}

TEST_CASE("trace criterion agrees with exhaustive solubility") {
  std::mt19937_64 rng(2718);
  int tested = 0;
  for (unsigned m = 2; m <= 8; ++m) {
    const FqField field(2, m);
    for (int it = 0; it < 40; ++it) {
      const std::size_t n = 3 + rng() % 3;
      if (field.order() < n) continue;
      std::vector<FqElem> r;
      while (r.size() < n) {
        const auto x = field.from_index(rng() % field.order().get_ui());
        if (std::find(r.begin(), r.end(), x) == r.end()) r.push_back(x);
      }
      std::vector<FqElem> eta;
      for (std::size_t j = 0; j < n; ++j) eta.push_back(rng() % 3 ? field.from_index(rng() % field.order().get_ui()) : field.zero());
      const int a = static_cast<int>(rng() % 2);
      const std::size_t i = rng() % n;
      CHECK(node_split_trace(a, r, eta, i, m).is_zero() == testgen::brute_force_split(a, r, eta, i, m));
      ++tested;
    }
  }
  CHECK(tested >= 200);

  // Certificate nodes, where k(r_i) can be a proper subfield.
  for (int it = 0; it < 20; ++it) {
    const auto cert = certify(testgen::random_curve(2 + it % 3, testgen::Shape::StarStar, rng));
    std::vector<FqElem> r, eta;
    for (const auto& p : cert.pairs) {
      r.push_back(p.r);
      eta.push_back(p.eta.reduce());
    }
    for (const auto& nd : nodes(cert)) {
      const unsigned sub = nd.degree_over_base * cert.curve.base_degree;
      CHECK(nd.split == testgen::brute_force_split(cert.a_bar(), r, eta, nd.pair_index, sub));
    }
  }
}

TEST_CASE("stable model identities on random pair data") {
  std::mt19937_64 rng(31415);
  for (int it = 0; it < 100; ++it) {
    const int g = 2 + it % 3;
    const unsigned m = g == 2 ? 2 + rng() % 3 : 3 + rng() % 2;
    const auto inst = testgen::random_pair_instance(g, m, 40, rng);
    const auto model = stable_model_from_pairs(inst.c, inst.pairs);
    CHECK(model.p_bar == model.p_bar_closed_form);
    const UnramPoly p = testgen::expanded_p(inst);
    CHECK(extend(model.p, 40) * p.ring().from_int(4) == p * p.ring().from_int(4));
  }
}

TEST_CASE("dual graphs of the worked examples") {
  const auto ex = certify(testgen::ex111_curve());
  const auto st = stable_graph(ex);
  CHECK(st.vertices.size() == 2);
  CHECK(st.edges.size() == 3);
  CHECK(st.frobenius.vertex_perm == std::vector<std::size_t>{1, 0});
  CHECK(is_automorphism(st));
  const auto mr = minimal_regular_graph(ex);
  CHECK(mr.vertices.size() == 4);
  CHECK(orbit_report(mr).vertex_orbits == std::vector<std::size_t>{2, 2});
  CHECK(orbit_report(st).edge_orbits == std::vector<std::size_t>{1, 2});
  CHECK(is_automorphism(mr));
  // The two chain links are swapped.
  CHECK(mr.frobenius.vertex_perm[2] == 3);

  const auto gl = certify(testgen::global_curve());
  const auto gs = stable_graph(gl);
  REQUIRE(gs.vertices.size() == 1);
  CHECK(gs.vertices[0].genus == 0);
  CHECK(gs.edges.size() == 2);
  for (const auto& e : gs.edges) {
    CHECK(e.a == e.b);
    CHECK(e.thickness == 2);
  }
  const auto gm = minimal_regular_graph(gl);
  CHECK(cycle_rank(gm) == 2);
  CHECK(gm.vertices.size() == 3);
  CHECK(gm.edges.size() == 4);
  CHECK(orbit_report(gs).edge_orbits == std::vector<std::size_t>{2});
  CHECK(orbit_report(gm).vertex_orbits == std::vector<std::size_t>{1, 2});

  std::mt19937_64 rng(5);
  const auto star = certify(testgen::random_curve(3, testgen::Shape::Star, rng));
  const auto sg = stable_graph(star);
  REQUIRE(sg.vertices.size() == 1);
  CHECK(sg.vertices[0].genus == 3);
  CHECK(sg.edges.empty());
  CHECK(orbit_report(sg).vertex_orbits == std::vector<std::size_t>{1});
}

TEST_CASE("graph invariants on random curves") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 40; ++it) {
    const int g = 2 + it % 3;
    const auto cert = certify(testgen::random_curve(g, testgen::Shape::StarStar, rng));
    const auto ns = nodes(cert);
    const auto st = stable_graph(cert);
    const auto mr = minimal_regular_graph(cert);
    for (const auto* gr : {&st, &mr}) {
      CHECK(vertex_genus_sum(*gr) + cycle_rank(*gr) == g);
      CHECK(is_automorphism(*gr));
    }
    CHECK(same_graph(contract_chains(mr), st));
    // A loop fixed by Frobenius is reversed exactly when its node is non-split.
    if (st.vertices.size() == 1) {
      for (std::size_t e = 0; e < st.edges.size(); ++e) {
        if (st.frobenius.edge_perm[e] == e) CHECK(st.frobenius.edge_flip[e] == !ns[e].split);
      }
    }
    const auto m = stable_model(cert);
    const auto fs = fibre_splitting(m.q_bar, m.p_bar, 1);
    CHECK(fs.reducible == (static_cast<int>(ns.size()) == g + 1));
  }
}
