#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "hyp2/fq_poly.hpp"
#include "hyp2/hensel.hpp"
#include "hyp2/star_certify.hpp"

namespace hyp2 {

/// y^2 + Q(x) y = P(x) with 4P = cf - Q^2. Q and P live over the common
/// degree-M ring (Q known to precision N - 1, P to N - 2); their reductions
/// over F_{2^M}.
struct StableModelData {
  UnramPoly q;
  UnramPoly p;
  FqPoly q_bar;
  FqPoly p_bar;
  /// a Q^2 + sum eta_i prod_{j != i} (x - r_j)^2, reduced.
  FqPoly p_bar_closed_form;
};

/// Throws NotCertified. Asserts that Q descends to the base and that the two
/// computations of P mod 2 agree.
StableModelData stable_model(const StarCertificate& cert);

struct PairInput {
  UnramElem gamma;
  UnramElem eta;
};

/// The same construction for arbitrary pair data over one ring, without the
/// descent assertion and without comparing the two forms of P mod 2.
StableModelData stable_model_from_pairs(const mpz_class& c, const std::vector<PairInput>& pairs);

FqPoly p_bar_closed_form(int a_bar, const std::vector<FqElem>& r, const std::vector<FqElem>& eta_bar);

enum class PointKind { Smooth, Node, Worse };

struct ScanPoint {
  std::optional<FqElem> x;  // empty for the point at infinity
  PointKind kind;
};

/// Classifies the points of y^2 + Qy = P lying over the roots of Q (in a
/// splitting field) and over infinity. Q must have degree g + 1 where
/// deg P <= 2g + 2.
std::vector<ScanPoint> smoothness_scan(const FqPoly& q_bar, const FqPoly& p_bar);

struct NodeData {
  std::size_t pair_index;
  FqElem r;
  unsigned degree_over_base;  // [k(r) : k]
  long thickness;
  bool split;
  std::size_t orbit_id;
};

/// Nodes at the pairs with v(eta) >= 1, cross-checked against the smoothness
/// scan of the reduced stable model.
std::vector<NodeData> nodes(const StarCertificate& cert);

/// Trace from F_{2^field_degree} to F_2 of a + sum_{j != i} eta_j (r_i - r_j)^{-2}.
/// The sum must lie in that subfield.
FqElem node_split_trace(int a_bar, const std::vector<FqElem>& r, const std::vector<FqElem>& eta_bar, std::size_t i,
                        unsigned field_degree);

/// Whether the node of pair i is split over k(r_i). Throws
/// std::invalid_argument when pair i is not a node.
bool split_flag(const StarCertificate& cert, std::size_t i);

/// Factorization of y^2 + Qy = P over the algebraic closure, when Q splits
/// over its coefficient field and has distinct roots.
struct FibreSplitting {
  bool reducible;
  /// Frobenius of the degree-`base_degree` subfield exchanges the factors.
  bool swapped;
};
FibreSplitting fibre_splitting(const FqPoly& q_bar, const FqPoly& p_bar, unsigned base_degree);

enum class VertexKind { Component, ChainLink };

struct GraphVertex {
  int genus;
  VertexKind kind;
  std::optional<std::size_t> node;  // chain links only
  int position = 0;                 // 1-based place along the chain
};

struct GraphEdge {
  std::size_t a, b;  // oriented a -> b
  std::size_t node;  // pair index
  long thickness;    // chain length in the stable graph, 1 in the minimal one
};

/// Frobenius as a graph automorphism. Edge e maps to edge_perm[e]; when
/// edge_flip[e] is set the orientation is reversed.
struct GraphFrobenius {
  std::vector<std::size_t> vertex_perm;
  std::vector<std::size_t> edge_perm;
  std::vector<bool> edge_flip;
};

struct DualGraph {
  int genus;  // of the curve
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  GraphFrobenius frobenius;
};

DualGraph stable_graph(const StarCertificate& cert);
DualGraph minimal_regular_graph(const StarCertificate& cert);
/// Replaces every chain by a single edge of the chain's length.
DualGraph contract_chains(const DualGraph& g);

int cycle_rank(const DualGraph& g);
int vertex_genus_sum(const DualGraph& g);
bool is_automorphism(const DualGraph& g);
bool same_graph(const DualGraph& a, const DualGraph& b);

struct OrbitReport {
  std::vector<std::size_t> vertex_orbits;  // sorted sizes
  std::vector<std::size_t> edge_orbits;
};
OrbitReport orbit_report(const DualGraph& g);

}  // namespace hyp2
