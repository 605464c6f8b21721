#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "hyp2/star_certify.hpp"
#include "hyp2/val.hpp"

namespace hyp2 {

struct Cluster {
  Val depth;
  std::vector<std::size_t> leaves;  // roots directly in this cluster
  std::vector<Cluster> children;    // proper subclusters

  std::size_t size() const;
};

struct ClusterPicture {
  std::vector<std::string> leaf_labels;
  Cluster top;
  /// Frobenius on the child clusters of the top cluster, when known.
  std::vector<std::size_t> twin_frobenius;
};

/// Symmetric matrix of v(root_i - root_j); the diagonal is ignored.
using ValuationMatrix = std::vector<std::vector<Val>>;

/// The cluster tree of an ultrametric valuation matrix; the top cluster has
/// the minimal off-diagonal depth. Needs at least two roots.
ClusterPicture picture_from_valuations(const ValuationMatrix& v, std::vector<std::string> labels);
/// Depth of the smallest cluster containing each pair (infinity on the
/// diagonal).
ValuationMatrix valuation_matrix(const ClusterPicture& pic);

/// Top cluster of depth 0 holding one twin per pair, of depth 2 + v(eta)/2.
ClusterPicture picture_from_certificate(const StarCertificate& cert);

/// Lowers every twin depth by 2; twins landing at depth 0 dissolve into the
/// top cluster. Throws std::invalid_argument if the picture is not a top
/// cluster of twins or a twin would go below 0.
ClusterPicture shifted_picture(const ClusterPicture& pic);

/// Label-free form: depth, number of direct leaves, and children sorted by
/// their own canonical form.
nlohmann::json canonical_json(const ClusterPicture& pic);
bool same_picture(const ClusterPicture& a, const ClusterPicture& b);
/// Nested parentheses with depth subscripts, e.g. "((* *)_3 * *)_0".
std::string ascii_picture(const ClusterPicture& pic);

using IntPoly = std::vector<mpz_class>;  // low degree first

/// Picture of the roots of a product of monic integer factors of degree <= 2
/// over Q_p, p odd. Roots are computed in Z_p[zeta, sqrt p], with zeta a
/// generator of the unramified quadratic extension. Throws UnsupportedExtension
/// for larger factors and PrecisionExhausted when 0 precision selects too
/// little; 0 picks v_p(disc) + 16.
ClusterPicture odd_p_picture(const std::vector<IntPoly>& factors, std::uint32_t p, unsigned precision = 0);
/// The pairwise root valuations behind odd_p_picture.
ValuationMatrix odd_p_valuations(const std::vector<IntPoly>& factors, std::uint32_t p, unsigned precision = 0);

struct OracleCheck {
  std::string what;
  Val expected;  // from a resultant or discriminant
  Val observed;  // from the explicit roots
  bool ok() const { return expected == observed; }
};

/// v_p(Res(g, h)) against the sum of cross-root valuations for each pair of
/// factors, and v_p(disc g) against twice the root distance of each
/// quadratic.
std::vector<OracleCheck> valuation_oracle(const std::vector<IntPoly>& factors, std::uint32_t p);

}  // namespace hyp2
