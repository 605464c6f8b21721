#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hyp2/cluster_pictures.hpp"
#include "hyp2/special_fibre.hpp"
#include "hyp2/star_certify.hpp"
#include "hyp2/two_torsion.hpp"

namespace hyp2 {

// JSON conventions: integers that can exceed 2^53 are decimal strings;
// valuations are {"num", "den"} objects; field elements are coefficient lists
// in the power basis of the residue field generator.

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const Val& v);
nlohmann::json to_json(const FqElem& x);
nlohmann::json to_json(const FqPoly& f);
nlohmann::json to_json(const UnramElem& x);
nlohmann::json field_json(const FqField& field);

nlohmann::json certificate_json(const StarCertificate& cert);
nlohmann::json stable_model_json(const StableModelData& model);
nlohmann::json nodes_json(const std::vector<NodeData>& nodes);
nlohmann::json graph_json(const DualGraph& g);
nlohmann::json orbit_json(const OrbitReport& r);
nlohmann::json picture_json(const ClusterPicture& pic);
nlohmann::json two_torsion_json(const StarCertificate& cert);

/// Every section of the analysis for one curve.
nlohmann::json analysis_json(const std::string& label, const StarCertificate& cert);

std::string graph_dot(const DualGraph& g, const std::string& name);

/// Human-readable verdict line.
std::string verdict_text(const StarCertificate& cert);

}  // namespace hyp2
