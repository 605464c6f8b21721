#include "hyp2/report.hpp"

#include <sstream>

namespace hyp2 {

using nlohmann::json;

json to_json(const Val& v) {
  if (!v.is_finite()) return {{"num", nullptr}, {"den", 1}};
  return {{"num", v.num()}, {"den", v.den()}};
}

json to_json(const FqElem& x) {
  json out = json::array();
  for (auto c : x.coeffs()) out.push_back(c);
  return out;
}

json to_json(const FqPoly& f) {
  json out = json::array();
  for (const auto& c : f.coeffs()) out.push_back(to_json(c));
  return out;
}

json to_json(const UnramElem& x) {
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
  return {{"coeffs", coeffs}, {"precision", x.ring().precision()}};
}

json field_json(const FqField& field) {
  json mod = json::array();
  for (auto c : field.modulus()) mod.push_back(c);
  return {{"p", field.p()}, {"degree", field.degree()}, {"modulus", mod}};
}

json certificate_json(const StarCertificate& cert) {
  json j;
  j["verdict"] = to_string(cert.verdict);
  j["reason"] = to_string(cert.reason);
  j["failed_pair"] = cert.failed_pair ? json(*cert.failed_pair) : json(nullptr);
  j["c"] = cert.curve.c.get_str();
  j["a"] = cert.reason == FailReason::CNotOneMod4 ? json(nullptr) : json(cert.a.get_str());
  j["genus"] = cert.genus();
  j["base_residue_degree"] = cert.curve.base_degree;
  j["small_residue_field"] = cert.small_residue_field;
  j["common_degree"] = cert.common_degree;
  j["precision"] = cert.precision;
  j["pairs"] = json::array();
  j["depths"] = json::array();
  j["frobenius_perm"] = cert.frobenius_perm;
  if (cert.certified()) j["field"] = field_json(cert.pairs.front().r.field());
  for (const auto& p : cert.pairs) {
    j["pairs"].push_back({{"index", p.index},
                          {"r", to_json(p.r)},
                          {"residue_degree", p.residue_degree},
                          {"gamma", to_json(p.gamma)},
                          {"eta", to_json(p.eta)},
                          {"eta_valuation", to_json(Val::integer(p.eta_valuation))},
                          {"depth", to_json(p.depth)}});
    j["depths"].push_back(to_json(p.depth));
  }
  return j;
}

json stable_model_json(const StableModelData& model) {
  return {{"field", field_json(model.q_bar.ring())}, {"q_bar", to_json(model.q_bar)}, {"p_bar", to_json(model.p_bar)}};
}

json nodes_json(const std::vector<NodeData>& nodes) {
  json out = json::array();
  for (const auto& n : nodes) {
    out.push_back({{"pair", n.pair_index},
                   {"r", to_json(n.r)},
                   {"degree_over_base", n.degree_over_base},
                   {"thickness", n.thickness},
                   {"split", n.split},
                   {"orbit", n.orbit_id}});
  }
  return out;
}

json graph_json(const DualGraph& g) {
  json vs = json::array(), es = json::array();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& x = g.vertices[v];
    json jv = {{"id", v}, {"genus", x.genus}, {"kind", x.kind == VertexKind::Component ? "component" : "chain_link"}};
    if (x.node) {
      jv["node"] = *x.node;
      jv["position"] = x.position;
    }
    vs.push_back(jv);
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& x = g.edges[e];
    es.push_back({{"id", e}, {"a", x.a}, {"b", x.b}, {"node", x.node}, {"thickness", x.thickness}});
  }
  json flips = json::array();
  for (bool f : g.frobenius.edge_flip) flips.push_back(f);
  return {{"genus", g.genus},
          {"vertices", vs},
          {"edges", es},
          {"frobenius", {{"vertex_perm", g.frobenius.vertex_perm}, {"edge_perm", g.frobenius.edge_perm}, {"edge_flip", flips}}},
          {"cycle_rank", cycle_rank(g)},
          {"vertex_genus_sum", vertex_genus_sum(g)}};
}

json orbit_json(const OrbitReport& r) { return {{"vertices", r.vertex_orbits}, {"edges", r.edge_orbits}}; }

json picture_json(const ClusterPicture& pic) {
  return {{"ascii", ascii_picture(pic)},
          {"canonical", canonical_json(pic)},
          {"labels", pic.leaf_labels},
          {"twin_frobenius", pic.twin_frobenius}};
}

json two_torsion_json(const StarCertificate& cert) {
  const auto d = dims(cert);
  const auto kernel = reduction_kernel(cert);
  json basis = json::array();
  for (const auto& b : kernel.basis()) {
    json roots = json::array();
    for (unsigned i = 0; i < b.roots(); ++i) {
      if (b.mask() >> i & 1) roots.push_back((i % 2 ? "beta" : "alpha") + std::to_string(i / 2 + 1));
    }
    basis.push_back({{"mask", std::to_string(b.mask())}, {"roots", roots}});
  }
  return {{"total", d.total}, {"kernel", d.kernel}, {"image", d.image}, {"kernel_basis", basis}};
}

namespace {

std::string banner(const StarCertificate& cert, std::size_t node_count) {
  if (cert.verdict == Verdict::Star) return "good ordinary reduction";
  if (static_cast<int>(node_count) == cert.genus() + 1) return "semistable: two rational components meeting in g+1 nodes";
  return "semistable: irreducible stable fibre with " + std::to_string(node_count) + " node(s)";
}

}  // namespace

json analysis_json(const std::string& label, const StarCertificate& cert) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["label"] = label;
  j["certificate"] = certificate_json(cert);
  if (!cert.certified()) {
    j["banner"] = "equation not of form (★★)";
    return j;
  }
  const auto model = stable_model(cert);
  const auto ns = nodes(cert);
  const auto st = stable_graph(cert);
  const auto mr = minimal_regular_graph(cert);
  const auto pic = picture_from_certificate(cert);
  j["banner"] = banner(cert, ns.size());
  j["stable_model"] = stable_model_json(model);
  j["nodes"] = nodes_json(ns);
  j["stable_graph"] = graph_json(st);
  j["minimal_regular_graph"] = graph_json(mr);
  j["orbits"] = {{"stable", orbit_json(orbit_report(st))}, {"minimal_regular", orbit_json(orbit_report(mr))}};
  j["cluster_picture"] = picture_json(pic);
  j["shifted_picture"] = picture_json(shifted_picture(pic));
  j["two_torsion"] = cert.verdict == Verdict::Star ? two_torsion_json(cert) : json(nullptr);
  return j;
}

std::string graph_dot(const DualGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph \"" << name << "\" {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& x = g.vertices[v];
    out << "  v" << v << " [label=\"g=" << x.genus << "\", genus=" << x.genus
        << ", kind=" << (x.kind == VertexKind::Component ? "component" : "chain_link") << ", frobenius=\"v"
        << g.frobenius.vertex_perm[v] << "\"];\n";
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& x = g.edges[e];
    out << "  v" << x.a << " -- v" << x.b << " [id=\"e" << e << "\", node=" << x.node << ", thickness=" << x.thickness
        << ", frobenius=\"e" << g.frobenius.edge_perm[e] << "\", flip=" << (g.frobenius.edge_flip[e] ? "true" : "false")
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string verdict_text(const StarCertificate& cert) {
  switch (cert.verdict) {
    case Verdict::Star: return "Star: the equation has property (★)";
    case Verdict::StarStar: return "StarStar: the equation has property (★★)";
    case Verdict::Fail: break;
  }
  std::string s = "Fail(" + to_string(cert.reason);
  if (cert.failed_pair) s += " at pair " + std::to_string(*cert.failed_pair);
  return s + "): equation not of form (★★)";
}

}  // namespace hyp2
