#include "hyp2/special_fibre.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hyp2 {

namespace {

FqPoly square(const FqPoly& f) { return f * f; }

StableModelData build_model(const mpz_class& c, const UnramPoly& f, const std::vector<PairInput>& pairs) {
  const UnramRing& ring = f.ring();
  const unsigned n = ring.precision();
  UnramPoly q = UnramPoly::constant(ring.one());
  for (const auto& p : pairs) q *= UnramPoly::linear(p.gamma);
  const UnramPoly cf = f * ring.from_integer(c);
  const UnramPoly p = divide_by_p_power(cf - q * q, 2);

  StableModelData out{truncate(q, n - 1), p, reduce(q), reduce(p), FqPoly(ring.residue_field())};
  std::vector<FqElem> r, eta_bar;
  for (const auto& pr : pairs) {
    r.push_back(pr.gamma.reduce());
    eta_bar.push_back(pr.eta.reduce());
  }
  mpz_class a = (c - 1) / 4;
  out.p_bar_closed_form = p_bar_closed_form(mpz_odd_p(a.get_mpz_t()) ? 1 : 0, r, eta_bar);
  return out;
}

// Image of the generator of `source` in `target`, for embedding F_{2^a} in
// F_{2^b} with a | b.
FqElem generator_image(const FqField& source, const FqField& target) {
  std::vector<FqElem> c;
  for (auto m : source.modulus()) c.push_back(target.from_int(m));
  std::mt19937_64 rng(1);
  const auto roots = fq_roots(FqPoly(target, std::move(c)), rng);
  if (roots.empty()) throw std::invalid_argument("field does not embed");
  return roots.front();
}

FqPoly embed(const FqPoly& f, const FqField& target) {
  if (f.ring() == target) return f;
  const FqElem g = generator_image(f.ring(), target);
  return map_coeffs(f, target, [&](const FqElem& e) {
    FqElem acc = target.zero();
    FqElem power = target.one();
    for (auto digit : e.coeffs()) {
      acc += power * target.from_int(digit);
      power *= g;
    }
    return acc;
  });
}

PointKind classify(const FqPoly& q, const FqPoly& p, const FqElem& x) {
  if (!evaluate(q, x).is_zero()) return PointKind::Smooth;
  const FqElem dq = evaluate(derivative(q), x);
  const FqElem dp = evaluate(derivative(p), x);
  const FqElem s = dp * dp + evaluate(p, x) * dq * dq;
  if (!s.is_zero()) return PointKind::Smooth;
  return dq.is_zero() ? PointKind::Worse : PointKind::Node;
}

// Reversal t^deg f(1/t).
FqPoly reversed(const FqPoly& f, int deg) {
  std::vector<FqElem> c(static_cast<std::size_t>(deg + 1), f.ring().zero());
  for (int k = 0; k <= f.degree(); ++k) c[static_cast<std::size_t>(deg - k)] = f.coeff(static_cast<std::size_t>(k));
  return FqPoly(f.ring(), std::move(c));
}

std::vector<FqElem> residue_points(const StarCertificate& cert) {
  std::vector<FqElem> r;
  for (const auto& p : cert.pairs) r.push_back(p.r);
  return r;
}

std::vector<FqElem> eta_bars(const StarCertificate& cert) {
  std::vector<FqElem> out;
  for (const auto& p : cert.pairs) out.push_back(p.eta.reduce());
  return out;
}

std::vector<std::size_t> cycles_sizes(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len) out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FqPoly p_bar_closed_form(int a_bar, const std::vector<FqElem>& r, const std::vector<FqElem>& eta_bar) {
  const FqField& field = r.front().ring();
  FqPoly q = FqPoly::constant(field.one());
  for (const auto& x : r) q *= FqPoly::linear(x);
  FqPoly acc = a_bar ? square(q) : FqPoly(field);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (eta_bar[i].is_zero()) continue;
    FqPoly term = FqPoly::constant(eta_bar[i]);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j != i) term *= square(FqPoly::linear(r[j]));
    }
    acc += term;
  }
  return acc;
}

StableModelData stable_model(const StarCertificate& cert) {
  if (!cert.certified()) throw NotCertified();
  const UnramRing ring(2, cert.common_degree, cert.precision);
  std::vector<PairInput> pairs;
  for (const auto& p : cert.pairs) pairs.push_back({p.gamma.extend(cert.precision), p.eta.extend(cert.precision)});
  StableModelData out = build_model(cert.curve.c, from_integers(ring, cert.curve.f), pairs);
  for (const auto& coeff : out.q.coeffs()) {
    if (!(coeff.frobenius(cert.curve.base_degree) == coeff)) throw std::logic_error("Q does not descend to the base");
  }
  if (!(out.p_bar == out.p_bar_closed_form)) throw std::logic_error("closed form of P mod 2 disagrees with reduction");
  return out;
}

StableModelData stable_model_from_pairs(const mpz_class& c, const std::vector<PairInput>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("no pairs");
  const UnramRing& ring = pairs.front().gamma.ring();
  UnramPoly f = UnramPoly::constant(ring.one());
  for (const auto& p : pairs) {
    const UnramPoly lin = UnramPoly::linear(p.gamma);
    f *= lin * lin - UnramPoly::constant(ring.from_int(4) * p.eta);
  }
  return build_model(c, f, pairs);
}

std::vector<ScanPoint> smoothness_scan(const FqPoly& q_bar, const FqPoly& p_bar) {
  const FqField& base = q_bar.ring();
  std::mt19937_64 rng(7);
  unsigned split_degree = base.degree();
  for (const auto& fac : fq_factor(q_bar, rng)) {
    split_degree = std::lcm(split_degree, base.degree() * static_cast<unsigned>(fac.factor.degree()));
  }
  const FqField field = split_degree == base.degree() ? base : FqField(base.p(), split_degree);
  const FqPoly q = embed(q_bar, field);
  const FqPoly p = embed(p_bar, field);

  std::vector<ScanPoint> out;
  for (const auto& x : fq_roots(q, rng)) out.push_back({x, classify(q, p, x)});
  const int top = q.degree();
  out.push_back({std::nullopt, classify(reversed(q, top), reversed(p, 2 * top), field.zero())});
  return out;
}

FqElem node_split_trace(int a_bar, const std::vector<FqElem>& r, const std::vector<FqElem>& eta_bar, std::size_t i,
                        unsigned field_degree) {
  const FqField& field = r[i].ring();
  FqElem beta = a_bar ? field.one() : field.zero();
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (j == i || eta_bar[j].is_zero()) continue;
    const FqElem diff = r[i] - r[j];
    beta += eta_bar[j] * (diff * diff).inverse();
  }
  return fq_trace(beta, field_degree);
}

bool split_flag(const StarCertificate& cert, std::size_t i) {
  if (!cert.certified()) throw NotCertified();
  const auto& pair = cert.pairs.at(i);
  if (pair.eta_valuation < 1) throw std::invalid_argument("pair is not a node");
  const unsigned field_degree = std::lcm(cert.curve.base_degree, pair.residue_degree);
  return node_split_trace(cert.a_bar(), residue_points(cert), eta_bars(cert), i, field_degree).is_zero();
}

std::vector<NodeData> nodes(const StarCertificate& cert) {
  if (!cert.certified()) throw NotCertified();
  const auto model = stable_model(cert);
  const auto orbits = cert.orbits();
  std::vector<NodeData> out;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    for (std::size_t i : orbits[o]) {
      const auto& p = cert.pairs[i];
      if (p.eta_valuation < 1) continue;
      out.push_back({i, p.r, p.degree_over_base(cert.curve.base_degree), p.eta_valuation, split_flag(cert, i), o});
    }
  }
  std::sort(out.begin(), out.end(), [](const NodeData& a, const NodeData& b) { return a.pair_index < b.pair_index; });

  // The singular points of the reduced model must be exactly these.
  std::vector<FqElem> expected, found;
  for (const auto& nd : out) expected.push_back(nd.r);
  for (const auto& pt : smoothness_scan(model.q_bar, model.p_bar)) {
    if (pt.kind == PointKind::Worse || (pt.kind == PointKind::Node && !pt.x)) {
      throw std::logic_error("reduced stable model has a non-nodal singularity");
    }
    if (pt.kind == PointKind::Node) found.push_back(*pt.x);
  }
  std::sort(expected.begin(), expected.end());
  std::sort(found.begin(), found.end());
  if (expected != found) throw std::logic_error("node count from valuations disagrees with the smoothness scan");
  return out;
}

FibreSplitting fibre_splitting(const FqPoly& q_bar, const FqPoly& p_bar, unsigned base_degree) {
  const FqField& field = q_bar.ring();
  std::mt19937_64 rng(3);
  const auto r = fq_roots(q_bar, rng);
  if (static_cast<int>(r.size()) != q_bar.degree()) throw std::invalid_argument("Q must split with distinct roots");
  // y + L and y + L + Q are the candidate factors, with L(r_i)^2 = P(r_i).
  FqPoly l(field);
  for (std::size_t i = 0; i < r.size(); ++i) {
    FqPoly basis = FqPoly::constant(evaluate(p_bar, r[i]).sqrt_char2());
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j == i) continue;
      basis *= FqPoly::linear(r[j]);
      basis *= (r[i] - r[j]).inverse();
    }
    l += basis;
  }
  const FqPoly rest = p_bar + l * l + q_bar * l;
  const FqElem nu = rest.coeff(static_cast<std::size_t>(2 * q_bar.degree()));
  const bool reducible = rest == FqPoly::constant(nu) * square(q_bar) || (nu.is_zero() && rest.is_zero());
  if (!reducible) return {false, false};
  // The factors are y + L + mu Q with mu^2 + mu = nu; they are defined over k
  // exactly when nu has trace 0 from k.
  FqElem nu_k = nu;
  for (unsigned i = 0; i < base_degree; ++i) nu_k = nu_k.frobenius();
  if (!(nu_k == nu)) throw std::logic_error("fibre factorization is not defined over the base");
  return {true, !fq_trace(nu, base_degree).is_zero()};
}

DualGraph stable_graph(const StarCertificate& cert) {
  const auto node_list = nodes(cert);
  const int g = cert.genus();
  const auto t = static_cast<int>(node_list.size());
  const auto model = stable_model(cert);
  const auto splitting = fibre_splitting(model.q_bar, model.p_bar, cert.curve.base_degree);
  if (splitting.reducible != (t == g + 1)) throw std::logic_error("component count disagrees with node count");

  DualGraph out;
  out.genus = g;
  std::map<std::size_t, std::size_t> edge_of;
  for (std::size_t e = 0; e < node_list.size(); ++e) edge_of[node_list[e].pair_index] = e;

  const auto orbits = cert.orbits();
  if (t <= g) {
    out.vertices.push_back({g - t, VertexKind::Component, std::nullopt, 0});
    out.frobenius.vertex_perm = {0};
  } else {
    out.vertices.push_back({0, VertexKind::Component, std::nullopt, 0});
    out.vertices.push_back({0, VertexKind::Component, std::nullopt, 0});
    out.frobenius.vertex_perm = splitting.swapped ? std::vector<std::size_t>{1, 0} : std::vector<std::size_t>{0, 1};
  }
  for (const auto& nd : node_list) {
    const std::size_t b = t <= g ? 0 : 1;
    out.edges.push_back({0, b, nd.pair_index, nd.thickness});
    const std::size_t image = cert.frobenius_perm[nd.pair_index];
    out.frobenius.edge_perm.push_back(edge_of.at(image));
    bool flip;
    if (t <= g) {
      // Branch labels are transported along the orbit; the step closing the
      // orbit reverses them iff the node is non-split.
      flip = image == orbits[nd.orbit_id].front() && !nd.split;
    } else {
      flip = splitting.swapped;
      const bool odd_orbit = nd.degree_over_base % 2 == 1;
      if (nd.split == (splitting.swapped && odd_orbit)) {
        throw std::logic_error("component swap disagrees with split flag");
      }
    }
    out.frobenius.edge_flip.push_back(flip);
  }
  return out;
}

DualGraph minimal_regular_graph(const StarCertificate& cert) {
  const DualGraph stable = stable_graph(cert);
  DualGraph out;
  out.genus = stable.genus;
  out.vertices = stable.vertices;
  out.frobenius.vertex_perm = stable.frobenius.vertex_perm;

  // Chain for stable edge e: links[e][k-1] is the k-th link, path[e][k] the
  // k-th edge along the orientation.
  std::vector<std::vector<std::size_t>> links(stable.edges.size()), path(stable.edges.size());
  for (std::size_t e = 0; e < stable.edges.size(); ++e) {
    const auto& se = stable.edges[e];
    std::size_t prev = se.a;
    for (long k = 1; k < se.thickness; ++k) {
      out.vertices.push_back({0, VertexKind::ChainLink, se.node, static_cast<int>(k)});
      const std::size_t v = out.vertices.size() - 1;
      links[e].push_back(v);
      path[e].push_back(out.edges.size());
      out.edges.push_back({prev, v, se.node, 1});
      prev = v;
    }
    path[e].push_back(out.edges.size());
    out.edges.push_back({prev, se.b, se.node, 1});
  }

  out.frobenius.vertex_perm.resize(out.vertices.size());
  out.frobenius.edge_perm.resize(out.edges.size());
  out.frobenius.edge_flip.resize(out.edges.size());
  for (std::size_t e = 0; e < stable.edges.size(); ++e) {
    const std::size_t img = stable.frobenius.edge_perm[e];
    const bool flip = stable.frobenius.edge_flip[e];
    const std::size_t n = path[e].size();
    for (std::size_t k = 0; k < links[e].size(); ++k) {
      out.frobenius.vertex_perm[links[e][k]] = links[img][flip ? links[e].size() - 1 - k : k];
    }
    for (std::size_t k = 0; k < n; ++k) {
      out.frobenius.edge_perm[path[e][k]] = path[img][flip ? n - 1 - k : k];
      out.frobenius.edge_flip[path[e][k]] = flip;
    }
  }
  return out;
}

DualGraph contract_chains(const DualGraph& g) {
  DualGraph out;
  out.genus = g.genus;
  std::vector<std::size_t> new_index(g.vertices.size(), SIZE_MAX);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.vertices[v].kind != VertexKind::Component) continue;
    new_index[v] = out.vertices.size();
    out.vertices.push_back(g.vertices[v]);
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (new_index[v] != SIZE_MAX) out.frobenius.vertex_perm.push_back(new_index[g.frobenius.vertex_perm[v]]);
  }
  // Edges of one chain are consecutive and share a node index.
  std::vector<std::size_t> chain_of(g.edges.size());
  std::vector<std::size_t> first_edge;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (e == 0 || g.edges[e].node != g.edges[e - 1].node || g.vertices[g.edges[e].a].kind == VertexKind::Component) {
      first_edge.push_back(e);
      out.edges.push_back({new_index[g.edges[e].a], 0, g.edges[e].node, 0});
    }
    chain_of[e] = out.edges.size() - 1;
    auto& ce = out.edges.back();
    ce.thickness += g.edges[e].thickness;
    if (g.vertices[g.edges[e].b].kind == VertexKind::Component) ce.b = new_index[g.edges[e].b];
  }
  for (std::size_t c = 0; c < first_edge.size(); ++c) {
    out.frobenius.edge_perm.push_back(chain_of[g.frobenius.edge_perm[first_edge[c]]]);
    out.frobenius.edge_flip.push_back(g.frobenius.edge_flip[first_edge[c]]);
  }
  return out;
}

int cycle_rank(const DualGraph& g) {
  std::vector<std::size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = g.vertices.size();
  for (const auto& e : g.edges) {
    const auto a = find(e.a), b = find(e.b);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) + static_cast<int>(components);
}

int vertex_genus_sum(const DualGraph& g) {
  int s = 0;
  for (const auto& v : g.vertices) s += v.genus;
  return s;
}

bool is_automorphism(const DualGraph& g) {
  const auto& f = g.frobenius;
  if (f.vertex_perm.size() != g.vertices.size() || f.edge_perm.size() != g.edges.size() ||
      f.edge_flip.size() != g.edges.size()) {
    return false;
  }
  auto is_perm = [](std::vector<std::size_t> p) {
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != i) return false;
    }
    return true;
  };
  if (!is_perm(f.vertex_perm) || !is_perm(f.edge_perm)) return false;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& img = g.vertices[f.vertex_perm[v]];
    if (img.genus != g.vertices[v].genus || img.kind != g.vertices[v].kind) return false;
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& src = g.edges[e];
    const auto& dst = g.edges[f.edge_perm[e]];
    if (src.thickness != dst.thickness) return false;
    const std::size_t a = f.vertex_perm[src.a], b = f.vertex_perm[src.b];
    const bool ok = f.edge_flip[e] ? (a == dst.b && b == dst.a) : (a == dst.a && b == dst.b);
    if (!ok) return false;
  }
  return true;
}

bool same_graph(const DualGraph& a, const DualGraph& b) {
  if (a.genus != b.genus || a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
  for (std::size_t v = 0; v < a.vertices.size(); ++v) {
    if (a.vertices[v].genus != b.vertices[v].genus || a.vertices[v].kind != b.vertices[v].kind) return false;
  }
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    const auto &x = a.edges[e], &y = b.edges[e];
    if (x.a != y.a || x.b != y.b || x.node != y.node || x.thickness != y.thickness) return false;
  }
  return a.frobenius.vertex_perm == b.frobenius.vertex_perm && a.frobenius.edge_perm == b.frobenius.edge_perm &&
         a.frobenius.edge_flip == b.frobenius.edge_flip;
}

OrbitReport orbit_report(const DualGraph& g) {
  return {cycles_sizes(g.frobenius.vertex_perm), cycles_sizes(g.frobenius.edge_perm)};
}

}  // namespace hyp2
