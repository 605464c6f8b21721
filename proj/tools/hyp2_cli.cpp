// Command-line front end: certify curves from a curve file and print reports.
//
// Exit codes: 0 certified, 2 equation fails the check, 1 error.

#include <atomic>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyp2/curve_file.hpp"
#include "hyp2/report.hpp"

using namespace hyp2;
using nlohmann::json;

namespace {

constexpr int kCertified = 0;
constexpr int kError = 1;
constexpr int kNotCertified = 2;

struct Common {
  std::string file;
  std::string label;
  unsigned precision = 0;
  std::uint64_t seed = 0x5eed;
  bool json_out = false;

  CertifyOptions options() const { return {precision, seed}; }
};

void add_common(CLI::App* cmd, Common& c, bool with_label = true) {
  cmd->add_option("file", c.file, "curve file (JSON)")->required();
  if (with_label) cmd->add_option("label", c.label, "curve label")->required();
  cmd->add_option("--precision", c.precision, "working 2-adic precision (0 = automatic)");
  cmd->add_option("--seed", c.seed, "seed for randomized factorization");
  cmd->add_flag("--json", c.json_out, "machine-readable output");
}

int exit_for(const StarCertificate& cert) { return cert.certified() ? kCertified : kNotCertified; }

int run_check(const Common& c, std::ostream& out) {
  const auto entry = load_curve_file(c.file).find(c.label);
  const auto cert = certify(entry.curve, c.options());
  json j = {{"schema_version", kSchemaVersion}, {"label", c.label}, {"certificate", certificate_json(cert)}};
  if (c.json_out) {
    out << j.dump(2) << "\n";
  } else {
    out << c.label << ": " << verdict_text(cert) << "\n" << j.dump() << "\n";
  }
  return exit_for(cert);
}

int run_analyze(const Common& c, std::ostream& out) {
  const auto entry = load_curve_file(c.file).find(c.label);
  const auto cert = certify(entry.curve, c.options());
  const json j = analysis_json(c.label, cert);
  if (c.json_out) {
    out << j.dump(2) << "\n";
    return exit_for(cert);
  }
  out << c.label << ": " << verdict_text(cert) << "\n";
  out << "  " << j["banner"].get<std::string>() << "\n";
  if (!cert.certified()) return exit_for(cert);
  out << "  depths:";
  for (const auto& p : cert.pairs) out << " " << p.depth.to_string();
  out << "\n  Q mod 2: " << j["stable_model"]["q_bar"].dump() << "\n  P mod 2: " << j["stable_model"]["p_bar"].dump()
      << "\n";
  for (const auto& n : j["nodes"]) {
    out << "  node at pair " << n["pair"] << ": thickness " << n["thickness"] << ", "
        << (n["split"].get<bool>() ? "split" : "non-split") << ", orbit " << n["orbit"] << "\n";
  }
  out << "  stable graph: " << j["stable_graph"]["vertices"].size() << " vertices, " << j["stable_graph"]["edges"].size()
      << " edges; vertex orbits " << j["orbits"]["stable"]["vertices"].dump() << "\n";
  out << "  minimal regular graph: " << j["minimal_regular_graph"]["vertices"].size() << " vertices, "
      << j["minimal_regular_graph"]["edges"].size() << " edges; vertex orbits "
      << j["orbits"]["minimal_regular"]["vertices"].dump() << "\n";
  out << "  cluster picture: " << j["cluster_picture"]["ascii"].get<std::string>() << "\n";
  out << "  shifted picture: " << j["shifted_picture"]["ascii"].get<std::string>() << "\n";
  if (!j["two_torsion"].is_null()) {
    const auto& t = j["two_torsion"];
    out << "  J[2]: dim " << t["total"] << ", kernel of reduction " << t["kernel"] << ", image " << t["image"] << "\n";
  }
  return exit_for(cert);
}

int run_cluster(const Common& c, std::uint32_t p, bool shifted, std::ostream& out) {
  const auto entry = load_curve_file(c.file).find(c.label);
  ClusterPicture pic;
  if (p == 2) {
    const auto cert = certify(entry.curve, c.options());
    if (!cert.certified()) {
      std::cerr << c.label << ": " << verdict_text(cert) << "\n";
      return kNotCertified;
    }
    pic = picture_from_certificate(cert);
    if (shifted) pic = shifted_picture(pic);
  } else {
    if (shifted) throw CLI::ValidationError("--shifted", "only meaningful for p = 2");
    const auto it = entry.odd_primes.find(p);
    if (it == entry.odd_primes.end()) {
      throw std::runtime_error("curve '" + c.label + "' has no factorization for p = " + std::to_string(p));
    }
    pic = odd_p_picture(it->second, p, c.precision);
  }
  json j = picture_json(pic);
  j["schema_version"] = kSchemaVersion;
  j["label"] = c.label;
  j["p"] = p;
  j["shifted"] = shifted;
  if (c.json_out) {
    out << j.dump(2) << "\n";
  } else {
    out << j["ascii"].get<std::string>() << "\n" << j["canonical"].dump() << "\n";
  }
  return kCertified;
}

int run_graph(const Common& c, const std::string& model, const std::string& format, std::ostream& out) {
  const auto entry = load_curve_file(c.file).find(c.label);
  const auto cert = certify(entry.curve, c.options());
  if (!cert.certified()) {
    std::cerr << c.label << ": " << verdict_text(cert) << "\n";
    return kNotCertified;
  }
  const DualGraph g = model == "stable" ? stable_graph(cert) : minimal_regular_graph(cert);
  if (format == "dot") {
    out << graph_dot(g, c.label + "_" + model);
  } else {
    json j = graph_json(g);
    j["schema_version"] = kSchemaVersion;
    j["label"] = c.label;
    j["model"] = model;
    j["orbits"] = orbit_json(orbit_report(g));
    out << j.dump(2) << "\n";
  }
  return kCertified;
}

int run_batch(const Common& c, unsigned jobs, std::ostream& out) {
  const auto file = load_curve_file(c.file);
  const std::size_t n = file.curves.size();
  std::vector<std::string> results(n);
  std::vector<int> codes(n, kError);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const auto& e = file.curves[i];
      try {
        const auto cert = certify(e.curve, c.options());
        const json j = {{"label", e.label}, {"certificate", certificate_json(cert)}};
        results[i] = c.json_out ? j.dump() : e.label + ": " + verdict_text(cert);
        codes[i] = exit_for(cert);
      } catch (const std::exception& ex) {
        results[i] = c.json_out ? json({{"label", e.label}, {"error", ex.what()}}).dump() : e.label + ": error: " + ex.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1U, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& r : results) out << r << "\n";
  if (std::find(codes.begin(), codes.end(), kError) != codes.end()) return kError;
  if (std::find(codes.begin(), codes.end(), kNotCertified) != codes.end()) return kNotCertified;
  return kCertified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify 2-adic hyperelliptic Weierstrass equations and describe their reduction"};
  app.require_subcommand(1);

  Common check_opts, analyze_opts, cluster_opts, graph_opts, batch_opts;
  auto* check = app.add_subcommand("check", "certify one curve");
  add_common(check, check_opts);
  auto* analyze = app.add_subcommand("analyze", "full report for one curve");
  add_common(analyze, analyze_opts);

  auto* cluster = app.add_subcommand("cluster", "cluster picture at a prime");
  add_common(cluster, cluster_opts);
  std::uint32_t prime = 2;
  bool shifted = false;
  cluster->add_option("--p", prime, "prime (2, or an odd prime listed in the curve file)");
  cluster->add_flag("--shifted", shifted, "lower p = 2 twin depths by v(4)");

  auto* graph = app.add_subcommand("graph", "dual graph of the stable or minimal regular model");
  add_common(graph, graph_opts);
  std::string model = "stable", format = "json";
  graph->add_option("--model", model)->check(CLI::IsMember({"stable", "minimal"}));
  graph->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));

  auto* batch = app.add_subcommand("batch", "certify every curve in a file");
  add_common(batch, batch_opts, false);
  unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
  batch->add_option("--jobs", jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kError;
  }

  try {
    if (*check) return run_check(check_opts, std::cout);
    if (*analyze) return run_analyze(analyze_opts, std::cout);
    if (*cluster) return run_cluster(cluster_opts, prime, shifted, std::cout);
    if (*graph) return run_graph(graph_opts, model, format, std::cout);
    if (*batch) return run_batch(batch_opts, jobs, std::cout);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const SchemaError& e) {
    std::cerr << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
