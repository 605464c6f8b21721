#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sys/wait.h>

#include "curve_gen.hpp"
#include "hyp2/curve_file.hpp"
#include "hyp2/report.hpp"

using namespace hyp2;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCurves = std::string(HYP2_DATA_DIR) + "/curves.json";

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(HYP2_CLI) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json run_json(const std::string& args, int expect = 0) {
  const auto r = run(args + " --json");
  CHECK(r.code == expect);
  return json::parse(r.out);
}

fs::path temp_file(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("hyp2_test_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> depth_strings(const json& depths) {
  std::vector<std::string> out;
  for (const auto& d : depths) out.push_back(Val::rational(d["num"].get<long>(), d["den"].get<long>()).to_string());
  return out;
}

}  // namespace

TEST_CASE("curve file parsing") {
  const auto file = load_curve_file(kCurves);
  CHECK(file.curves.size() == 4);
  const auto& g = file.find("global");
  CHECK(g.curve.c == 1);
  CHECK(g.odd_primes.size() == 6);
  CHECK(g.curve.f == testgen::global_curve().f);
  CHECK(file.find("ex111").curve.f == testgen::ex111_curve().f);
  CHECK_THROWS_AS(file.find("missing"), std::out_of_range);

  // the writer's output parses back to the same data
  const auto again = parse_curve_file(json::parse(curve_file_json(file).dump()));
  REQUIRE(again.curves.size() == file.curves.size());
  for (std::size_t i = 0; i < file.curves.size(); ++i) {
    CHECK(again.curves[i].label == file.curves[i].label);
    CHECK(again.curves[i].curve.c == file.curves[i].curve.c);
    CHECK(again.curves[i].curve.f == file.curves[i].curve.f);
    CHECK(again.curves[i].odd_primes == file.curves[i].odd_primes);
  }
}

TEST_CASE("curve file schema errors") {
  auto bad = [](const char* text) { CHECK_THROWS_AS(parse_curve_file(json::parse(text)), SchemaError); };
  bad(R"({"curves": []})");
  bad(R"({"schema_version": 2, "curves": []})");
  bad(R"({"schema_version": 1})");
  bad(R"({"schema_version": 1, "curves": [{"label": "x", "c": 1, "f": [1, 0, 0, 0, 0, 1]}]})");
  bad(R"({"schema_version": 1, "curves": [{"label": "x", "c": 1, "f": [1, 0, 0, 0, 0, 0, 2]}]})");
  bad(R"({"schema_version": 1, "curves": [{"label": "x", "c": 0, "f": [1, 0, 0, 0, 0, 0, 1]}]})");
  bad(R"({"schema_version": 1, "curves": [{"label": "x", "c": "1.5", "f": [1, 0, 0, 0, 0, 0, 1]}]})");
  bad(R"({"schema_version": 1, "curves": [{"label": "x", "c": 1, "f": [1, 0, 0, 0, 0, 0, 1]},
                                          {"label": "x", "c": 1, "f": [1, 0, 0, 0, 0, 0, 1]}]})");
  bad(R"({"schema_version": 1, "curves": [{"label": "x", "c": 1, "f": [28, -232, 221, 66, -61, -2, 1],
          "odd_primes": [{"p": 7, "factors": [[-2, 1], [2, 1], [-1, 7, 1], [7, -9, 2]]}]}]})");
  bad(R"({"schema_version": 1, "curves": [{"label": "x", "c": 1, "f": [28, -232, 221, 66, -61, -2, 1],
          "odd_primes": [{"p": 9, "factors": [[-2, 1], [2, 1], [-1, 7, 1], [7, -9, 1]]}]}]})");
  bad(R"({"schema_version": 1, "curves": [{"label": "x", "c": 1, "f": [28, -232, 221, 66, -61, -2, 1],
          "odd_primes": [{"p": 7, "factors": [[-2, 1], [2, 1], [-1, 7, 1], [7, -9, 1], [1, 1]]}]}]})");

  const auto big = parse_curve_file(json::parse(
      R"({"schema_version": 1, "curves": [{"label": "x", "c": "-123456789012345678901",
          "f": [1, 0, 0, 0, 0, 0, 1]}]})"));
  CHECK(big.curves[0].curve.c == mpz_class("-123456789012345678901"));
  CHECK(curve_file_json(big)["curves"][0]["c"] == "-123456789012345678901");
}

TEST_CASE("report sections") {
  const auto cert = certify(testgen::ex111_curve());
  const auto j = analysis_json("ex111", cert);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["certificate"]["a"] == "1");
  CHECK(j["banner"] == "semistable: two rational components meeting in g+1 nodes");
  REQUIRE(j["nodes"].size() == 3);
  CHECK(j["two_torsion"].is_null());
  // Q mod 2 = x^3 + x^2 + x over the common field
  std::vector<int> q_bar;
  for (const auto& c : j["stable_model"]["q_bar"]) {
    CHECK(c[1] == 0);
    q_bar.push_back(c[0].get<int>());
  }
  CHECK(q_bar == std::vector<int>{0, 1, 1, 1});
  CHECK(j["stable_model"]["p_bar"].size() == 7);

  const auto dot = graph_dot(minimal_regular_graph(cert), "m");
  CHECK(dot.find("frobenius=\"v1\"") != std::string::npos);
  CHECK(dot.find("flip=") != std::string::npos);

  CHECK(to_json(Val::infinity())["num"].is_null());
  CHECK(to_json(Val::rational(5, 2)) == json({{"num", 5}, {"den", 2}}));
}

TEST_CASE("check command") {
  auto g = run_json("check " + kCurves + " global");
  CHECK(g["certificate"]["verdict"] == "StarStar");
  CHECK(depth_strings(g["certificate"]["depths"]) == std::vector<std::string>{"2", "3", "3"});

  auto e = run_json("check " + kCurves + " ex111");
  CHECK(e["certificate"]["verdict"] == "StarStar");
  CHECK(e["certificate"]["a"] == "1");

  auto f = run_json("check " + kCurves + " fails_disc", 2);
  CHECK(f["certificate"]["verdict"] == "Fail");
  CHECK(f["certificate"]["reason"] == "DiscCondition");

  const auto text = run("check " + kCurves + " fails_disc");
  CHECK(text.code == 2);
  CHECK(text.out.find("equation not of form (★★)") != std::string::npos);

  CHECK(run("check " + kCurves + " nosuch").code == 1);
  CHECK(run("check /nonexistent/curves.json global").code == 1);
  CHECK(run("check").code == 1);
  CHECK(run("check " + kCurves + " global --precision 2").code == 2);

  const auto odd = temp_file("odd.json", R"({"schema_version": 1, "curves": [{"label": "odd", "c": 1,
      "f": [1, 0, 0, 0, 0, 1]}]})");
  const auto r = run("check " + odd.string() + " odd");
  CHECK(r.code == 1);
  fs::remove(odd);
}

TEST_CASE("analyze command") {
  auto e = run_json("analyze " + kCurves + " ex111");
  const auto& ns = e["nodes"];
  REQUIRE(ns.size() == 3);
  CHECK(ns[0]["thickness"] == 1);
  CHECK(ns[0]["split"] == false);
  CHECK(ns[1]["thickness"] == 2);
  CHECK(ns[2]["thickness"] == 2);
  CHECK(e["orbits"]["minimal_regular"]["vertices"] == json({2, 2}));
  CHECK(e["orbits"]["stable"]["vertices"] == json({2}));

  auto g = run_json("analyze " + kCurves + " global");
  CHECK(g["stable_graph"]["vertices"].size() == 1);
  CHECK(g["stable_graph"]["edges"].size() == 2);
  for (const auto& edge : g["stable_graph"]["edges"]) {
    CHECK(edge["a"] == 0);
    CHECK(edge["b"] == 0);
  }

  auto s = run_json("analyze " + kCurves + " star_g2");
  CHECK(s["certificate"]["verdict"] == "Star");
  CHECK(s["banner"] == "good ordinary reduction");
  CHECK(s["nodes"].empty());
  CHECK(s["two_torsion"]["kernel"] == 2);

  auto f = run_json("analyze " + kCurves + " fails_disc", 2);
  CHECK(f["certificate"]["reason"] == "DiscCondition");
}

TEST_CASE("cluster command") {
  auto twins = [](const json& j) {
    std::vector<std::string> out;
    for (const auto& c : j["canonical"]["top"]["children"]) {
      CHECK(c["leaves"] == 2);
      out.push_back(Val::rational(c["depth"]["num"].get<long>(), c["depth"]["den"].get<long>()).to_string());
    }
    return out;
  };
  CHECK(twins(run_json("cluster " + kCurves + " global --p 7")) == std::vector<std::string>{"1"});
  CHECK(twins(run_json("cluster " + kCurves + " global --p 53")) == std::vector<std::string>{"1/2", "1/2"});

  std::ifstream stored(std::string(HYP2_DATA_DIR) + "/global_p11_picture.json");
  const json p11 = json::parse(stored);
  CHECK(run_json("cluster " + kCurves + " global --p 2 --shifted")["canonical"] == p11);
  CHECK(run_json("cluster " + kCurves + " global --p 11")["canonical"] == p11);
  CHECK(run_json("cluster " + kCurves + " global --p 2")["canonical"] != p11);

  const auto ascii = run("cluster " + kCurves + " global --p 53");
  CHECK(ascii.out.rfind("((* *)_1/2 (* *)_1/2 * *)_0\n", 0) == 0);

  CHECK(run("cluster " + kCurves + " global --p 13").code == 1);
  CHECK(run("cluster " + kCurves + " ex111 --p 7").code == 1);
  CHECK(run("cluster " + kCurves + " global --p 7 --shifted").code == 1);
  CHECK(run("cluster " + kCurves + " fails_disc --p 2").code == 2);
}

TEST_CASE("graph command") {
  const auto dot = run("graph " + kCurves + " ex111 --model minimal --format dot");
  CHECK(dot.code == 0);
  std::size_t vertices = 0, edges = 0;
  std::istringstream lines(dot.out);
  for (std::string line; std::getline(lines, line);) {
    if (line.find(" -- ") != std::string::npos) {
      ++edges;
    } else if (line.find("frobenius=") != std::string::npos) {
      ++vertices;
    }
  }
  CHECK(vertices == 4);
  CHECK(edges == 5);

  const auto g = run_json("graph " + kCurves + " global --model stable --format json");
  CHECK(g["cycle_rank"] == 2);
  // Betti number recomputed from the emitted lists
  CHECK(g["edges"].size() - g["vertices"].size() + 1 == 2);

  const auto s = run_json("graph " + kCurves + " star_g2 --model minimal");
  CHECK(s["vertices"].size() == 1);
  CHECK(s["edges"].empty());
  CHECK(s["vertices"][0]["genus"] == 2);

  CHECK(run("graph " + kCurves + " global --model other").code == 1);
  CHECK(run("graph " + kCurves + " fails_disc").code == 2);
}

TEST_CASE("batch output ignores order and parallelism") {
  const auto file = load_curve_file(kCurves);
  CurveFile shuffled = file;
  std::reverse(shuffled.curves.begin(), shuffled.curves.end());
  const auto path = temp_file("reversed.json", curve_file_json(shuffled).dump());

  auto by_label = [](const std::string& out) {
    std::map<std::string, std::string> m;
    std::istringstream lines(out);
    for (std::string line; std::getline(lines, line);) m[json::parse(line)["label"]] = line;
    return m;
  };
  const auto one = run("batch " + kCurves + " --jobs 1 --json");
  const auto four = run("batch " + kCurves + " --jobs 4 --json");
  const auto rev = run("batch " + path.string() + " --jobs 3 --json");
  CHECK(one.code == 2);
  CHECK(one.out == four.out);
  CHECK(by_label(one.out) == by_label(rev.out));
  CHECK(by_label(one.out).size() == 4);
  // input order is kept
  CHECK(one.out.rfind("{\"certificate\"", 0) == 0);
  CHECK(json::parse(one.out.substr(0, one.out.find('\n')))["label"] == "global");
  fs::remove(path);

  const auto good = temp_file("good.json", R"({"schema_version": 1, "curves": [
      {"label": "a", "c": 1, "f": [-84, 24, 41, -14, -9, 2, 1]}]})");
  CHECK(run("batch " + good.string()).code == 0);
  fs::remove(good);
}
