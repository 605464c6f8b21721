#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyp2/cluster_pictures.hpp"
#include "hyp2/star_certify.hpp"

namespace hyp2 {

struct CurveEntry {
  std::string label;
  CurveInput curve;
  /// Factorization of f into monic factors of degree <= 2, per odd prime.
  std::map<std::uint32_t, std::vector<IntPoly>> odd_primes;
};

struct CurveFile {
  int schema_version = 1;
  std::vector<CurveEntry> curves;

  /// Throws std::out_of_range naming the label.
  const CurveEntry& find(const std::string& label) const;
};

/// Schema violation in a curve file.
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error("schema error: " + what) {}
};

/// Parses and checks a curve file: f monic of even degree >= 6 and every
/// per-prime factorization multiplying back to f. Throws SchemaError.
CurveFile parse_curve_file(const nlohmann::json& j);
CurveFile load_curve_file(const std::string& path);
nlohmann::json curve_file_json(const CurveFile& file);

}  // namespace hyp2
