#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hmlab/claims.hpp"
#include "hmlab/rkc.hpp"

namespace hmlab {

inline constexpr int kScenarioSchemaVersion = 1;

struct GridOutput {
  std::string field;  // J, Lambda, lambda, D or lnJ
  std::string path;
};

/// A parsed scenario file. Exactly one of disk / ball is set.
struct ScenarioFile {
  std::string name;
  std::optional<DiskScenario> disk;
  std::optional<BallScenario> ball;
  std::vector<std::string> claims;  // empty: all claims of the scenario kind
  std::string report_path;
  std::vector<GridOutput> grids;
  std::string hash;  // FNV-1a of the canonical JSON text, 16 hex digits

  std::uint64_t seed() const;
  void set_seed(std::uint64_t seed);
};

/// Throws ParseError on malformed input (including unknown claim ids).
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::filesystem::path& path);

std::string fnv1a_hex(const std::string& bytes);

/// Options applied on top of the file.
struct RunOptions {
  std::optional<std::vector<std::string>> claims;
  std::optional<std::uint64_t> seed;
  double tolerance_scale = 1.0;
};

struct RunResult {
  std::vector<ClaimReport> reports;
  std::optional<Certificate> certificate;
  std::string report_json;  // serialized report, ends with a newline
  bool all_pass = true;
};

/// Runs the requested claims and serializes the report. No timestamps, so
/// identical inputs give identical bytes.
RunResult run_scenario(ScenarioFile file, const RunOptions& opts = {});

std::string report_to_json(const ClaimReport& r);

/// Values of a scalar field on the disk grid as CSV (header line with the
/// scenario hash, then r,theta,x,y,value rows). Throws UnknownField.
std::string grid_csv(const ScenarioFile& file, const std::string& field);
bool known_field(const std::string& field);

/// JSON for a homotopy trace.
std::string trace_to_json(const ScenarioFile& file, const HomotopyTrace& t);

/// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace hmlab
