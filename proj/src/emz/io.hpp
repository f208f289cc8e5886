#pragma once

#include <map>
#include <string>
#include <vector>

#include "emz/conversion.hpp"
#include "emz/prob_vec.hpp"

namespace emz {

inline constexpr const char* TOOL_VERSION = "0.1.0";

// Shortest decimal rendering that round-trips the exact double.
std::string format_double(double v);

// Probability vector files: a JSON array of decimals or a one-column CSV
// (one value per line, '#' comments and an optional header row skipped).
ProbVec parse_prob_vec_text(const std::string& text, norm_policy policy);
ProbVec load_prob_vec(const std::string& path, norm_policy policy);
std::string prob_vec_to_json(const ProbVec& p);
std::string prob_vec_to_csv(const ProbVec& p);

// Ensemble files: {"members": [{"weight": w, "state": [..]}, ...]}.
Ensemble parse_ensemble_text(const std::string& text, norm_policy policy);
Ensemble load_ensemble(const std::string& path, norm_policy policy);
std::string ensemble_to_json(const Ensemble& e);

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;  // insertion-ordered
  std::string tool_version = TOOL_VERSION;
  std::string timestamp_utc;
  std::vector<std::pair<std::string, std::string>> input_digests;
};

RunManifest make_manifest(const std::string& command);
std::string manifest_to_json(const RunManifest& m);

// FNV-1a 64 digest of a file's bytes, rendered as "fnv1a64:<hex>".
std::string file_digest(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::string utc_timestamp_now();

// Minimal CSV table round-trip support for the scan outputs.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;  // '#'-prefixed lines, manifest included
};
std::string csv_to_string(const CsvTable& t);
CsvTable parse_csv(const std::string& text);

}  // namespace emz
