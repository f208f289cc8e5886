#include "emz/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace emz {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write file: " + path);
  out << content;
  if (!out) throw validation_error("short write to file: " + path);
}

ProbVec parse_prob_vec_text(const std::string& text, norm_policy policy) {
  // Sniff JSON by the first non-space byte.
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i == std::string::npos) throw validation_error("empty probability vector input");
  std::vector<double> vals;
  if (text[i] == '[') {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array())
      throw validation_error("probability vector JSON must be an array of numbers");
    for (const auto& v : j) {
      if (!v.is_number())
        throw validation_error("probability vector JSON must contain only numbers");
      vals.push_back(v.get<double>());
    }
  } else {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      try {
        std::size_t used = 0;
        double v = std::stod(line, &used);
        if (used != line.size()) throw std::invalid_argument("trailing characters");
        vals.push_back(v);
      } catch (const std::exception&) {
        if (vals.empty() && lineno == 1) continue;  // header row
        throw validation_error("cannot parse numeric value on line " + std::to_string(lineno));
      }
    }
  }
  return ProbVec::make(std::move(vals), policy);
}

ProbVec load_prob_vec(const std::string& path, norm_policy policy) {
  return parse_prob_vec_text(read_file(path), policy);
}

std::string prob_vec_to_json(const ProbVec& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) out += ", ";
    out += format_double(p.entries()[i]);
  }
  out += "]";
  return out;
}

std::string prob_vec_to_csv(const ProbVec& p) {
  std::string out;
  for (double v : p.entries()) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

Ensemble parse_ensemble_text(const std::string& text, norm_policy policy) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("members") || !j["members"].is_array())
    throw validation_error("ensemble JSON must be an object with a \"members\" array");
  std::vector<double> weights;
  std::vector<ProbVec> states;
  std::size_t idx = 0;
  for (const auto& member : j["members"]) {
    ++idx;
    if (!member.is_object() || !member.contains("weight") || !member.contains("state") ||
        !member["weight"].is_number() || !member["state"].is_array())
      throw validation_error("ensemble member " + std::to_string(idx) +
                             " must be {\"weight\": w, \"state\": [..]}");
    weights.push_back(member["weight"].get<double>());
    std::vector<double> vals;
    for (const auto& v : member["state"]) {
      if (!v.is_number())
        throw validation_error("ensemble member " + std::to_string(idx) +
                               " state must contain only numbers");
      vals.push_back(v.get<double>());
    }
    states.push_back(ProbVec::make(std::move(vals), policy));
  }
  return make_ensemble(std::move(weights), std::move(states));
}

Ensemble load_ensemble(const std::string& path, norm_policy policy) {
  return parse_ensemble_text(read_file(path), policy);
}

std::string ensemble_to_json(const Ensemble& e) {
  std::string out = "{\"members\": [";
  for (std::size_t i = 0; i < e.weights.size(); ++i) {
    if (i) out += ", ";
    out += "{\"weight\": " + format_double(e.weights[i]) +
           ", \"state\": " + prob_vec_to_json(e.states[i]) + "}";
  }
  out += "]}";
  return out;
}

std::string utc_timestamp_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

RunManifest make_manifest(const std::string& command) {
  RunManifest m;
  m.command = command;
  m.timestamp_utc = utc_timestamp_now();
  return m;
}

std::string manifest_to_json(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  j["parameters"] = params;
  j["tool_version"] = m.tool_version;
  j["timestamp_utc"] = m.timestamp_utc;
  ordered_json digests = ordered_json::object();
  for (const auto& [k, v] : m.input_digests) digests[k] = v;
  j["input_digests"] = digests;
  return j.dump();
}

std::string file_digest(const std::string& path) {
  std::string bytes = read_file(path);
  std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string csv_to_string(const CsvTable& t) {
  std::string out;
  for (const auto& c : t.comments) {
    out += c;
    out += '\n';
  }
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line);
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!header_seen) {
      t.header = std::move(fields);
      header_seen = true;
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

}  // namespace emz
