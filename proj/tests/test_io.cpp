#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "emz/io.hpp"

using emz::norm_policy;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path);
  f << content;
  f.close();
  return path.string();
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    double v = u(rng);
    CHECK(std::stod(emz::format_double(v)) == v);
  }
  for (double v : {0.0, 1.0, 1.0 / 3.0, 0.1, 1e-300, 6.25e-2}) {
    CHECK(std::stod(emz::format_double(v)) == v);
  }
  CHECK(emz::format_double(0.5) == "0.5");
  CHECK(emz::format_double(1.0) == "1");
}

TEST_CASE("probability vector text formats") {
  auto j = emz::parse_prob_vec_text("[0.2, 0.5, 0.3]", norm_policy::strict);
  CHECK(j.dim() == 3);
  CHECK(j.entries()[0] == 0.5);  // construction sorts

  auto c = emz::parse_prob_vec_text("p\n0.2\n# note\n0.5\n\n0.3\n", norm_policy::strict);
  CHECK(c.dim() == 3);
  CHECK(c.entries() == j.entries());

  CHECK_THROWS_AS(emz::parse_prob_vec_text("", norm_policy::strict), emz::validation_error);
  CHECK_THROWS_AS(emz::parse_prob_vec_text("[0.5, 0.5] x", norm_policy::strict),
                  emz::validation_error);
  CHECK_THROWS_AS(emz::parse_prob_vec_text("[0.5, \"a\"]", norm_policy::strict),
                  emz::validation_error);
  CHECK_THROWS_AS(emz::parse_prob_vec_text("{\"a\": 1}", norm_policy::strict),
                  emz::validation_error);
  CHECK_THROWS_AS(emz::parse_prob_vec_text("0.5\n0.4x\n0.1\n", norm_policy::strict),
                  emz::validation_error);
  // strict vs renormalize on an unnormalized list
  CHECK_THROWS_AS(emz::parse_prob_vec_text("[2, 1, 1]", norm_policy::strict),
                  emz::validation_error);
  auto r = emz::parse_prob_vec_text("[2, 1, 1]", norm_policy::renormalize);
  CHECK(r.entries()[0] == doctest::Approx(0.5));
}

TEST_CASE("serializers round-trip through the parsers") {
  std::mt19937_64 rng(11);
  std::exponential_distribution<double> e(1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> raw(5);
    double s = 0.0;
    for (auto& x : raw) {
      x = e(rng);
      s += x;
    }
    for (auto& x : raw) x /= s;
    auto p = emz::ProbVec::make(raw, norm_policy::renormalize);
    // strict parsing passes the exact serialized doubles through
    auto back_j = emz::parse_prob_vec_text(emz::prob_vec_to_json(p), norm_policy::strict);
    auto back_c = emz::parse_prob_vec_text(emz::prob_vec_to_csv(p), norm_policy::strict);
    CHECK(back_j.entries() == p.entries());
    CHECK(back_c.entries() == p.entries());
  }

  std::string path = temp_file("emz_vec_roundtrip.json", "[0.5, 0.25, 0.25]");
  auto loaded = emz::load_prob_vec(path, norm_policy::strict);
  CHECK(loaded.dim() == 3);
  CHECK_THROWS_AS(emz::load_prob_vec("/nonexistent/vec.json", norm_policy::strict),
                  emz::validation_error);
}

TEST_CASE("ensemble JSON") {
  std::string text =
      "{\"members\": [{\"weight\": 0.5, \"state\": [1.0]},"
      " {\"weight\": 0.5, \"state\": [0.5, 0.5]}]}";
  auto e = emz::parse_ensemble_text(text, norm_policy::strict);
  REQUIRE(e.weights.size() == 2);
  CHECK(e.weights[0] == 0.5);
  CHECK(e.states[1].dim() == 2);

  auto back = emz::parse_ensemble_text(emz::ensemble_to_json(e), norm_policy::strict);
  CHECK(back.weights == e.weights);
  CHECK(back.states[0].entries() == e.states[0].entries());

  CHECK_THROWS_AS(emz::parse_ensemble_text("[1, 2]", norm_policy::strict),
                  emz::validation_error);
  CHECK_THROWS_AS(emz::parse_ensemble_text("{\"members\": [{\"state\": [1.0]}]}",
                                           norm_policy::strict),
                  emz::validation_error);
  CHECK_THROWS_AS(
      emz::parse_ensemble_text("{\"members\": [{\"weight\": 0.9, \"state\": [1.0]}]}",
                               norm_policy::strict),
      emz::validation_error);
}

TEST_CASE("manifest serialization") {
  auto m = emz::make_manifest("dstar");
  m.parameters.push_back({"input", "a.json"});
  m.parameters.push_back({"oracle", "lp"});
  m.input_digests.push_back({"a.json", "fnv1a64:deadbeef"});
  std::string s = emz::manifest_to_json(m);

  CHECK(s.find("\"command\":\"dstar\"") != std::string::npos);
  CHECK(s.find("\"tool_version\":\"0.1.0\"") != std::string::npos);
  // key order is fixed: command, parameters, tool_version, timestamp, digests
  auto pos_cmd = s.find("\"command\"");
  auto pos_par = s.find("\"parameters\"");
  auto pos_ver = s.find("\"tool_version\"");
  auto pos_ts = s.find("\"timestamp_utc\"");
  auto pos_dig = s.find("\"input_digests\"");
  REQUIRE(pos_dig != std::string::npos);
  CHECK(pos_cmd < pos_par);
  CHECK(pos_par < pos_ver);
  CHECK(pos_ver < pos_ts);
  CHECK(pos_ts < pos_dig);
  // parameter insertion order survives
  CHECK(s.find("\"input\"") < s.find("\"oracle\""));
}

TEST_CASE("file digests") {
  std::string p1 = temp_file("emz_digest_a.txt", "hello\n");
  std::string p2 = temp_file("emz_digest_b.txt", "hello!\n");
  std::string d1 = emz::file_digest(p1);
  CHECK(d1.rfind("fnv1a64:", 0) == 0);
  CHECK(d1.size() == 8 + 16);
  CHECK(emz::file_digest(p1) == d1);
  CHECK(emz::file_digest(p2) != d1);
  CHECK_THROWS_AS(emz::file_digest("/nonexistent/file"), emz::validation_error);
}

TEST_CASE("csv table round-trip") {
  emz::CsvTable t;
  t.comments = {"# manifest: {\"command\":\"embezzle-scan\"}"};
  t.header = {"n", "d_star", "bound"};
  t.rows = {{"10", "0.5", "0.578"}, {"100", "0.25", "nan"}};
  std::string s = emz::csv_to_string(t);
  auto back = emz::parse_csv(s);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  REQUIRE(back.comments.size() == 1);
  CHECK(back.comments[0] == t.comments[0]);
  CHECK(emz::csv_to_string(back) == s);
}

TEST_CASE("utc timestamps are shaped like ISO-8601 Z") {
  std::string ts = emz::utc_timestamp_now();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts[16] == ':');
  CHECK(ts[19] == 'Z');
  CHECK(ts.substr(0, 2) == "20");
}

TEST_CASE("read and write files") {
  auto path = (std::filesystem::temp_directory_path() / "emz_rw.txt").string();
  emz::write_file(path, "line one\nline two\n");
  CHECK(emz::read_file(path) == "line one\nline two\n");
  CHECK_THROWS_AS(emz::read_file("/nonexistent/file"), emz::validation_error);
}
