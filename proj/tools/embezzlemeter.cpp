#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "embezzlemeter.h"
#include "json.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

struct tool_error {
  int exit_code;
  std::string message;
};

int status_to_exit(int status) { return status == EMZ_ERR_VALIDATION ? 2 : 3; }

void check(int status, const char* err) {
  if (status != EMZ_OK) throw tool_error{status_to_exit(status), err};
}

struct vec_handle {
  emz_vec* p = nullptr;
  vec_handle() = default;
  explicit vec_handle(emz_vec* v) : p(v) {}
  vec_handle(const vec_handle&) = delete;
  vec_handle& operator=(const vec_handle&) = delete;
  vec_handle(vec_handle&& o) noexcept : p(o.p) { o.p = nullptr; }
  vec_handle& operator=(vec_handle&& o) noexcept {
    std::swap(p, o.p);
    return *this;
  }
  ~vec_handle() { emz_vec_free(p); }
};

struct family_handle {
  emz_family* p = nullptr;
  family_handle() = default;
  explicit family_handle(emz_family* f) : p(f) {}
  family_handle(const family_handle&) = delete;
  family_handle& operator=(const family_handle&) = delete;
  family_handle(family_handle&& o) noexcept : p(o.p) { o.p = nullptr; }
  family_handle& operator=(family_handle&& o) noexcept {
    std::swap(p, o.p);
    return *this;
  }
  ~family_handle() { emz_family_free(p); }
};

vec_handle load_vec(const std::string& path, bool renormalize) {
  emz_vec* v = nullptr;
  char err[512] = {0};
  check(emz_vec_load(path.c_str(), renormalize ? 1 : 0, &v, err, sizeof err), err);
  return vec_handle{v};
}

family_handle parse_family(const std::string& spec) {
  emz_family* f = nullptr;
  char err[512] = {0};
  check(emz_family_parse(spec.c_str(), &f, err, sizeof err), err);
  return family_handle{f};
}

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

unsigned thread_cap() {
  if (const char* env = std::getenv("EMBEZZLEMETER_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(0..count-1) on up to thread_cap() workers. fn must not throw;
// failures belong in the per-index result slots.
template <typename Fn>
void parallel_indexed(size_t count, Fn fn) {
  unsigned workers = static_cast<unsigned>(std::min<size_t>(thread_cap(), count));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("junk");
    return v;
  } catch (const std::exception&) {
    throw tool_error{2, "cannot parse " + what + " from '" + s + "'"};
  }
}

// "start:step:stop"; the step's sign is taken from the sweep direction.
std::vector<double> parse_alphas(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.size() != 3) throw tool_error{2, "--alphas expects start:step:stop"};
  double start = parse_number(parts[0], "alpha start");
  double step = parse_number(parts[1], "alpha step");
  double stop = parse_number(parts[2], "alpha stop");
  if (start == stop) return {start};
  if (step == 0.0) throw tool_error{2, "--alphas step must be nonzero for a range"};
  double dir = stop > start ? 1.0 : -1.0;
  step = dir * std::fabs(step);
  std::vector<double> out;
  long long count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count < 1 || count > 1000000) throw tool_error{2, "--alphas range produces no usable grid"};
  for (long long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

// "geometric:start,factor,count" or "list:v1,v2,...", strictly increasing.
std::vector<double> parse_schedule_values(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw tool_error{2, "--schedule expects geometric:start,factor,count or list:v1,v2,..."};
  std::string head = spec.substr(0, colon);
  auto parts = split(spec.substr(colon + 1), ',');
  std::vector<double> out;
  if (head == "geometric") {
    if (parts.size() != 3) throw tool_error{2, "geometric schedule expects start,factor,count"};
    double start = parse_number(parts[0], "schedule start");
    double factor = parse_number(parts[1], "schedule factor");
    double count = parse_number(parts[2], "schedule count");
    if (start < 1.0 || factor <= 1.0 || count < 1.0 || count > 100000.0 ||
        count != std::floor(count))
      throw tool_error{2, "geometric schedule needs start >= 1, factor > 1, integer count >= 1"};
    double v = start;
    for (long long i = 0; i < static_cast<long long>(count); ++i, v *= factor) out.push_back(v);
  } else if (head == "list") {
    for (const auto& p : parts) out.push_back(parse_number(p, "schedule value"));
    for (size_t i = 1; i < out.size(); ++i)
      if (out[i] <= out[i - 1]) throw tool_error{2, "schedule must be strictly increasing"};
  } else {
    throw tool_error{2, "unknown schedule kind '" + head + "'"};
  }
  if (out.empty()) throw tool_error{2, "schedule is empty"};
  return out;
}

std::vector<long long> parse_n_schedule(const std::string& spec) {
  std::vector<long long> out;
  for (double v : parse_schedule_values(spec)) {
    if (v < 1.0 || v > 4e18 || v != std::floor(v)) {
      // geometric schedules may land between integers; round and dedupe
      long long n = static_cast<long long>(std::llround(v));
      if (n < 1) throw tool_error{2, "schedule entries must be positive integers"};
      if (out.empty() || n > out.back()) out.push_back(n);
    } else {
      long long n = static_cast<long long>(v);
      if (out.empty() || n > out.back()) out.push_back(n);
    }
  }
  if (out.empty()) throw tool_error{2, "schedule is empty"};
  return out;
}

std::string digest_of(const std::string& path) {
  char out[64] = {0};
  char err[512] = {0};
  check(emz_file_digest(path.c_str(), out, sizeof out, err, sizeof err), err);
  return out;
}

using kv_list = std::vector<std::pair<std::string, std::string>>;

ordered_json make_manifest(const std::string& command, const kv_list& params,
                           const kv_list& input_files) {
  ordered_json m;
  m["command"] = command;
  ordered_json p = ordered_json::object();
  for (const auto& [k, v] : params) p[k] = v;
  m["parameters"] = p;
  m["tool_version"] = emz_version();
  m["timestamp_utc"] = utc_now();
  ordered_json d = ordered_json::object();
  for (const auto& [k, path] : input_files) d[k] = digest_of(path);
  m["input_digests"] = d;
  return m;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw tool_error{2, "cannot open output file '" + path + "'"};
  f << content;
  if (!f) throw tool_error{2, "cannot write output file '" + path + "'"};
}

void emit_json(const ordered_json& body, const std::string& out_path) {
  std::string text = body.dump(2);
  text.push_back('\n');
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

// CSV outputs carry the manifest twice over: a '#' comment line inside the
// file and, when writing to a path, a .manifest.json sidecar.
void emit_csv(const ordered_json& manifest, const std::string& header,
              const std::vector<std::string>& rows, const std::string& out_path) {
  std::string text = "# manifest: " + manifest.dump() + "\n" + header + "\n";
  for (const auto& r : rows) {
    text += r;
    text.push_back('\n');
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
    std::string side = manifest.dump(2);
    side.push_back('\n');
    write_text_file(out_path + ".manifest.json", side);
  }
}

std::optional<double> family_power_exponent(const std::string& spec) {
  if (spec == "vdh") return -1.0;
  if (spec.rfind("power:", 0) == 0) return parse_number(spec.substr(6), "power exponent");
  return std::nullopt;
}

// ---- subcommands ----

struct dstar_args {
  std::string psi, phi, oracle, out;
  bool purified = false;
  bool renormalize = false;
};

int cmd_dstar(const dstar_args& a) {
  vec_handle psi = load_vec(a.psi, a.renormalize);
  vec_handle phi = load_vec(a.phi, a.renormalize);
  char err[512] = {0};
  emz_conversion_report rep{};
  int status;
  if (a.purified) {
    status = emz_star_distance_purified(psi.p, phi.p, 0.0, 0, &rep, err, sizeof err);
    if (status != EMZ_OK && status != EMZ_ERR_NUMERIC) throw tool_error{status_to_exit(status), err};
  } else {
    status = emz_star_distance(psi.p, phi.p, &rep, err, sizeof err);
    check(status, err);
  }

  kv_list params{{"psi", a.psi}, {"phi", a.phi}};
  if (a.purified) params.emplace_back("purified", "true");
  if (!a.oracle.empty()) params.emplace_back("oracle", a.oracle);
  if (a.renormalize) params.emplace_back("renormalize", "true");
  ordered_json body;
  body["manifest"] = make_manifest("dstar", params, {{"psi", a.psi}, {"phi", a.phi}});
  body["d_star"] = rep.d_star;
  body["argmax_k"] = rep.argmax_k;
  body["sandwich_lo"] = rep.sandwich_lo;
  body["sandwich_hi"] = rep.sandwich_hi;
  body["discrimination_bound"] = rep.discrimination_bound;
  body["discrimination_basis"] = "d_star";
  if (a.purified) {
    body["d_star_purified"] = rep.d_star_purified;
    body["purified_converged"] = rep.purified_converged != 0;
  }
  if (!a.oracle.empty()) {
    int method;
    if (a.oracle == "grid") {
      method = 0;
    } else if (a.oracle == "lp") {
      method = 1;
    } else {
      throw tool_error{2, "--oracle expects grid or lp"};
    }
    double val = 0.0;
    char oerr[512] = {0};
    check(emz_oracle_min_l1(psi.p, phi.p, method, 0, &val, oerr, sizeof oerr), oerr);
    body["oracle_min_l1"] = val;
    body["oracle_method"] = a.oracle;
  }
  emit_json(body, a.out);
  if (status == EMZ_ERR_NUMERIC) {
    std::cerr << "error: " << err << "\n";
    return 3;
  }
  return 0;
}

struct nielsen_args {
  std::string psi, phi, out;
  bool renormalize = false;
};

int cmd_nielsen(const nielsen_args& a) {
  vec_handle psi = load_vec(a.psi, a.renormalize);
  vec_handle phi = load_vec(a.phi, a.renormalize);
  int conv = 0;
  emz_nielsen_convertible(psi.p, phi.p, &conv);
  kv_list params{{"psi", a.psi}, {"phi", a.phi}};
  if (a.renormalize) params.emplace_back("renormalize", "true");
  ordered_json body;
  body["manifest"] = make_manifest("nielsen", params, {{"psi", a.psi}, {"phi", a.phi}});
  body["convertible"] = conv != 0;
  emit_json(body, a.out);
  return 0;
}

struct ensemble_args {
  std::string psi, ensemble, out;
  bool renormalize = false;
};

int cmd_ensemble_check(const ensemble_args& a) {
  vec_handle psi = load_vec(a.psi, a.renormalize);
  int conv = 0;
  long long worst_k = 0;
  double margin = 0.0;
  char err[512] = {0};
  check(emz_ensemble_check(psi.p, a.ensemble.c_str(), a.renormalize ? 1 : 0, &conv, &worst_k,
                           &margin, err, sizeof err),
        err);
  kv_list params{{"psi", a.psi}, {"ensemble", a.ensemble}};
  if (a.renormalize) params.emplace_back("renormalize", "true");
  ordered_json body;
  body["manifest"] =
      make_manifest("ensemble-check", params, {{"psi", a.psi}, {"ensemble", a.ensemble}});
  body["convertible"] = conv != 0;
  body["worst_k"] = worst_k;
  body["margin"] = margin;
  emit_json(body, a.out);
  return 0;
}

struct scan_args {
  std::string family, schedule, out;
  long long m = 2;
};

int cmd_embezzle_scan(const scan_args& a) {
  family_handle fam = parse_family(a.family);
  std::vector<long long> ns = parse_n_schedule(a.schedule);
  if (a.m < 2) throw tool_error{2, "--m must be at least 2"};

  struct item {
    int status = EMZ_OK;
    std::string error;
    emz_embezzle_row row{};
  };
  std::vector<item> items(ns.size());
  parallel_indexed(ns.size(), [&](size_t i) {
    char err[512] = {0};
    items[i].status = emz_family_evaluate(fam.p, ns[i], a.m, &items[i].row, err, sizeof err);
    if (items[i].status != EMZ_OK) items[i].error = err;
  });
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i].status != EMZ_OK)
      throw tool_error{status_to_exit(items[i].status),
                       "n=" + std::to_string(ns[i]) + ": " + items[i].error};
  }

  kv_list params{{"family", a.family},
                 {"m", std::to_string(a.m)},
                 {"schedule", a.schedule}};
  kv_list inputs;
  if (a.family.rfind("custom:", 0) == 0) inputs.emplace_back("family_csv", a.family.substr(7));
  ordered_json manifest = make_manifest("embezzle-scan", params, inputs);

  std::vector<std::string> rows;
  rows.reserve(items.size());
  for (const auto& it : items) {
    const emz_embezzle_row& r = it.row;
    rows.push_back(std::to_string(r.n) + "," + fmt_double(r.d_star) + "," +
                   fmt_double(r.criterion) + "," + fmt_double(r.p1) + "," +
                   (r.has_bound ? fmt_double(r.bound) : std::string("nan")));
  }
  emit_csv(manifest, "n,d_star,criterion,p1,bound", rows, a.out);
  return 0;
}

struct limit_args {
  std::string family, schedule, out;
  long long m = 2;
  bool numeric = false;
};

int cmd_family_limit(const limit_args& a) {
  family_handle fam = parse_family(a.family);
  if (a.m < 2) throw tool_error{2, "--m must be at least 2"};

  kv_list params{{"family", a.family}, {"m", std::to_string(a.m)}};
  if (a.numeric) params.emplace_back("numeric", "true");
  if (!a.schedule.empty()) params.emplace_back("schedule", a.schedule);
  kv_list inputs;
  if (a.family.rfind("custom:", 0) == 0) inputs.emplace_back("family_csv", a.family.substr(7));
  ordered_json body;
  body["manifest"] = make_manifest("family-limit", params, inputs);
  body["family"] = a.family;
  body["m"] = a.m;

  if (auto alpha = family_power_exponent(a.family)) {
    emz_power_limits lim{};
    char err[512] = {0};
    check(emz_power_limit(*alpha, a.m, &lim, err, sizeof err), err);
    ordered_json analytic;
    analytic["alpha"] = *alpha;
    if (lim.has_limit)
      analytic["limit"] = lim.limit;
    else
      analytic["limit"] = nullptr;
    analytic["lower"] = lim.lower;
    analytic["upper"] = lim.upper;
    body["analytic"] = analytic;
  } else {
    body["analytic"] = nullptr;
  }

  if (a.numeric) {
    std::vector<double> ys;
    if (a.schedule.empty()) {
      double y = 1000.0;
      for (int j = 0; j <= 14; ++j, y *= 2.0) ys.push_back(y);
    } else {
      ys = parse_schedule_values(a.schedule);
    }
    struct item {
      int status = EMZ_OK;
      std::string error;
      double m_value = 0.0, maximizer_a = 0.0;
    };
    std::vector<item> items(ys.size());
    parallel_indexed(ys.size(), [&](size_t i) {
      char err[512] = {0};
      items[i].status = emz_integral_asymptotics(fam.p, a.m, ys[i], 0.0, &items[i].m_value,
                                                 &items[i].maximizer_a, err, sizeof err);
      if (items[i].status != EMZ_OK) items[i].error = err;
    });
    for (size_t i = 0; i < items.size(); ++i) {
      if (items[i].status != EMZ_OK)
        throw tool_error{status_to_exit(items[i].status),
                         "y=" + fmt_double(ys[i]) + ": " + items[i].error};
    }
    ordered_json numeric;
    ordered_json points = ordered_json::array();
    for (size_t i = 0; i < ys.size(); ++i) {
      ordered_json pt;
      pt["y"] = ys[i];
      pt["m_value"] = items[i].m_value;
      pt["maximizer_a"] = items[i].maximizer_a;
      points.push_back(pt);
    }
    numeric["points"] = points;
    // Existence of lim M(y) is not decided here; report the tail band.
    size_t tail_start = ys.size() / 2;
    double lo = items[tail_start].m_value, hi = items[tail_start].m_value;
    for (size_t i = tail_start; i < items.size(); ++i) {
      lo = std::min(lo, items[i].m_value);
      hi = std::max(hi, items[i].m_value);
    }
    numeric["tail_inf"] = lo;
    numeric["tail_sup"] = hi;
    int convergent = 0;
    char err[512] = {0};
    check(emz_divergence_precheck(fam.p, &convergent, err, sizeof err), err);
    ordered_json warnings = ordered_json::array();
    if (convergent)
      warnings.push_back("normalizer looks convergent; the family cannot embezzle");
    numeric["warnings"] = warnings;
    body["numeric"] = numeric;
  } else {
    body["numeric"] = nullptr;
  }
  emit_json(body, a.out);
  return 0;
}

struct figure1_args {
  std::string alphas = "-3:0.1:3";
  std::string out;
  long long m = 2;
  long long n1 = 1000000;
  long long n2 = 10000000;
};

int cmd_figure1(const figure1_args& a) {
  if (a.m < 2) throw tool_error{2, "--m must be at least 2"};
  if (a.n1 < 1 || a.n2 <= a.n1) throw tool_error{2, "--n1/--n2 must satisfy 1 <= n1 < n2"};
  std::vector<double> alphas = parse_alphas(a.alphas);

  struct item {
    int status = EMZ_OK;
    std::string error;
    emz_power_limits lim{};
    double d1 = 0.0, d2 = 0.0;
  };
  std::vector<item> items(alphas.size());
  parallel_indexed(alphas.size(), [&](size_t i) {
    item& it = items[i];
    char err[512] = {0};
    it.status = emz_power_limit(alphas[i], a.m, &it.lim, err, sizeof err);
    if (it.status != EMZ_OK) {
      it.error = err;
      return;
    }
    emz_family* fam = nullptr;
    it.status = emz_family_parse(("power:" + fmt_double(alphas[i])).c_str(), &fam, err, sizeof err);
    if (it.status != EMZ_OK) {
      it.error = err;
      return;
    }
    emz_embezzle_row row{};
    it.status = emz_family_evaluate(fam, a.n1, a.m, &row, err, sizeof err);
    if (it.status == EMZ_OK) {
      it.d1 = row.d_star;
      it.status = emz_family_evaluate(fam, a.n2, a.m, &row, err, sizeof err);
      it.d2 = row.d_star;
    }
    if (it.status != EMZ_OK) it.error = err;
    emz_family_free(fam);
  });
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i].status != EMZ_OK)
      throw tool_error{status_to_exit(items[i].status),
                       "alpha=" + fmt_double(alphas[i]) + ": " + items[i].error};
  }

  kv_list params{{"m", std::to_string(a.m)},
                 {"alphas", a.alphas},
                 {"n1", std::to_string(a.n1)},
                 {"n2", std::to_string(a.n2)}};
  ordered_json manifest = make_manifest("figure1", params, {});

  std::vector<std::string> rows;
  rows.reserve(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    const item& it = items[i];
    rows.push_back(fmt_double(alphas[i]) + "," +
                   (it.lim.has_limit ? fmt_double(it.lim.limit) : std::string("nan")) + "," +
                   fmt_double(it.lim.lower) + "," + fmt_double(it.lim.upper) + "," +
                   fmt_double(it.d1) + "," + fmt_double(it.d2));
  }
  std::string header = "alpha,limit_or_nan,lower,upper,finite_n_" + std::to_string(a.n1) +
                       ",finite_n_" + std::to_string(a.n2);
  emit_csv(manifest, header, rows, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact LOCC pure-state convertibility, star conversion distance, and "
               "embezzling-family diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(emz_version()));

  dstar_args da;
  auto* dstar = app.add_subcommand("dstar", "Star conversion distance between two states");
  dstar->add_option("--psi", da.psi, "Source state file (JSON array or one-column CSV)")
      ->required();
  dstar->add_option("--phi", da.phi, "Target state file")->required();
  dstar->add_flag("--purified", da.purified, "Also run the purified-distance optimizer");
  dstar->add_option("--oracle", da.oracle, "Cross-check with a reference optimizer: grid | lp");
  dstar->add_flag("--renormalize", da.renormalize, "Accept unnormalized inputs and rescale");
  dstar->add_option("--out", da.out, "Write the JSON report here instead of stdout");

  nielsen_args na;
  auto* niel = app.add_subcommand("nielsen", "Exact LOCC convertibility test");
  niel->add_option("--psi", na.psi, "Source state file")->required();
  niel->add_option("--phi", na.phi, "Target state file")->required();
  niel->add_flag("--renormalize", na.renormalize, "Accept unnormalized inputs and rescale");
  niel->add_option("--out", na.out, "Write the JSON report here instead of stdout");

  ensemble_args ea;
  auto* ens = app.add_subcommand("ensemble-check",
                                 "Convertibility into a given pure-state ensemble");
  ens->add_option("--psi", ea.psi, "Source state file")->required();
  ens->add_option("--ensemble", ea.ensemble,
                  "Ensemble file: {\"members\":[{\"weight\":w,\"state\":[..]},...]}")
      ->required();
  ens->add_flag("--renormalize", ea.renormalize, "Accept unnormalized inputs and rescale");
  ens->add_option("--out", ea.out, "Write the JSON report here instead of stdout");

  scan_args sa;
  auto* scan = app.add_subcommand("embezzle-scan",
                                  "Embezzlement distance and halving criterion along n");
  scan->add_option("--family", sa.family, "vdh | power:a | log:k | osc | custom:file")
      ->required();
  scan->add_option("--m", sa.m, "Uniform block size to borrow (>= 2)")->required();
  scan->add_option("--schedule", sa.schedule,
                   "geometric:start,factor,count or list:n1,n2,... (strictly increasing)")
      ->required();
  scan->add_option("--out", sa.out, "Write the CSV here instead of stdout");

  limit_args la;
  auto* lim = app.add_subcommand("family-limit",
                                 "Asymptotic embezzlement limits and M(y) trajectory");
  lim->add_option("--family", la.family, "vdh | power:a | log:k | osc | custom:file")
      ->required();
  lim->add_option("--m", la.m, "Uniform block size to borrow (>= 2)")->required();
  lim->add_flag("--numeric", la.numeric, "Also compute the integral-ratio M(y) trajectory");
  lim->add_option("--schedule", la.schedule,
                  "y schedule for --numeric (default geometric:1000,2,15)");
  lim->add_option("--out", la.out, "Write the JSON report here instead of stdout");

  figure1_args fa;
  auto* fig = app.add_subcommand("figure1",
                                 "Power-family limits with finite-n estimates over an alpha sweep");
  fig->add_option("--m", fa.m, "Uniform block size to borrow (default 2)");
  fig->add_option("--alphas", fa.alphas,
                  "start:step:stop (use --alphas=-3:0.1:3 when start is negative)");
  fig->add_option("--n1", fa.n1, "Smaller finite-n estimate (default 1000000)");
  fig->add_option("--n2", fa.n2, "Larger finite-n estimate (default 10000000)");
  fig->add_option("--out", fa.out, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*dstar) return cmd_dstar(da);
    if (*niel) return cmd_nielsen(na);
    if (*ens) return cmd_ensemble_check(ea);
    if (*scan) return cmd_embezzle_scan(sa);
    if (*lim) return cmd_family_limit(la);
    if (*fig) return cmd_figure1(fa);
  } catch (const tool_error& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
