// Acceptance gate: eight checks with pinned tolerances, one line each.
// Exits nonzero if any check fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "common.hpp"
#include "emz/conversion.hpp"
#include "emz/embezzlement.hpp"
#include "emz/families.hpp"
#include "emz/oracles.hpp"
#include "emz/prob_vec.hpp"

using emz::Family;
using emz::ProbVec;

namespace {

struct outcome {
  bool pass = true;
  std::string detail;
};

struct timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void note_failure(outcome& o, const std::string& msg) {
  o.pass = false;
  if (o.detail.size() < 400) o.detail += (o.detail.empty() ? "" : "; ") + msg;
}

// 1. closed formula against the grid and LP reference optimizers
outcome criterion1() {
  timer t;
  outcome o;
  std::mt19937_64 rng(101);
  double worst_grid = 0.0;
  for (int it = 0; it < 1000; ++it) {
    std::size_t dim = it < 600 ? 2 : 3;
    std::size_t resolution = dim == 2 ? 1000 : 300;
    double tol = static_cast<double>(dim) / static_cast<double>(resolution);
    ProbVec p = emztest::random_vec(rng, dim);
    ProbVec q = emztest::random_vec(rng, dim);
    double exact = emz::star_distance(p, q).d_star;
    double grid = emz::oracle_min_l1_over_majorizing(p, q, emz::oracle_method::grid, resolution);
    double gap = std::fabs(exact - grid);
    worst_grid = std::max(worst_grid, gap);
    if (gap > tol) note_failure(o, "grid gap " + fmt(gap) + " at dim " + std::to_string(dim));
  }
  double worst_lp = 0.0;
  std::uniform_int_distribution<std::size_t> dims(2, 8);
  for (int it = 0; it < 100; ++it) {
    ProbVec p = emztest::random_vec(rng, dims(rng));
    ProbVec q = emztest::random_vec(rng, dims(rng));
    double exact = emz::star_distance(p, q).d_star;
    double lp = emz::oracle_min_l1_over_majorizing(p, q, emz::oracle_method::lp, 0);
    double gap = std::fabs(exact - lp);
    worst_lp = std::max(worst_lp, gap);
    if (gap > 1e-9) note_failure(o, "lp gap " + fmt(gap));
  }
  double secs = t.seconds();
  if (secs > 300.0) note_failure(o, "runtime " + fmt(secs) + "s exceeds 300s");
  if (o.pass)
    o.detail = "1000 grid pairs (worst gap " + fmt(worst_grid) + "), 100 lp pairs (worst gap " +
               fmt(worst_lp) + "), " + fmt(secs) + "s";
  return o;
}

// 2. uniform inputs hit 1 - 1/m exactly
outcome criterion2() {
  outcome o;
  double worst = 0.0;
  for (long long n = 1; n <= 1000; ++n) {
    std::vector<double> raw(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    ProbVec u = ProbVec::make(raw, emz::norm_policy::renormalize);
    for (long long m = 2; m <= 5; ++m) {
      double want = 1.0 - 1.0 / static_cast<double>(m);
      double got = emz::embezzle_distance(u, m).d_star;
      double gap = std::fabs(got - want);
      worst = std::max(worst, gap);
      if (gap > 1e-12)
        note_failure(o, "n=" + std::to_string(n) + " m=" + std::to_string(m) + " gap " + fmt(gap));
    }
  }
  if (o.pass) o.detail = "4000 (n, m) combinations, worst gap " + fmt(worst);
  return o;
}

// 3. harmonic family under its closed bound, non-increasing across decades
outcome criterion3() {
  outcome o;
  Family vdh = Family::vdh();
  double prev = 2.0;
  for (long long n = 10; n <= 1000000; n *= 10) {
    double d = emz::embezzle_evaluate(vdh, n, 2).d_star;
    double bound = (1.0 + std::log(2.0)) / vdh.normalizer(n);
    if (d > bound) note_failure(o, "n=" + std::to_string(n) + " exceeds bound by " + fmt(d - bound));
    if (d > prev + 1e-9) note_failure(o, "increase at n=" + std::to_string(n));
    prev = d;
  }
  if (o.pass) o.detail = "decades 10..1e6 under (1+ln2)/H_n, trajectory non-increasing";
  return o;
}

// 4. analytic power limits and finite-n agreement at m = 2
outcome criterion4() {
  timer t;
  outcome o;
  const long long m = 2;

  double pi = std::acos(-1.0);
  if (std::fabs(emz::zeta(2.0) - pi * pi / 6.0) > 1e-12) note_failure(o, "zeta(2) off");

  if (*emz::analytic_limit_power(-1.0, m).limit != 0.0) note_failure(o, "alpha=-1 limit not 0");
  for (double a : {-0.9, -0.5, -0.1}) {
    double want = 1.0 - std::pow(2.0, -(a + 1.0));
    if (std::fabs(*emz::analytic_limit_power(a, m).limit - want) > 1e-12)
      note_failure(o, "limit formula off on (-1,0) at alpha " + fmt(a));
  }
  if (std::fabs(*emz::analytic_limit_power(0.0, m).limit - 0.5) > 1e-12)
    note_failure(o, "alpha=0 limit not 0.5");
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    double want = std::pow(1.0 / (std::pow(2.0, 1.0 + 1.0 / a) - 1.0), a);
    if (std::fabs(*emz::analytic_limit_power(a, m).limit - want) > 1e-12)
      note_failure(o, "limit formula off at alpha " + fmt(a));
  }
  for (double a : {-1.5, -2.0, -3.0}) {
    auto lim = emz::analytic_limit_power(a, m);
    double z = emz::zeta(-a);
    double lower = 0.5 / z;
    double upper = std::min(1.0, (1.0 + (std::pow(2.0, a + 1.0) - 1.0) / (a + 1.0)) / z);
    if (std::fabs(*lim.lower - lower) > 1e-12 || std::fabs(*lim.upper - upper) > 1e-12)
      note_failure(o, "zeta bounds off at alpha " + fmt(a));
  }

  // finite-n distances approach the limits, and the gap shrinks with n
  auto eval = [&](double a, long long n) {
    return emz::embezzle_evaluate(Family::power(a), n, m).d_star;
  };
  for (double a : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
    double limit = *emz::analytic_limit_power(a, m).limit;
    double g6 = std::fabs(eval(a, 1000000) - limit);
    double g7 = std::fabs(eval(a, 10000000) - limit);
    if (g7 > 0.02) note_failure(o, "alpha " + fmt(a) + " gap " + fmt(g7) + " at n=1e7");
    if (g7 > g6 + 1e-15) note_failure(o, "alpha " + fmt(a) + " gap grew from n=1e6 to n=1e7");
  }
  for (double a : {-1.5, -2.0, -3.0}) {
    auto lim = emz::analytic_limit_power(a, m);
    auto band_gap = [&](double d) {
      return std::max({0.0, *lim.lower - d, d - *lim.upper});
    };
    double g6 = band_gap(eval(a, 1000000));
    double g7 = band_gap(eval(a, 10000000));
    if (g7 > 0.02) note_failure(o, "alpha " + fmt(a) + " outside the zeta band by " + fmt(g7));
    if (g7 > g6 + 1e-15) note_failure(o, "alpha " + fmt(a) + " band gap grew with n");
  }
  double secs = t.seconds();
  if (secs > 1800.0) note_failure(o, "runtime " + fmt(secs) + "s exceeds 1800s");
  if (o.pass)
    o.detail = "limits exact to 1e-12, 8 finite-n trajectories at n=1e6/1e7, " + fmt(secs) + "s";
  return o;
}

// 5. property suites, zero violations allowed
outcome criterion5() {
  timer t;
  outcome o;
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<std::size_t> dims(2, 8);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  int bad_triangle = 0;
  for (int it = 0; it < 1000; ++it) {
    ProbVec a = emztest::random_vec(rng, dims(rng));
    ProbVec b = emztest::random_vec(rng, dims(rng));
    ProbVec c = emztest::random_vec(rng, dims(rng));
    double ac = emz::star_distance(a, c).d_star;
    double ab = emz::star_distance(a, b).d_star;
    double bc = emz::star_distance(b, c).d_star;
    if (ac > ab + bc + 1e-12) ++bad_triangle;
  }
  if (bad_triangle) note_failure(o, std::to_string(bad_triangle) + " triangle violations");

  int bad_zero = 0;
  for (int it = 0; it < 1000; ++it) {
    ProbVec p = emztest::random_vec(rng, dims(rng));
    ProbVec q = it % 2 ? emz::steepest_approximation({p, 0.5 * uni(rng)})
                       : emztest::random_vec(rng, dims(rng));
    if (emz::nielsen_convertible(p, q) != (emz::star_distance(p, q).d_star == 0.0)) ++bad_zero;
  }
  if (bad_zero) note_failure(o, std::to_string(bad_zero) + " zero-characterization violations");

  int bad_sep = 0;
  for (int it = 0; it < 1000;) {
    ProbVec p = emztest::random_vec(rng, dims(rng));
    ProbVec q = emztest::random_vec(rng, dims(rng));
    if (p.rank() < 2 || q.rank() < 2) continue;
    ++it;
    if (!(emz::star_distance(p, q).d_star < 1.0 - q.entries()[0])) ++bad_sep;
  }
  if (bad_sep) note_failure(o, std::to_string(bad_sep) + " separable-dominance violations");

  int bad_sandwich = 0;
  for (int it = 0; it < 1000; ++it) {
    ProbVec p = emztest::random_vec(rng, dims(rng));
    ProbVec q = emztest::random_vec(rng, dims(rng));
    double d = emz::trace_distance(p, q);
    double pur = emz::purified_distance(p, q);
    if (pur < d - 1e-12 || pur > std::sqrt(2.0 * d) + 1e-12) ++bad_sandwich;
  }
  if (bad_sandwich) note_failure(o, std::to_string(bad_sandwich) + " D<=P<=sqrt(2D) violations");

  int bad_steepest = 0;
  for (int center = 0; center < 1000; ++center) {
    ProbVec q = emztest::random_vec(rng, dims(rng));
    double eps = uni(rng);
    ProbVec top = emz::steepest_approximation({q, eps});
    for (int member = 0; member < 1000; ++member) {
      ProbVec r = emztest::random_ball_member(rng, q, eps);
      if (!emz::majorizes(top, r)) {
        ++bad_steepest;
        break;
      }
    }
  }
  if (bad_steepest) note_failure(o, std::to_string(bad_steepest) + " steepest-dominance violations");

  int bad_phi2 = 0;
  std::uniform_int_distribution<long long> ms(3, 8);
  for (int it = 0; it < 1000; ++it) {
    ProbVec p = emztest::random_vec(rng, dims(rng));
    long long m = ms(rng);
    double dm = emz::embezzle_distance(p, m).d_star;
    double d2 = emz::embezzle_distance(p, 2).d_star;
    double factor = std::ceil(std::log2(static_cast<double>(m)));
    if (dm > factor * d2 + 1e-12) ++bad_phi2;
  }
  if (bad_phi2) note_failure(o, std::to_string(bad_phi2) + " phi2-sufficiency violations");

  if (o.pass) o.detail = "6 suites x 1000 instances, zero violations, " + fmt(t.seconds()) + "s";
  return o;
}

// 6. purified optimizer against the fidelity grid oracle and its sandwich
outcome criterion6() {
  timer t;
  outcome o;
  std::mt19937_64 rng(606);
  double worst_oracle = 0.0;
  for (int it = 0; it < 100; ++it) {
    std::size_t dim = 2 + it % 2;
    ProbVec p = emztest::random_vec(rng, dim);
    ProbVec q = emztest::random_vec(rng, dim);
    auto res = emz::star_distance_purified(p, q);
    if (!res.converged) note_failure(o, "optimizer did not converge");
    double of = emz::oracle_max_fidelity_over_majorizing(p, q, 2000, 3);
    double op = std::sqrt(std::max(0.0, 1.0 - of * of));
    double gap = std::fabs(res.value - op);
    worst_oracle = std::max(worst_oracle, gap);
    if (gap > 1e-4) note_failure(o, "oracle gap " + fmt(gap));
  }
  std::uniform_int_distribution<std::size_t> dims(2, 20);
  for (int it = 0; it < 1000; ++it) {
    ProbVec p = emztest::random_vec(rng, dims(rng));
    ProbVec q = emztest::random_vec(rng, dims(rng));
    double d = emz::star_distance(p, q).d_star;
    auto res = emz::star_distance_purified(p, q);
    if (!res.converged) note_failure(o, "optimizer did not converge at dim<=20");
    if (res.value < d - 1e-12 || res.value > std::sqrt(2.0 * d) + 1e-4)
      note_failure(o, "sandwich violation: d=" + fmt(d) + " purified=" + fmt(res.value));
  }
  if (o.pass)
    o.detail = "100 oracle agreements (worst gap " + fmt(worst_oracle) +
               "), 1000 sandwich instances, " + fmt(t.seconds()) + "s";
  return o;
}

// 7. integral asymptotics maximizer and value at y = 1e6
outcome criterion7() {
  timer t;
  outcome o;
  const double y = 1.0e6;
  for (double a : {0.5, 1.0, 2.0}) {
    for (long long m : {2LL, 3LL}) {
      double md = static_cast<double>(m);
      double amax = (y + 1.0) * (std::pow(md, 1.0 / a) - 1.0) / (std::pow(md, 1.0 + 1.0 / a) - 1.0);
      auto rep = emz::integral_asymptotics(Family::power(a), m, {y});
      if (!rep.points[0].ok) {
        note_failure(o, "alpha " + fmt(a) + " m " + std::to_string(m) + ": " + rep.points[0].error);
        continue;
      }
      double rel = std::fabs(rep.points[0].maximizer_a - amax) / amax;
      if (rel > 0.01)
        note_failure(o, "maximizer off by " + fmt(100.0 * rel) + "% at alpha " + fmt(a) +
                            " m " + std::to_string(m));
      double limit = *emz::analytic_limit_power(a, m).limit;
      if (std::fabs(rep.points[0].m_value - limit) > 0.01)
        note_failure(o, "M(1e6) off the limit by " +
                            fmt(std::fabs(rep.points[0].m_value - limit)) + " at alpha " +
                            fmt(a) + " m " + std::to_string(m));
    }
  }
  if (o.pass) o.detail = "6 (alpha, m) combinations at y=1e6, " + fmt(t.seconds()) + "s";
  return o;
}

// 8. embezzlers shrink below 0.1, non-embezzlers stay above 0.3
outcome criterion8() {
  timer t;
  outcome o;
  auto vdh6 = emz::embezzle_evaluate(Family::vdh(), 1000000, 2);
  if (vdh6.d_star >= 0.1) note_failure(o, "vdh d_star " + fmt(vdh6.d_star) + " at n=1e6");
  if (vdh6.criterion >= 0.1) note_failure(o, "vdh criterion " + fmt(vdh6.criterion) + " at n=1e6");

  for (double a : {0.0, 1.0}) {
    Family fam = Family::power(a);
    auto probe = [&](long long n) {
      auto ev = emz::embezzle_evaluate(fam, n, 2);
      if (ev.d_star <= 0.3)
        note_failure(o, "power(" + fmt(a) + ") d_star " + fmt(ev.d_star) + " at n=" +
                            std::to_string(n));
      if (ev.criterion <= 0.3)
        note_failure(o, "power(" + fmt(a) + ") criterion " + fmt(ev.criterion) + " at n=" +
                            std::to_string(n));
    };
    for (long long n = 10; n <= 1000; ++n) probe(n);
    for (long long n = 1250; n <= 1000000; n = n * 5 / 4) probe(n);
    probe(1000000);
  }
  if (o.pass)
    o.detail = "vdh below 0.1 at n=1e6; power(0), power(1) above 0.3 on n in [10, 1e6], " +
               fmt(t.seconds()) + "s";
  return o;
}

}  // namespace

int main() {
  struct entry {
    const char* label;
    outcome (*fn)();
  };
  const entry entries[] = {
      {"closed formula matches grid and LP reference optimizers", criterion1},
      {"uniform inputs give exactly 1 - 1/m", criterion2},
      {"harmonic family stays under (1 + ln 2)/H_n and decreases", criterion3},
      {"power-family limits exact, finite-n trajectories within 0.02", criterion4},
      {"property suites hold with zero violations", criterion5},
      {"purified optimizer matches oracle and sandwich", criterion6},
      {"integral asymptotics maximizer and value at y = 1e6", criterion7},
      {"embezzlers fall below 0.1, non-embezzlers stay above 0.3", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < sizeof entries / sizeof entries[0]; ++i) {
    outcome o = entries[i].fn();
    std::printf("[%s] criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                entries[i].label, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
