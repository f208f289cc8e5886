#include "emz/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "emz/lp.hpp"

namespace emz {
namespace {

struct lattice_point {
  long long k1 = 0, k2 = 0, k3 = 0;
};

double l1_objective(double r1, double r2, double r3, const ProbVec& q) {
  double s = std::abs(r1 - q[0]) + std::abs(r2 - q[1]) + std::abs(r3 - q[2]);
  for (std::size_t i = 3; i < q.dim(); ++i) s += q[i];
  return 0.5 * s;
}

double fid_objective(double r1, double r2, double r3, const ProbVec& q) {
  return std::sqrt(r1 * q[0]) + std::sqrt(r2 * q[1]) + std::sqrt(r3 * q[2]);
}

// Enumerates sorted triples (k1 >= k2 >= k3 >= 0, sum = R) subject to the
// integer majorization thresholds t1, t2 (k1 >= t1, k1 + k2 >= t2), calling
// eval on each. Windows (if given) bound each coordinate.
template <typename Eval>
void enumerate_sorted(long long R, long long t1, long long t2, const lattice_point* lo,
                      const lattice_point* hi, Eval&& eval) {
  long long k1_min = std::max<long long>({t1, (R + 2) / 3, lo ? lo->k1 : 0});
  long long k1_max = hi ? std::min<long long>(R, hi->k1) : R;
  for (long long k1 = k1_min; k1 <= k1_max; ++k1) {
    long long rem = R - k1;
    long long k2_min = std::max<long long>({t2 - k1, (rem + 1) / 2, lo ? lo->k2 : 0});
    long long k2_max = std::min<long long>({k1, rem, hi ? hi->k2 : rem});
    for (long long k2 = k2_min; k2 <= k2_max; ++k2) eval(k1, k2, rem - k2);
  }
}

long long majorization_threshold(double prefix, long long R) {
  // smallest integer t with t/R >= prefix - CMP_TOL
  double v = (prefix - CMP_TOL) * static_cast<double>(R);
  long long t = static_cast<long long>(std::ceil(v));
  return std::max<long long>(0, std::min<long long>(t, R));
}

double grid_min_l1(const ProbVec& p, const ProbVec& q, long long R) {
  auto P = prefix_sums(p);
  long long t1 = majorization_threshold(P.size() > 1 ? P[1] : 1.0, R);
  long long t2 = majorization_threshold(P.size() > 2 ? P[2] : 1.0, R);
  double best = std::numeric_limits<double>::infinity();
  double inv = 1.0 / static_cast<double>(R);
  enumerate_sorted(R, t1, t2, nullptr, nullptr, [&](long long k1, long long k2, long long k3) {
    double v = l1_objective(k1 * inv, k2 * inv, k3 * inv, q);
    if (v < best) best = v;
  });
  return best;
}

double lp_min_l1(const ProbVec& p, const ProbVec& q) {
  // Variables: r_1..r_D, t_1..t_D with t_x >= |r_x - q_x|; minimize sum t / 2.
  std::size_t D = std::max(p.dim(), q.dim());
  auto P = prefix_sums(p);
  lp::Problem prob;
  prob.nvars = 2 * D;
  prob.c.assign(2 * D, 0.0);
  for (std::size_t x = 0; x < D; ++x) prob.c[D + x] = 0.5;
  prob.maximize = false;

  std::vector<double> row(2 * D, 0.0);
  // sum r = 1
  for (std::size_t x = 0; x < D; ++x) row[x] = 1.0;
  prob.a_eq.push_back(row);
  prob.b_eq.push_back(1.0);
  // sortedness r_x - r_{x+1} >= 0
  for (std::size_t x = 0; x + 1 < D; ++x) {
    std::fill(row.begin(), row.end(), 0.0);
    row[x] = 1.0;
    row[x + 1] = -1.0;
    prob.a_ge.push_back(row);
    prob.b_ge.push_back(0.0);
  }
  // prefix sums dominate p's
  for (std::size_t k = 1; k < D; ++k) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t x = 0; x < k; ++x) row[x] = 1.0;
    prob.a_ge.push_back(row);
    prob.b_ge.push_back(k < P.size() ? P[k] : 1.0);
  }
  // t_x + r_x >= q_x  and  t_x - r_x >= -q_x
  for (std::size_t x = 0; x < D; ++x) {
    std::fill(row.begin(), row.end(), 0.0);
    row[x] = 1.0;
    row[D + x] = 1.0;
    prob.a_ge.push_back(row);
    prob.b_ge.push_back(q[x]);
    std::fill(row.begin(), row.end(), 0.0);
    row[x] = -1.0;
    row[D + x] = 1.0;
    prob.a_ge.push_back(row);
    prob.b_ge.push_back(-q[x]);
  }

  lp::Solution sol = lp::solve(prob);
  if (!sol.feasible || !sol.bounded)
    throw numeric_error("LP oracle failed to solve a feasible bounded program");
  return sol.objective;
}

}  // namespace

std::size_t default_grid_resolution(std::size_t padded_dim) {
  return padded_dim <= 2 ? 1000 : 300;
}

double oracle_min_l1_over_majorizing(const ProbVec& p, const ProbVec& q, oracle_method method,
                                     std::size_t resolution) {
  if (method == oracle_method::lp) return lp_min_l1(p, q);
  std::size_t D = std::max(p.dim(), q.dim());
  if (D > 3)
    throw validation_error("grid oracle supports padded dimension <= 3, got " +
                           std::to_string(D));
  if (resolution == 0) resolution = default_grid_resolution(D);
  return grid_min_l1(p, q, static_cast<long long>(resolution));
}

double oracle_max_fidelity_over_majorizing(const ProbVec& p, const ProbVec& q,
                                           std::size_t resolution, int refine_rounds) {
  std::size_t D = std::max(p.dim(), q.dim());
  if (D > 3)
    throw validation_error("grid oracle supports padded dimension <= 3, got " +
                           std::to_string(D));
  if (resolution == 0) resolution = default_grid_resolution(D);

  auto P = prefix_sums(p);
  double P1 = P.size() > 1 ? P[1] : 1.0;
  double P2 = P.size() > 2 ? P[2] : 1.0;

  long long R = static_cast<long long>(resolution);
  double best = -1.0;
  lattice_point best_pt;
  auto scan = [&](long long res, const lattice_point* lo, const lattice_point* hi) {
    long long t1 = majorization_threshold(P1, res);
    long long t2 = majorization_threshold(P2, res);
    double inv = 1.0 / static_cast<double>(res);
    enumerate_sorted(res, t1, t2, lo, hi, [&](long long k1, long long k2, long long k3) {
      double v = fid_objective(k1 * inv, k2 * inv, k3 * inv, q);
      if (v > best) {
        best = v;
        best_pt = {k1, k2, k3};
      }
    });
  };

  scan(R, nullptr, nullptr);
  const long long scale = 8, window = 3;
  for (int round = 0; round < refine_rounds; ++round) {
    long long fine = R * scale;
    lattice_point lo{std::max<long long>(0, (best_pt.k1 - window) * scale),
                     std::max<long long>(0, (best_pt.k2 - window) * scale), 0};
    lattice_point hi{(best_pt.k1 + window) * scale, (best_pt.k2 + window) * scale, 0};
    best_pt = {best_pt.k1 * scale, best_pt.k2 * scale, best_pt.k3 * scale};
    scan(fine, &lo, &hi);
    R = fine;
  }
  return std::min(best, 1.0);
}

}  // namespace emz
