#include "emz/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "emz/util.hpp"

namespace emz::lp {
namespace {

constexpr double PIVOT_EPS = 1e-11;

// Tableau rows: one per constraint, columns: structural vars, surplus vars,
// artificial vars, rhs. basis[i] is the column basic in row i.
struct Tableau {
  std::size_t rows = 0, cols = 0;  // cols excludes rhs
  std::vector<std::vector<double>> a;
  std::vector<double> rhs;
  std::vector<std::size_t> basis;

  void pivot(std::size_t pr, std::size_t pc) {
    double piv = a[pr][pc];
    for (std::size_t j = 0; j < cols; ++j) a[pr][j] /= piv;
    rhs[pr] /= piv;
    a[pr][pc] = 1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr) continue;
      double f = a[i][pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[pr][j];
      rhs[i] -= f * rhs[pr];
      a[i][pc] = 0.0;
    }
    basis[pr] = pc;
  }
};

// Minimizes obj over the tableau with Bland's rule; obj is indexed by column.
// Returns false when unbounded.
bool run_simplex(Tableau& t, const std::vector<double>& obj, double& value,
                 const std::vector<bool>& allowed) {
  std::size_t guard = 0;
  const std::size_t guard_max = 50000 + 200 * t.cols * t.rows;
  for (;;) {
    if (++guard > guard_max) throw numeric_error("simplex iteration guard tripped");
    // reduced costs: r_j = obj_j - z_j with z_j = sum_i obj_basis(i) * a[i][j]
    std::size_t enter = t.cols;
    for (std::size_t j = 0; j < t.cols; ++j) {
      if (!allowed[j]) continue;
      bool basic = false;
      for (std::size_t i = 0; i < t.rows; ++i)
        if (t.basis[i] == j) { basic = true; break; }
      if (basic) continue;
      double z = 0.0;
      for (std::size_t i = 0; i < t.rows; ++i) {
        double ob = obj[t.basis[i]];
        if (ob != 0.0) z += ob * t.a[i][j];
      }
      if (obj[j] - z < -PIVOT_EPS) { enter = j; break; }  // Bland: first improving column
    }
    if (enter == t.cols) break;
    std::size_t leave = t.rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows; ++i) {
      if (t.a[i][enter] > PIVOT_EPS) {
        double ratio = t.rhs[i] / t.a[i][enter];
        if (ratio < best_ratio - PIVOT_EPS ||
            (ratio < best_ratio + PIVOT_EPS &&
             (leave == t.rows || t.basis[i] < t.basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == t.rows) return false;
    t.pivot(leave, enter);
  }
  value = 0.0;
  for (std::size_t i = 0; i < t.rows; ++i) value += obj[t.basis[i]] * t.rhs[i];
  return true;
}

}  // namespace

Solution solve(const Problem& prob) {
  std::size_t n = prob.nvars;
  std::size_t m_eq = prob.a_eq.size();
  std::size_t m_ge = prob.a_ge.size();
  std::size_t rows = m_eq + m_ge;

  // Layout: [structural n][surplus m_ge][artificial rows]
  std::size_t surplus0 = n;
  std::size_t art0 = n + m_ge;
  std::size_t cols = n + m_ge + rows;

  Tableau t;
  t.rows = rows;
  t.cols = cols;
  t.a.assign(rows, std::vector<double>(cols, 0.0));
  t.rhs.assign(rows, 0.0);
  t.basis.assign(rows, 0);

  for (std::size_t i = 0; i < m_eq; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.a[i][j] = prob.a_eq[i][j];
    t.rhs[i] = prob.b_eq[i];
  }
  for (std::size_t i = 0; i < m_ge; ++i) {
    std::size_t r = m_eq + i;
    for (std::size_t j = 0; j < n; ++j) t.a[r][j] = prob.a_ge[i][j];
    t.a[r][surplus0 + i] = -1.0;
    t.rhs[r] = prob.b_ge[i];
  }
  // Flip rows to keep rhs nonnegative, then install artificial basis.
  for (std::size_t i = 0; i < rows; ++i) {
    if (t.rhs[i] < 0.0) {
      for (std::size_t j = 0; j < cols; ++j) t.a[i][j] = -t.a[i][j];
      t.rhs[i] = -t.rhs[i];
    }
    t.a[i][art0 + i] = 1.0;
    t.basis[i] = art0 + i;
  }

  Solution sol;

  // Phase 1: drive artificials to zero.
  std::vector<double> obj1(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) obj1[art0 + i] = 1.0;
  std::vector<bool> allow_all(cols, true);
  double v1 = 0.0;
  if (!run_simplex(t, obj1, v1, allow_all))
    throw numeric_error("phase-1 simplex reported unbounded");
  if (v1 > 1e-7) {
    sol.feasible = false;
    return sol;
  }
  // Pivot away any artificial still basic at zero level.
  for (std::size_t i = 0; i < rows; ++i) {
    if (t.basis[i] >= art0) {
      std::size_t j = 0;
      for (; j < art0; ++j)
        if (std::abs(t.a[i][j]) > PIVOT_EPS) break;
      if (j < art0) t.pivot(i, j);
    }
  }

  // Phase 2 with artificials barred.
  std::vector<double> obj2(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) obj2[j] = prob.maximize ? -prob.c[j] : prob.c[j];
  std::vector<bool> allowed(cols, true);
  for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  double v2 = 0.0;
  if (!run_simplex(t, obj2, v2, allowed)) {
    sol.feasible = true;
    sol.bounded = false;
    return sol;
  }

  sol.feasible = true;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    if (t.basis[i] < n) sol.x[t.basis[i]] = t.rhs[i];
  sol.objective = prob.maximize ? -v2 : v2;
  return sol;
}

}  // namespace emz::lp
