#include <algorithm>
#include <cmath>
#include <limits>

#include "emz/conversion.hpp"
#include "emz/lp.hpp"

namespace emz {
namespace {

// All work happens on the first R coordinates, R = rank(psi): the prefix
// constraint at R pins the full unit mass there, so feasible r vanish beyond.
struct Workspace {
  std::size_t R = 0;
  std::vector<double> P;      // prefix targets, P[k] for k = 1..R
  std::vector<double> q;      // target coefficients restricted to [0, R)
  std::vector<double> sqrtq;  // cached square roots
  std::size_t evals = 0;

  double fid(const std::vector<double>& r) {
    ++evals;
    neumaier_sum acc;
    for (std::size_t x = 0; x < R; ++x)
      if (q[x] > 0.0 && r[x] > 0.0) acc.add(sqrtq[x] * std::sqrt(r[x]));
    return acc.value();
  }

  void grad(const std::vector<double>& r, std::vector<double>& g) {
    ++evals;
    for (std::size_t x = 0; x < R; ++x)
      g[x] = q[x] > 0.0 ? 0.5 * sqrtq[x] / std::sqrt(std::max(r[x], 1e-18)) : 0.0;
  }

  bool feasible(const std::vector<double>& r) const {
    neumaier_sum acc;
    for (std::size_t x = 0; x < R; ++x) {
      if (r[x] < -CMP_TOL) return false;
      if (x + 1 < R && r[x + 1] > r[x] + CMP_TOL) return false;
      acc.add(r[x]);
      if (acc.value() < P[x + 1] - CMP_TOL) return false;
    }
    return std::abs(acc.value() - 1.0) <= 1e-9;
  }
};

// Linear maximization of g over the polytope; the workhorse step of the
// conditional-gradient loop.
std::vector<double> lp_vertex(const Workspace& w, const std::vector<double>& g) {
  lp::Problem prob;
  std::size_t R = w.R;
  prob.nvars = R;
  prob.c = g;
  prob.maximize = true;
  std::vector<double> row(R, 1.0);
  prob.a_eq.push_back(row);
  prob.b_eq.push_back(1.0);
  for (std::size_t x = 0; x + 1 < R; ++x) {
    std::fill(row.begin(), row.end(), 0.0);
    row[x] = 1.0;
    row[x + 1] = -1.0;
    prob.a_ge.push_back(row);
    prob.b_ge.push_back(0.0);
  }
  for (std::size_t k = 1; k < R; ++k) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t x = 0; x < k; ++x) row[x] = 1.0;
    prob.a_ge.push_back(row);
    prob.b_ge.push_back(w.P[k]);
  }
  lp::Solution sol = lp::solve(prob);
  if (!sol.feasible || !sol.bounded)
    throw numeric_error("linear subproblem failed on a compact feasible polytope");
  return sol.x;
}

// Exact line search by bisection on the (decreasing) directional derivative.
double line_search(Workspace& w, const std::vector<double>& x, const std::vector<double>& s) {
  auto dphi = [&](double t) {
    ++w.evals;
    double d = 0.0;
    for (std::size_t i = 0; i < w.R; ++i) {
      if (w.q[i] <= 0.0) continue;
      double v = (1.0 - t) * x[i] + t * s[i];
      d += (s[i] - x[i]) * 0.5 * w.sqrtq[i] / std::sqrt(std::max(v, 1e-18));
    }
    return d;
  };
  double lo = 0.0, hi = 1.0;
  if (dphi(1.0) >= 0.0) return 1.0;
  if (dphi(0.0) <= 0.0) return 0.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (dphi(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Blockwise-proportional point for a given set of active prefix cuts. With
// the optimum's active set this is the exact optimum: KKT gives one gradient
// level per block, so r is proportional to q inside blocks, and the levels
// decrease across blocks, which keeps the result sorted on its own.
bool build_for_cuts(const Workspace& w, const std::vector<std::size_t>& cuts,
                    std::vector<double>& out) {
  std::size_t R = w.R;
  out.assign(R, 0.0);
  std::size_t lo = 0;
  for (std::size_t cut : cuts) {
    double mass = w.P[cut] - w.P[lo];
    double qsum = 0.0;
    for (std::size_t x = lo; x < cut; ++x) qsum += w.q[x];
    for (std::size_t x = lo; x < cut; ++x)
      out[x] = qsum > 0.0 ? w.q[x] * mass / qsum : mass / static_cast<double>(cut - lo);
    lo = cut;
  }
  return w.feasible(out);
}

// Exact optimum via the least concave majorant of the prefix targets in
// cumulative-q coordinates. Segments of the majorant are the blocks, its
// contact points the active prefix constraints. Chord-above-curve gives the
// interior prefix constraints, decreasing chord slopes give decreasing
// per-block gradient levels, and those two are exactly the KKT conditions of
// this concave program, so the construction is optimal whenever feasible.
bool hull_solution(const Workspace& w, std::vector<double>& out) {
  std::size_t R = w.R;
  std::size_t Re = R;
  while (Re > 0 && w.q[Re - 1] <= 0.0) --Re;
  out.assign(R, 0.0);
  if (Re == 0) {
    // target carries no weight on the source's support; any feasible point
    // has fidelity zero, the source itself included
    for (std::size_t x = 0; x < R; ++x) out[x] = w.P[x + 1] - w.P[x];
    return w.feasible(out);
  }
  // mass past the last target-supported coordinate is wasted, so the final
  // point is pinned to total mass one at Re rather than at R
  std::vector<double> X(Re + 1, 0.0), Y(Re + 1, 0.0);
  for (std::size_t k = 1; k <= Re; ++k) {
    X[k] = X[k - 1] + w.q[k - 1];
    Y[k] = k == Re ? 1.0 : w.P[k];
  }
  std::vector<std::size_t> h;
  for (std::size_t k = 0; k <= Re; ++k) {
    while (h.size() >= 2) {
      std::size_t a = h[h.size() - 2], b = h[h.size() - 1];
      if ((Y[b] - Y[a]) * (X[k] - X[b]) <= (Y[k] - Y[b]) * (X[b] - X[a]))
        h.pop_back();
      else
        break;
    }
    h.push_back(k);
  }
  for (std::size_t j = 1; j < h.size(); ++j) {
    std::size_t a = h[j - 1], b = h[j];
    double mass = Y[b] - Y[a];
    double qsum = X[b] - X[a];
    for (std::size_t x = a; x < b; ++x) out[x] = w.q[x] * mass / qsum;
  }
  return w.feasible(out);
}

// The iterate only orders the prefix slacks reliably, it does not pin them to
// zero, so try every nested active set in slack order and keep the best.
void polish_by_slack_sweep(Workspace& w, std::vector<double> r, double& best_f,
                           std::vector<double>& best_r) {
  std::size_t R = w.R;
  std::vector<std::pair<double, std::size_t>> slack;
  neumaier_sum acc;
  for (std::size_t x = 0; x + 1 < R; ++x) {
    acc.add(r[x]);
    slack.push_back({acc.value() - w.P[x + 1], x + 1});
  }
  std::sort(slack.begin(), slack.end());
  std::vector<std::size_t> active;
  std::vector<double> out;
  for (std::size_t j = 0; j <= slack.size(); ++j) {
    std::vector<std::size_t> cuts(active.begin(), active.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(R);
    if (j < slack.size()) active.push_back(slack[j].second);
    if (!build_for_cuts(w, cuts, out)) continue;
    double f = w.fid(out);
    if (f > best_f) {
      best_f = f;
      best_r = out;
    }
  }
}

}  // namespace

purified_result star_distance_purified(const ProbVec& psi, const ProbVec& phi,
                                       const purified_options& opt) {
  purified_result res;
  std::size_t R = std::max<std::size_t>(psi.rank(), 1);

  Workspace w;
  w.R = R;
  auto P = prefix_sums(psi);
  w.P.assign(R + 1, 0.0);
  for (std::size_t k = 1; k <= R; ++k) w.P[k] = k < P.size() ? P[k] : 1.0;
  w.P[R] = 1.0;
  w.q.resize(R);
  w.sqrtq.resize(R);
  for (std::size_t x = 0; x < R; ++x) {
    w.q[x] = phi[x];
    w.sqrtq[x] = std::sqrt(w.q[x]);
  }

  // Exact shortcut: phi inside the polytope means fidelity 1.
  if (majorizes(phi, psi)) {
    res.value = 0.0;
    res.fidelity = 1.0;
    res.converged = true;
    res.optimizer.assign(phi.entries().begin(),
                         phi.entries().begin() + std::min<std::size_t>(R, phi.dim()));
    res.optimizer.resize(R, 0.0);
    return res;
  }

  std::vector<double> g(R, 0.0);

  // Duality-gap certificate: for a concave objective the linear maximizer
  // bounds the optimum, independent of how any point was produced.
  auto certified = [&](const std::vector<double>& r) {
    w.grad(r, g);
    std::vector<double> s = lp_vertex(w, g);
    double gap = 0.0;
    for (std::size_t i = 0; i < R; ++i) gap += g[i] * (s[i] - r[i]);
    return gap <= opt.tol;
  };

  std::vector<double> hull;
  if (hull_solution(w, hull) && certified(hull)) {
    double f = std::min(w.fid(hull), 1.0);
    res.fidelity = f;
    res.value = std::sqrt(std::max(0.0, 1.0 - f * f));
    res.converged = true;
    res.evaluations = w.evals;
    res.optimizer = std::move(hull);
    return res;
  }

  double d_star = star_distance(psi, phi).d_star;

  // Candidate: the trace-distance optimizer. Feasible by construction and
  // pointwise within sqrt(2 d_star) of phi in purified distance.
  ProbVec steep = steepest_approximation({phi.dim() >= R ? phi : ProbVec::make([&] {
                                            std::vector<double> padded(R, 0.0);
                                            for (std::size_t i = 0; i < phi.dim(); ++i)
                                              padded[i] = phi[i];
                                            return padded;
                                          }(), norm_policy::strict),
                                          d_star});
  std::vector<double> cand(R, 0.0);
  for (std::size_t i = 0; i < R; ++i) cand[i] = steep[i];
  double cand_sum = compensated_sum(cand);
  if (cand_sum > 0) for (double& v : cand) v /= cand_sum;
  std::vector<double> best_r = cand;
  double best_f = w.feasible(cand) ? w.fid(cand) : -1.0;

  // Interior start: blend of psi's vector (always feasible, full support on
  // the first R coordinates) and the candidate.
  std::vector<double> x(R, 0.0);
  for (std::size_t i = 0; i < R; ++i) x[i] = 0.5 * (psi[i] + cand[i]);
  double fx = w.fid(x);
  if (fx > best_f) {
    best_f = fx;
    best_r = x;
  }

  polish_by_slack_sweep(w, x, best_f, best_r);
  bool converged = certified(best_r);

  if (!converged) {
    x = best_r;
    while (w.evals < opt.budget) {
      w.grad(x, g);
      std::vector<double> s = lp_vertex(w, g);
      double gap = 0.0;
      for (std::size_t i = 0; i < R; ++i) gap += g[i] * (s[i] - x[i]);
      if (gap <= opt.tol) {
        converged = true;
        break;
      }
      double gamma = line_search(w, x, s);
      if (gamma <= 0.0) {
        converged = gap <= std::max(opt.tol, 1e-12);
        break;
      }
      for (std::size_t i = 0; i < R; ++i) x[i] = (1.0 - gamma) * x[i] + gamma * s[i];
      fx = w.fid(x);
      if (fx > best_f) {
        best_f = fx;
        best_r = x;
      }
    }
    polish_by_slack_sweep(w, best_r, best_f, best_r);
    if (!converged) converged = certified(best_r);
  }

  res.fidelity = std::min(best_f, 1.0);
  res.value = std::sqrt(std::max(0.0, 1.0 - res.fidelity * res.fidelity));
  res.converged = converged;
  res.evaluations = w.evals;
  res.optimizer = std::move(best_r);
  return res;
}

}  // namespace emz
