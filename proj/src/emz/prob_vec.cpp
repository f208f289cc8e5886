#include "emz/prob_vec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace emz {

ProbVec ProbVec::make(std::vector<double> raw, norm_policy policy) {
  if (raw.empty()) throw validation_error("probability vector must have at least one entry");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double v = raw[i];
    if (!std::isfinite(v))
      throw validation_error("entry " + std::to_string(i + 1) + " is not finite");
    if (v < -NORM_TOL)
      throw validation_error("entry " + std::to_string(i + 1) + " is negative (" +
                             std::to_string(v) + ")");
    if (v < 0.0) raw[i] = 0.0;
  }
  double sum = compensated_sum(raw);
  if (policy == norm_policy::strict) {
    if (std::abs(sum - 1.0) > NORM_TOL)
      throw validation_error("entries sum to " + std::to_string(sum) +
                             ", not 1 within 1e-12 (use renormalize to rescale)");
  } else {
    if (sum <= 0.0) throw validation_error("entries sum to zero; cannot renormalize");
    for (double& v : raw) v /= sum;
  }
  std::sort(raw.begin(), raw.end(), std::greater<double>());
  return from_sorted_unchecked(std::move(raw));
}

ProbVec ProbVec::from_sorted_unchecked(std::vector<double> sorted) {
  ProbVec p;
  p.entries_ = std::move(sorted);
  std::size_t r = p.entries_.size();
  while (r > 0 && p.entries_[r - 1] <= 0.0) --r;
  p.rank_ = r;
  return p;
}

double ky_fan(const ProbVec& p, std::size_t k) {
  if (k > p.dim())
    throw validation_error("ky_fan index " + std::to_string(k) + " exceeds dimension " +
                           std::to_string(p.dim()));
  neumaier_sum acc;
  for (std::size_t i = 0; i < k; ++i) acc.add(p.entries()[i]);
  return acc.value();
}

double entanglement_monotone(const ProbVec& p, std::size_t k) {
  if (k == 0) throw validation_error("monotone index must be at least 1");
  return 1.0 - ky_fan(p, k);
}

bool majorizes(const ProbVec& r, const ProbVec& p) {
  std::size_t d = std::max(r.dim(), p.dim());
  neumaier_sum sr, sp;
  for (std::size_t k = 0; k < d; ++k) {
    sr.add(r[k]);
    sp.add(p[k]);
    if (sr.value() < sp.value() - CMP_TOL) return false;
  }
  return true;
}

double trace_distance(const ProbVec& p, const ProbVec& q) {
  std::size_t d = std::max(p.dim(), q.dim());
  neumaier_sum acc;
  for (std::size_t i = 0; i < d; ++i) acc.add(std::abs(p[i] - q[i]));
  return 0.5 * acc.value();
}

double fidelity(const ProbVec& p, const ProbVec& q) {
  std::size_t d = std::min(p.dim(), q.dim());
  neumaier_sum acc;
  for (std::size_t i = 0; i < d; ++i) acc.add(std::sqrt(p[i] * q[i]));
  double f = acc.value();
  return f > 1.0 ? 1.0 : f;  // shave fp overshoot so purified_distance stays real
}

double purified_distance(const ProbVec& p, const ProbVec& q) {
  double f = fidelity(p, q);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

ProbVec steepest_approximation(const eps_ball_query& q) {
  double eps = q.epsilon;
  if (!(eps >= 0.0 && eps <= 1.0))
    throw validation_error("epsilon must lie in [0, 1], got " + std::to_string(eps));
  const auto& c = q.center.entries();
  std::size_t d = c.size();
  std::vector<double> out(d, 0.0);

  // Whole ball collapses onto the top outcome once eps covers 1 - q1.
  if (1.0 - c[0] <= eps + NORM_TOL) {
    out[0] = 1.0;
    return ProbVec::from_sorted_unchecked(std::move(out));
  }

  // Largest K with prefix(K) <= 1 - eps; mass beyond it is shifted onto the
  // first entry, the boundary entry keeps the remainder.
  double target = 1.0 - eps;
  neumaier_sum acc;
  std::size_t K = 0;
  double prefix_K = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    acc.add(c[i]);
    double next = acc.value();
    if (next <= target + NORM_TOL) {
      K = i + 1;
      prefix_K = next;
    } else {
      break;
    }
  }
  for (std::size_t i = 1; i < K; ++i) out[i] = c[i];
  out[0] = c[0] + eps;
  if (K < d) out[K] = std::max(0.0, target - prefix_K);
  return ProbVec::from_sorted_unchecked(std::move(out));
}

std::vector<double> prefix_sums(const ProbVec& p) {
  std::vector<double> out(p.dim() + 1, 0.0);
  neumaier_sum acc;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    acc.add(p.entries()[i]);
    out[i + 1] = acc.value();
  }
  return out;
}

}  // namespace emz
