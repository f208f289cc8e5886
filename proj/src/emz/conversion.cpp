#include "emz/conversion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace emz {

Ensemble make_ensemble(std::vector<double> weights, std::vector<ProbVec> states) {
  if (weights.size() != states.size())
    throw validation_error("ensemble weight/state count mismatch");
  if (weights.empty()) throw validation_error("ensemble must have at least one member");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double w = weights[i];
    if (!std::isfinite(w) || w < -NORM_TOL || w > 1.0 + NORM_TOL)
      throw validation_error("ensemble weight " + std::to_string(i + 1) +
                             " outside [0, 1]: " + std::to_string(w));
  }
  double sum = compensated_sum(weights);
  if (std::abs(sum - 1.0) > NORM_TOL)
    throw validation_error("ensemble weights sum to " + std::to_string(sum) + ", not 1");
  for (double& w : weights) w = std::max(0.0, w);
  return Ensemble{std::move(weights), std::move(states)};
}

bool nielsen_convertible(const ProbVec& psi, const ProbVec& phi) {
  return majorizes(phi, psi);
}

ensemble_verdict ensemble_convertible(const ProbVec& psi, const Ensemble& target) {
  std::size_t kmax = psi.dim();
  for (const auto& s : target.states) kmax = std::max(kmax, s.dim());

  // Running prefix sums for psi and each member keep the scan O(kmax * |Z|).
  neumaier_sum psi_prefix;
  std::vector<neumaier_sum> member_prefix(target.states.size());
  ensemble_verdict v;
  double best = 0.0;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    psi_prefix.add(psi[k - 1]);
    double e_psi = 1.0 - psi_prefix.value();
    neumaier_sum mix;
    for (std::size_t z = 0; z < target.states.size(); ++z) {
      member_prefix[z].add(target.states[z][k - 1]);
      mix.add(target.weights[z] * (1.0 - member_prefix[z].value()));
    }
    double margin = e_psi - mix.value();
    if (best_k == 0 || margin < best) {  // strict: ties keep the smallest k
      best = margin;
      best_k = k;
    }
  }
  v.margin = best;
  v.worst_k = best_k;
  v.convertible = best >= -CMP_TOL;
  return v;
}

bool pure_to_mixed_check(const ProbVec& psi, const Ensemble& decomposition) {
  return ensemble_convertible(psi, decomposition).convertible;
}

ConversionReport star_distance(const ProbVec& psi, const ProbVec& phi) {
  std::size_t r = std::max<std::size_t>(psi.rank(), 1);
  neumaier_sum sp, sq;
  double best = -2.0;
  std::size_t best_k = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    sp.add(psi[k - 1]);
    sq.add(phi[k - 1]);
    double diff = sp.value() - sq.value();
    if (diff > best) {  // strict: ties keep the smallest k
      best = diff;
      best_k = k;
    }
  }
  // At k = rank(psi) the difference is 1 - prefix_phi >= 0, so anything below
  // fp noise signals corrupted input.
  if (best < -1e-9) throw numeric_error("star distance scan produced a negative maximum");
  ConversionReport rep;
  // maxima within the majorization comparison tolerance are zero, so that
  // d_star == 0 exactly when nielsen_convertible holds
  rep.d_star = best <= CMP_TOL ? 0.0 : std::clamp(best, 0.0, 1.0);
  rep.argmax_k = best_k;
  sandwich_bounds(rep.d_star, rep.sandwich_lo, rep.sandwich_hi);
  rep.discrimination_bound = discrimination_bound(rep.d_star);
  return rep;
}

void sandwich_bounds(double d_star, double& lo, double& hi) {
  lo = 0.5 * d_star * d_star;
  hi = std::sqrt(2.0 * d_star);  // deliberately unclamped: sqrt(2) at d_star = 1
}

double discrimination_bound(double d_value) { return 0.5 * (1.0 + d_value); }

}  // namespace emz
