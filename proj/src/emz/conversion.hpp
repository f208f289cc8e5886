#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "emz/prob_vec.hpp"

namespace emz {

// Mixed target given as an explicit decomposition; weights sum to 1.
struct Ensemble {
  std::vector<double> weights;
  std::vector<ProbVec> states;
};

Ensemble make_ensemble(std::vector<double> weights, std::vector<ProbVec> states);

// Deterministic LOCC convertibility psi -> phi: phi's coefficients majorize
// psi's (every monotone of psi dominates phi's).
bool nielsen_convertible(const ProbVec& psi, const ProbVec& phi);

struct ensemble_verdict {
  bool convertible = false;
  std::size_t worst_k = 0;   // smallest index attaining the margin
  double margin = 0.0;       // min_k E_k(psi) - sum_z w_z E_k(phi_z)
};

// Convertibility of psi into the given pure-state ensemble.
ensemble_verdict ensemble_convertible(const ProbVec& psi, const Ensemble& target);

// Pure -> mixed convertibility relative to one explicit decomposition of the
// target. Deciding it over all decompositions is NP-hard and out of scope;
// this checks exactly the supplied one.
bool pure_to_mixed_check(const ProbVec& psi, const Ensemble& decomposition);

struct ConversionReport {
  double d_star = 0.0;
  std::size_t argmax_k = 1;        // smallest maximizing prefix index
  double sandwich_lo = 0.0;        // d_star^2 / 2
  double sandwich_hi = 0.0;        // sqrt(2 d_star), reported unclamped
  double discrimination_bound = 0.0;  // (1 + d_star) / 2
  std::optional<double> d_star_purified;
};

// Closed-form star conversion distance: max_k over k in [rank(psi)] of
// (prefix_psi(k) - prefix_phi(k)), clamped into [0, 1]. Tiny negative maxima
// (>= -1e-12, the majorizable case) clamp to zero.
ConversionReport star_distance(const ProbVec& psi, const ProbVec& phi);

// Bounds on the true LOCC conversion distance implied by d_star.
void sandwich_bounds(double d_star, double& lo, double& hi);

// Optimal two-state discrimination success probability from a distance value.
// Callers choose which distance estimate to feed in; reports label the basis.
double discrimination_bound(double d_value);

struct purified_options {
  double tol = 1e-8;             // duality-gap target on fidelity
  std::size_t budget = 100000;   // objective-evaluation budget
};

struct purified_result {
  double value = 0.0;        // min purified distance over r majorizing psi's vec
  double fidelity = 0.0;     // attained max fidelity
  bool converged = true;
  std::size_t evaluations = 0;
  std::vector<double> optimizer;
};

// Purified star distance: minimizes sqrt(1 - F^2(r, phi)) over the polytope
// of sorted vectors majorizing psi, by concave maximization of the fidelity.
purified_result star_distance_purified(const ProbVec& psi, const ProbVec& phi,
                                       const purified_options& opt = {});

}  // namespace emz
