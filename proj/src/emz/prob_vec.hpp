#pragma once

#include <cstddef>
#include <vector>

#include "emz/util.hpp"

namespace emz {

// Tolerances shared by every consumer of ProbVec. NORM_TOL is the strict
// normalization gate; CMP_TOL absorbs float noise in order comparisons.
inline constexpr double NORM_TOL = 1e-12;
inline constexpr double CMP_TOL = 1e-12;

enum class norm_policy { strict, renormalize };

// Sorted (non-increasing) probability vector: the Schmidt-coefficient view of
// a bipartite pure state. Immutable after construction; entries sum to 1.
class ProbVec {
 public:
  ProbVec() = default;

  const std::vector<double>& entries() const { return entries_; }
  std::size_t dim() const { return entries_.size(); }
  std::size_t rank() const { return rank_; }
  double operator[](std::size_t i) const { return i < entries_.size() ? entries_[i] : 0.0; }

  // Validates, clamps negatives in [-1e-12, 0) to zero, sorts non-increasingly
  // and (under renormalize) rescales to unit sum. Throws validation_error on
  // NaN/Inf, entries below -1e-12, or (strict) |sum - 1| > 1e-12.
  static ProbVec make(std::vector<double> raw, norm_policy policy = norm_policy::strict);

  // Trusts the input to be already sorted, clean and normalized up to fp
  // noise; used by constructions whose output is sorted by design.
  static ProbVec from_sorted_unchecked(std::vector<double> sorted);

 private:
  std::vector<double> entries_;
  std::size_t rank_ = 0;
};

// Sum of the k largest entries; k = 0 gives 0, k > dim is an error.
double ky_fan(const ProbVec& p, std::size_t k);

// 1 - ky_fan(p, k) for 1 <= k <= dim.
double entanglement_monotone(const ProbVec& p, std::size_t k);

// True iff r majorizes p: every prefix sum of r dominates p's within CMP_TOL.
// Vectors of different dims compare with implicit zero padding.
bool majorizes(const ProbVec& r, const ProbVec& p);

double trace_distance(const ProbVec& p, const ProbVec& q);
double fidelity(const ProbVec& p, const ProbVec& q);
double purified_distance(const ProbVec& p, const ProbVec& q);

struct eps_ball_query {
  ProbVec center;
  double epsilon = 0.0;  // trace-distance radius in [0, 1]
};

// Steepest eps-approximation of the center: the member of the trace-distance
// ball that majorizes every other member. epsilon outside [0, 1] is an error.
ProbVec steepest_approximation(const eps_ball_query& q);

// Prefix sums with compensated accumulation; out[k] = sum of first k entries,
// out.size() == dim + 1, out[0] == 0.
std::vector<double> prefix_sums(const ProbVec& p);

}  // namespace emz
