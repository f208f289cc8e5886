#pragma once

#include <cstddef>
#include <vector>

namespace emz::lp {

// Dense linear program over x >= 0:
//   optimize c.x  subject to  A_eq x = b_eq  and  A_ge x >= b_ge.
// Small and self-contained on purpose: problems here have tens of variables.
struct Problem {
  std::size_t nvars = 0;
  std::vector<double> c;
  bool maximize = false;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
  std::vector<std::vector<double>> a_ge;
  std::vector<double> b_ge;
};

struct Solution {
  bool feasible = false;
  bool bounded = true;
  double objective = 0.0;
  std::vector<double> x;
};

// Two-phase primal simplex with Bland's rule. Throws numeric_error only on
// internal inconsistency; infeasible/unbounded are reported in the result.
Solution solve(const Problem& prob);

}  // namespace emz::lp
