#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace emz {

// Validation failures map to exit code 2 / EMZ_ERR_VALIDATION.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric non-convergence maps to exit code 3 / EMZ_ERR_NUMERIC.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Neumaier variant of Kahan summation. Error stays O(eps) independent of the
// number of terms, which the 1e-12 contracts need once dims reach 1e5..1e8.
struct neumaier_sum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }

  double value() const { return s + c; }
};

inline double compensated_sum(const std::vector<double>& xs) {
  neumaier_sum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

// Runs items [0, count) across worker threads, capped by EMBEZZLEMETER_THREADS
// (default: hardware concurrency). fn must be pure w.r.t. shared state except
// for writing its own result slot; results therefore come out in input order.
void parallel_for_ordered(std::size_t count, const std::function<void(std::size_t)>& fn);

// Thread cap resolved from the environment (>= 1).
unsigned resolved_thread_cap();

std::uint64_t fnv1a64(const void* data, std::size_t len);

}  // namespace emz
