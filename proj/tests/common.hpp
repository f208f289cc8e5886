#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "emz/prob_vec.hpp"

namespace emztest {

inline std::vector<double> simplex_point(std::mt19937_64& rng, std::size_t dim) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> v(dim);
  double s = 0.0;
  for (auto& x : v) {
    x = exp1(rng);
    s += x;
  }
  for (auto& x : v) x /= s;
  return v;
}

inline emz::ProbVec random_vec(std::mt19937_64& rng, std::size_t dim) {
  return emz::ProbVec::make(simplex_point(rng, dim), emz::norm_policy::renormalize);
}

// Random member of the trace-distance eps-ball around q: move a random
// amount of mass (at most eps) from the support to random slots.
inline emz::ProbVec random_ball_member(std::mt19937_64& rng, const emz::ProbVec& q,
                                       double eps) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::size_t d = q.dim();
  std::vector<double> out(q.entries().begin(), q.entries().end());
  double budget = eps * uni(rng);
  std::vector<double> w(d);
  double ws = 0.0;
  for (auto& x : w) {
    x = uni(rng);
    ws += x;
  }
  double removed = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double take = std::min(budget * w[i] / ws, out[i]);
    out[i] -= take;
    removed += take;
  }
  double ws2 = 0.0;
  for (auto& x : w) {
    x = uni(rng);
    ws2 += x;
  }
  for (std::size_t i = 0; i < d; ++i) out[i] += removed * w[i] / ws2;
  return emz::ProbVec::make(std::move(out), emz::norm_policy::renormalize);
}

}  // namespace emztest
