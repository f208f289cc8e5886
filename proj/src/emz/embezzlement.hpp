#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emz/families.hpp"
#include "emz/prob_vec.hpp"

namespace emz {

// Schmidt vector of psi (x) uniform-block-of-m: each entry splits into m
// copies of p_x / m; stays sorted.
ProbVec tensor_with_uniform(const ProbVec& p, long long m);

// Schmidt vector of psi (x) product state: entries unchanged, zero padding to
// dim * m so both tensor results live in the same dimension.
ProbVec tensor_with_e1(const ProbVec& p, long long m);

struct embezzle_evaluation {
  long long n = 0;                 // family index, 0 when evaluated on a raw vector
  long long m = 2;
  double d_star = 0.0;             // distance cost of borrowing a uniform block of m
  long long argmax_k = 1;
  double criterion = 0.0;          // max_l prefix(2l-1) - prefix(l-1)
  long long argmax_l = 1;
  double p1 = 0.0;                 // largest coefficient
  bool has_bound = false;
  double bound = 0.0;              // closed finite-n bound, power alpha <= -1 only
};

// Closed-form embezzlement distance of a materialized vector; equals
// star_distance(tensor_with_e1(p, m) -> tensor_with_uniform(p, m)) without
// building the tensors.
embezzle_evaluation embezzle_distance(const ProbVec& p, long long m);

// Halving criterion alone (value and smallest maximizing l).
std::pair<double, long long> embezzlement_criterion(const ProbVec& p);

// Family-indexed single evaluation: streams the sorted coefficients for
// monotone families, materializes otherwise.
embezzle_evaluation embezzle_evaluate(const Family& fam, long long n, long long m);

struct scan_row {
  embezzle_evaluation eval;
  bool ok = true;
  std::string error;
};

// Evaluates the family along a strictly increasing schedule of n. Per-item
// failures are recorded in the row and the scan continues.
std::vector<scan_row> embezzle_scan(const Family& fam, long long m,
                                    const std::vector<long long>& schedule);

}  // namespace emz
