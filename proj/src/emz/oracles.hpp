#pragma once

#include <cstddef>

#include "emz/prob_vec.hpp"

namespace emz {

enum class oracle_method { grid, lp };

// Brute-force reference for min_{r majorizing p} trace_distance(r, q).
// grid: enumerates sorted lattice compositions (padded dim <= 3); the result
// overestimates the true minimum by at most dim/resolution.
// lp: exact linear program (any dim), split |r - q| via auxiliary bounds.
double oracle_min_l1_over_majorizing(const ProbVec& p, const ProbVec& q, oracle_method method,
                                     std::size_t resolution = 0);

// Brute-force reference for max_{r majorizing p} fidelity(r, q), padded
// dim <= 3. Pure lattice enumeration; refine_rounds > 0 re-enumerates a
// window around the incumbent at 8x resolution per round, all levels checked
// against the exact constraints. refine_rounds = 0 is the single-pass grid.
double oracle_max_fidelity_over_majorizing(const ProbVec& p, const ProbVec& q,
                                           std::size_t resolution, int refine_rounds = 0);

// Default grid resolutions: 1000 for padded dim 2, 300 for padded dim 3.
std::size_t default_grid_resolution(std::size_t padded_dim);

}  // namespace emz
