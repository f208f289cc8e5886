#include "emz/embezzlement.hpp"

#include <algorithm>
#include <cmath>

#include "emz/util.hpp"

namespace emz {
namespace {

// Core streaming evaluation over the sorted coefficients of one state.
// src(x) must return the x-th largest coefficient (1-based) for x in [1, n].
// Memory stays O(1): the prefix at k and the lagged prefix at floor(k/m)
// advance together, as do the two criterion cursors.
template <typename Src>
embezzle_evaluation kernel(long long n, long long m, Src&& src) {
  embezzle_evaluation ev;
  ev.n = n;
  ev.m = m;
  ev.p1 = src(1);

  neumaier_sum Sk;      // prefix at k
  neumaier_sum Sa;      // prefix at a = floor(k/m)
  long long a = 0;
  double p_next = ev.p1;  // coefficient at position a + 1
  double best = -1.0;
  long long best_k = 1;
  for (long long k = 1; k <= n; ++k) {
    Sk.add(src(k));
    if (k % m == 0) {
      ++a;
      Sa.add(p_next);  // src(a) was cached as the previous p_next
      p_next = a + 1 <= n ? src(a + 1) : 0.0;
    }
    double b = static_cast<double>(k - a * m);
    double term = Sk.value() - Sa.value() - (b / static_cast<double>(m)) * p_next;
    if (term > best) {
      best = term;
      best_k = k;
    }
  }
  ev.d_star = std::clamp(best, 0.0, 1.0);
  ev.argmax_k = best_k;

  // criterion: max over l in [ceil(n/2)] of prefix(2l-1) - prefix(l-1)
  neumaier_sum Sodd;    // prefix at 2l - 1
  neumaier_sum Sprev;   // prefix at l - 1
  long long lmax = (n + 1) / 2;
  double cbest = -1.0;
  long long cbest_l = 1;
  for (long long l = 1; l <= lmax; ++l) {
    if (l == 1) {
      Sodd.add(src(1));
    } else {
      Sodd.add(src(2 * l - 2));
      if (2 * l - 1 <= n) Sodd.add(src(2 * l - 1));
      Sprev.add(src(l - 1));
    }
    double term = Sodd.value() - Sprev.value();
    if (term > cbest) {
      cbest = term;
      cbest_l = l;
    }
  }
  ev.criterion = std::clamp(cbest, 0.0, 1.0);
  ev.argmax_l = cbest_l;
  return ev;
}

}  // namespace

ProbVec tensor_with_uniform(const ProbVec& p, long long m) {
  if (m < 1) throw validation_error("block size m must be at least 1");
  if (m == 1) return p;
  std::vector<double> out;
  out.reserve(p.dim() * static_cast<std::size_t>(m));
  double inv = 1.0 / static_cast<double>(m);
  for (double v : p.entries())
    for (long long j = 0; j < m; ++j) out.push_back(v * inv);
  return ProbVec::from_sorted_unchecked(std::move(out));
}

ProbVec tensor_with_e1(const ProbVec& p, long long m) {
  if (m < 1) throw validation_error("block size m must be at least 1");
  if (m == 1) return p;
  std::vector<double> out(p.entries());
  out.resize(p.dim() * static_cast<std::size_t>(m), 0.0);
  return ProbVec::from_sorted_unchecked(std::move(out));
}

embezzle_evaluation embezzle_distance(const ProbVec& p, long long m) {
  if (m < 2) throw validation_error("block size m must be at least 2");
  long long n = static_cast<long long>(std::max<std::size_t>(p.rank(), 1));
  const auto& e = p.entries();
  auto ev = kernel(n, m, [&e](long long x) { return e[static_cast<std::size_t>(x - 1)]; });
  return ev;
}

std::pair<double, long long> embezzlement_criterion(const ProbVec& p) {
  auto ev = embezzle_distance(p, 2);
  return {ev.criterion, ev.argmax_l};
}

embezzle_evaluation embezzle_evaluate(const Family& fam, long long n, long long m) {
  if (m < 2) throw validation_error("block size m must be at least 2");
  embezzle_evaluation ev;
  if (fam.streamable()) {
    double norm = fam.normalizer(n);
    ev = kernel(n, m, [&fam, n, norm](long long x) {
      return fam.sorted_coefficient(x, n, norm);
    });
    if (fam.kind() == family_kind::vdh) {
      if (auto b = finite_n_bound_power(-1.0, m, norm)) {
        ev.has_bound = true;
        ev.bound = *b;
      }
    } else if (fam.kind() == family_kind::power) {
      if (auto b = finite_n_bound_power(fam.alpha(), m, norm)) {
        ev.has_bound = true;
        ev.bound = *b;
      }
    }
  } else {
    ProbVec p = fam.member(n);
    ev = embezzle_distance(p, m);
  }
  ev.n = n;
  ev.m = m;
  return ev;
}

std::vector<scan_row> embezzle_scan(const Family& fam, long long m,
                                    const std::vector<long long>& schedule) {
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1 || (i > 0 && schedule[i] <= schedule[i - 1]))
      throw validation_error("schedule must be strictly increasing and positive");
  }
  std::vector<scan_row> rows(schedule.size());
  parallel_for_ordered(schedule.size(), [&](std::size_t i) {
    try {
      rows[i].eval = embezzle_evaluate(fam, schedule[i], m);
    } catch (const std::exception& e) {
      rows[i].ok = false;
      rows[i].error = e.what();
      rows[i].eval.n = schedule[i];
      rows[i].eval.m = m;
    }
  });
  return rows;
}

}  // namespace emz
