#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "emz/prob_vec.hpp"

namespace emz {

enum class family_kind { vdh, power, logcorrected, oscillating, custom, constant, plateau };
enum class monotonicity { non_increasing, non_decreasing, general };

// A one-parameter family of Schmidt vectors: member n has coefficients
// f(x)/F_n (sorted non-increasingly), F_n the partial sum of f over 1..n.
class Family {
 public:
  static Family vdh();                       // f(x) = 1/x
  static Family power(double alpha);         // f(x) = x^alpha
  static Family log_corrected(double k);     // f(x) = ln(x+1)^k / x
  static Family oscillating();               // f(x) = (1+(1+sin ln ln x) ln x)/x
  static Family constant(double value);      // f(x) = value > 0
  static Family custom(std::vector<double> xs, std::vector<double> fs, std::string label);
  static Family custom_from_csv(const std::string& path);

  // "vdh" | "power:a" | "log:k" | "osc" | "custom:path"
  static Family parse(const std::string& spec);

  // Defining function extended to real x >= 1 (tables interpolate linearly).
  double f(double x) const;

  family_kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  monotonicity direction() const { return dir_; }
  std::string label() const { return label_; }

  // Largest n for which member(n) exists (tables are finite).
  long long max_index() const;

  // Compensated normalizer F_n.
  double normalizer(long long n) const;

  // Materialized member; sorted and normalized. Bounded by a memory guard.
  ProbVec member(long long n) const;

  // True when members can be produced in sorted order without materializing.
  bool streamable() const { return dir_ != monotonicity::general; }

  // x-th largest coefficient of member n, valid for streamable families;
  // norm is normalizer(n), passed in so scans pay for it once.
  double sorted_coefficient(long long x, long long n, double norm) const;

 private:
  family_kind kind_ = family_kind::vdh;
  monotonicity dir_ = monotonicity::non_increasing;
  double alpha_ = 0.0;   // power exponent or log power or constant value
  std::string label_;
  std::vector<double> xs_, fs_;      // custom table
  std::shared_ptr<Family> base_;     // plateau wraps a base family
  long long cutoff_ = 0;

  friend Family regularize(const Family&, int, double, long long);
};

// Riemann zeta for s > 1, absolute error below 1e-12 (Euler-Maclaurin).
double zeta(double s);

struct power_limit_result {
  std::optional<double> limit;
  std::optional<double> lower;
  std::optional<double> upper;
};

// Asymptotic embezzlement distance of the power family x^alpha toward a
// uniform block of m: exact limit for alpha >= -1, zeta bounds below.
power_limit_result analytic_limit_power(double alpha, long long m);

// Finite-n upper bound on the embezzlement distance for power-law families
// with alpha <= -1 (the only regime with a closed finite-n bound here).
std::optional<double> finite_n_bound_power(double alpha, long long m, double normalizer_n);

struct integral_point {
  double y = 0.0;
  double m_value = 0.0;        // M(y): best mass ratio captured by [a, am]
  double maximizer_a = 0.0;
  double m_value_grid = 0.0;   // grid-fallback estimate, kept for cross-checks
  bool ok = true;
  std::string error;
};

struct asymptotics_report {
  std::vector<integral_point> points;
  std::vector<std::string> warnings;
};

// Continuum proxy M(y) = max_a int_a^{am} g / int_1^y g along a y schedule.
// g is f for non-increasing families and f(y+1-x)/f(y) for non-decreasing
// ones; non-monotone families must be regularized first.
asymptotics_report integral_asymptotics(const Family& fam, long long m,
                                        const std::vector<double>& ys, double quad_tol = 1e-10);

std::vector<double> default_y_schedule();  // 1e3 * 2^j, j = 0..14

// Normalizer ratio check at n = 1e6 vs 1e7 (clamped to the family's range):
// true when the ratio is within 1e-6 of 1, i.e. the sum looks convergent and
// the family cannot embezzle. A warning signal, not an error.
bool divergence_precheck_flags_convergent(const Family& fam);

// limit_class: 0 = finite (plateau value ell), 1 = zero, 2 = infinity.
// Produces the regularized family: constant ell for the finite class, else
// f frozen at the cutoff below it. Monotonicity beyond the cutoff is sampled;
// a violation is a validation error naming the first offending index.
Family regularize(const Family& fam, int limit_class, double ell, long long cutoff);

}  // namespace emz
