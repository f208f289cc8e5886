#include "emz/families.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace emz {
namespace {

constexpr long long MATERIALIZE_CAP = 30000000;  // 240 MB of doubles

double f_oscillating(double x) {
  if (x <= 1.0) return 1.0;
  double lx = std::log(x);
  return (1.0 + (1.0 + std::sin(std::log(lx))) * lx) / x;
}

double f_power(double alpha, double x) {
  if (alpha == 0.0) return 1.0;
  if (alpha == -1.0) return 1.0 / x;
  if (alpha == 1.0) return x;
  return std::pow(x, alpha);
}

// Adaptive Simpson with absolute tolerance; integrand assumed smooth. The
// roundoff floor matters: value and tolerance both halve per level, so once
// delta is dominated by cancellation noise no depth ever satisfies a plain
// 15*tol test and the recursion would grind to the depth cap.
double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = g(lm), frm = g(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  double floor_ = 16.0 * std::numeric_limits<double>::epsilon() *
                  (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= std::max(15.0 * tol, floor_))
    return left + right + delta / 15.0;
  return adaptive_simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol) {
  if (b <= a) return 0.0;
  // Split geometrically first: integrands here live on [1, 1e7]-style ranges
  // where a single Simpson seed underresolves the left end.
  double total = 0.0;
  double lo = a;
  int segments = 0;
  while (lo < b && segments < 64) {
    double hi = std::min(b, lo * 4.0 + 1e-12);
    if (hi <= lo) hi = b;
    double fa = g(lo), fb = g(hi), fm = g(0.5 * (lo + hi));
    double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += adaptive_simpson(g, lo, hi, fa, fm, fb, whole, tol / 32.0, 48);
    lo = hi;
    ++segments;
  }
  return total;
}

}  // namespace

Family Family::vdh() {
  Family f;
  f.kind_ = family_kind::vdh;
  f.dir_ = monotonicity::non_increasing;
  f.label_ = "vdh";
  return f;
}

Family Family::power(double alpha) {
  if (!std::isfinite(alpha)) throw validation_error("power family exponent must be finite");
  Family f;
  f.kind_ = family_kind::power;
  f.alpha_ = alpha;
  f.dir_ = alpha > 0.0 ? monotonicity::non_decreasing : monotonicity::non_increasing;
  f.label_ = "power:" + std::to_string(alpha);
  return f;
}

Family Family::log_corrected(double k) {
  if (!std::isfinite(k)) throw validation_error("log family exponent must be finite");
  Family f;
  f.kind_ = family_kind::logcorrected;
  f.alpha_ = k;
  // ln(x+1)^k / x is non-increasing exactly when k <= 2 ln 2.
  f.dir_ = k <= 2.0 * std::log(2.0) + 1e-15 ? monotonicity::non_increasing
                                            : monotonicity::general;
  f.label_ = "log:" + std::to_string(k);
  return f;
}

Family Family::oscillating() {
  Family f;
  f.kind_ = family_kind::oscillating;
  // The defining function rises on roughly [2, e] before settling into its
  // non-increasing tail, so members are sorted on materialization.
  f.dir_ = monotonicity::general;
  f.label_ = "osc";
  return f;
}

Family Family::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw validation_error("constant family value must be positive and finite");
  Family f;
  f.kind_ = family_kind::constant;
  f.alpha_ = value;
  f.dir_ = monotonicity::non_increasing;
  f.label_ = "const:" + std::to_string(value);
  return f;
}

Family Family::custom(std::vector<double> xs, std::vector<double> fs, std::string label) {
  if (xs.size() != fs.size() || xs.size() < 2)
    throw validation_error("custom family table needs at least two (x, f) rows");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(fs[i]))
      throw validation_error("custom family row " + std::to_string(i + 1) + " is not finite");
    if (i > 0 && xs[i] <= xs[i - 1])
      throw validation_error("custom family x values must increase (row " +
                             std::to_string(i + 1) + ")");
    if (fs[i] <= 0.0)
      throw validation_error("custom family value at x = " + std::to_string(xs[i]) +
                             " is not positive");
  }
  if (xs.front() > 1.0) throw validation_error("custom family table must start at x <= 1");
  Family f;
  f.kind_ = family_kind::custom;
  bool noninc = true, nondec = true;
  for (std::size_t i = 1; i < fs.size(); ++i) {
    if (fs[i] > fs[i - 1]) noninc = false;
    if (fs[i] < fs[i - 1]) nondec = false;
  }
  f.dir_ = noninc   ? monotonicity::non_increasing
           : nondec ? monotonicity::non_decreasing
                    : monotonicity::general;
  f.xs_ = std::move(xs);
  f.fs_ = std::move(fs);
  f.label_ = std::move(label);
  return f;
}

Family Family::custom_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open custom family file: " + path);
  std::vector<double> xs, fs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, v;
    if (!(row >> x >> v)) {
      if (lineno == 1) continue;  // header row
      throw validation_error("custom family file " + path + ": cannot parse line " +
                             std::to_string(lineno));
    }
    xs.push_back(x);
    fs.push_back(v);
  }
  return custom(std::move(xs), std::move(fs), "custom:" + path);
}

Family Family::parse(const std::string& spec) {
  if (spec == "vdh") return vdh();
  if (spec == "osc") return oscillating();
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string head = spec.substr(0, colon);
    std::string tail = spec.substr(colon + 1);
    if (head == "custom") return custom_from_csv(tail);
    if (head == "power" || head == "log" || head == "const") {
      try {
        std::size_t used = 0;
        double v = std::stod(tail, &used);
        if (used != tail.size()) throw std::invalid_argument("trailing junk");
        if (head == "power") return power(v);
        if (head == "log") return log_corrected(v);
        return constant(v);
      } catch (const std::exception&) {
        throw validation_error("cannot parse family parameter in '" + spec + "'");
      }
    }
  }
  throw validation_error("unknown family spec '" + spec +
                         "' (expected vdh | power:a | log:k | osc | custom:file)");
}

double Family::f(double x) const {
  switch (kind_) {
    case family_kind::vdh:
      return 1.0 / x;
    case family_kind::power:
      return f_power(alpha_, x);
    case family_kind::logcorrected:
      return std::pow(std::log(x + 1.0), alpha_) / x;
    case family_kind::oscillating:
      return f_oscillating(x);
    case family_kind::constant:
      return alpha_;
    case family_kind::plateau:
      return base_->f(std::max(x, static_cast<double>(cutoff_)));
    case family_kind::custom: {
      if (x <= xs_.front()) return fs_.front();
      if (x >= xs_.back()) return fs_.back();
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      std::size_t i = static_cast<std::size_t>(it - xs_.begin());
      double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
      return fs_[i - 1] + t * (fs_[i] - fs_[i - 1]);
    }
  }
  throw numeric_error("unreachable family kind");
}

long long Family::max_index() const {
  if (kind_ == family_kind::custom) return static_cast<long long>(std::floor(xs_.back()));
  if (kind_ == family_kind::plateau) return base_->max_index();
  return 1000000000000LL;
}

double Family::normalizer(long long n) const {
  if (n < 1) throw validation_error("family index n must be at least 1");
  if (n > max_index())
    throw validation_error("family member " + std::to_string(n) +
                           " is beyond the table range (max " + std::to_string(max_index()) +
                           ")");
  neumaier_sum acc;
  for (long long x = 1; x <= n; ++x) acc.add(f(static_cast<double>(x)));
  double v = acc.value();
  if (!(v > 0.0) || !std::isfinite(v))
    throw validation_error("family normalizer is not positive and finite at n = " +
                           std::to_string(n));
  return v;
}

ProbVec Family::member(long long n) const {
  if (n < 1) throw validation_error("family index n must be at least 1");
  if (n > max_index())
    throw validation_error("family member " + std::to_string(n) +
                           " is beyond the table range (max " + std::to_string(max_index()) +
                           ")");
  if (n > MATERIALIZE_CAP)
    throw validation_error("family member materialization capped at n = " +
                           std::to_string(MATERIALIZE_CAP) + "; use streaming scans instead");
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (long long x = 1; x <= n; ++x) {
    double v = f(static_cast<double>(x));
    if (!(v > 0.0) || !std::isfinite(v))
      throw validation_error("family value at x = " + std::to_string(x) + " is not positive");
    vals[static_cast<std::size_t>(x - 1)] = v;
  }
  if (dir_ == monotonicity::non_decreasing)
    std::reverse(vals.begin(), vals.end());
  else if (dir_ == monotonicity::general)
    std::sort(vals.begin(), vals.end(), std::greater<double>());
  double norm = compensated_sum(vals);
  for (double& v : vals) v /= norm;
  return ProbVec::from_sorted_unchecked(std::move(vals));
}

double Family::sorted_coefficient(long long x, long long n, double norm) const {
  double xx = dir_ == monotonicity::non_decreasing ? static_cast<double>(n + 1 - x)
                                                   : static_cast<double>(x);
  return f(xx) / norm;
}

double zeta(double s) {
  if (!(s > 1.0)) throw validation_error("zeta defined here only for s > 1");
  // Euler-Maclaurin at N = 64 with Bernoulli corrections through B12; the
  // first dropped term is below 1e-26 for every s > 1.
  constexpr int N = 64;
  neumaier_sum acc;
  for (int x = 1; x < N; ++x) acc.add(std::pow(static_cast<double>(x), -s));
  double Npow = std::pow(static_cast<double>(N), -s);
  acc.add(Npow * N / (s - 1.0));
  acc.add(0.5 * Npow);
  static const double bern[6] = {1.0 / 12.0,      -1.0 / 720.0,     1.0 / 30240.0,
                                 -1.0 / 1209600.0, 1.0 / 47900160.0, -691.0 / 1307674368000.0};
  double rising = s;            // s (s+1) ... accumulated
  double npow = Npow / N;       // N^{-s-1}, N^{-s-3}, ...
  for (int j = 0; j < 6; ++j) {
    acc.add(bern[j] * rising * npow);
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    npow /= static_cast<double>(N) * static_cast<double>(N);
  }
  return acc.value();
}

power_limit_result analytic_limit_power(double alpha, long long m) {
  if (m < 2) throw validation_error("block size m must be at least 2");
  power_limit_result out;
  double md = static_cast<double>(m);
  if (alpha == -1.0) {
    out.limit = 0.0;
    out.lower = 0.0;
    out.upper = 0.0;
  } else if (alpha > -1.0 && alpha < 0.0) {
    out.limit = 1.0 - std::pow(md, -(alpha + 1.0));
  } else if (alpha == 0.0) {
    out.limit = 1.0 - 1.0 / md;
  } else if (alpha > 0.0) {
    // (m-1) ((m-1)/(m^{1+1/alpha}-1))^alpha, evaluated in log space so the
    // inner power cannot overflow for small alpha.
    double L = (1.0 + 1.0 / alpha) * std::log(md);
    double log_inner = std::log(md - 1.0) - L - std::log1p(-std::exp(-L));
    out.limit = (md - 1.0) * std::exp(alpha * log_inner);
  } else {
    double z = zeta(-alpha);
    out.lower = (1.0 - 1.0 / md) / z;
    double num = 1.0 + (std::pow(md, alpha + 1.0) - 1.0) / (alpha + 1.0);
    out.upper = std::min(1.0, num / z);
  }
  if (out.limit) {
    out.lower = out.limit;
    out.upper = out.limit;
  }
  return out;
}

std::optional<double> finite_n_bound_power(double alpha, long long m, double normalizer_n) {
  if (alpha > -1.0) return std::nullopt;
  double md = static_cast<double>(m);
  double num = alpha == -1.0 ? 1.0 + std::log(md)
                             : 1.0 + (std::pow(md, alpha + 1.0) - 1.0) / (alpha + 1.0);
  return num / normalizer_n;
}

std::vector<double> default_y_schedule() {
  std::vector<double> ys;
  for (int j = 0; j <= 14; ++j) ys.push_back(1000.0 * std::pow(2.0, j));
  return ys;
}

bool divergence_precheck_flags_convergent(const Family& fam) {
  long long hi = std::min<long long>(fam.max_index(), 10000000LL);
  long long lo = std::max<long long>(1, hi / 10);
  if (lo >= hi) return false;
  double a = fam.normalizer(lo);
  double b = fam.normalizer(hi);
  return std::abs(b / a - 1.0) < 1e-6;
}

asymptotics_report integral_asymptotics(const Family& fam, long long m,
                                        const std::vector<double>& ys, double quad_tol) {
  if (m < 2) throw validation_error("block size m must be at least 2");
  if (fam.direction() == monotonicity::general)
    throw validation_error("integral asymptotics needs a monotone family; regularize first");

  asymptotics_report rep;
  if (divergence_precheck_flags_convergent(fam))
    rep.warnings.push_back(
        "normalizer ratio at n = 1e6 vs 1e7 is within 1e-6: the coefficient sum looks "
        "convergent, so the family is unlikely to embezzle");

  double md = static_cast<double>(m);
  rep.points.resize(ys.size());
  for (std::size_t yi = 0; yi < ys.size(); ++yi) {
    integral_point& pt = rep.points[yi];
    pt.y = ys[yi];
    try {
      double y = ys[yi];
      if (y < 2.0 * md) throw validation_error("y must be at least 2m");
      bool reversed = fam.direction() == monotonicity::non_decreasing;
      double fy = reversed ? fam.f(y) : 1.0;
      auto g = [&fam, reversed, y, fy](double x) {
        return reversed ? fam.f(y + 1.0 - x) / fy : fam.f(x);
      };
      double denom = integrate(g, 1.0, y, quad_tol);
      if (!(denom > 0.0)) throw numeric_error("denominator integral is not positive");

      auto numerator = [&](double a) { return integrate(g, a, std::min(a * md, y), quad_tol); };

      // Derivative m g(am) - g(a) sampled on a log grid; sign changes are
      // bracketed and bisected to candidate maximizers.
      double a_hi = y / md;
      auto deriv = [&](double a) { return md * g(a * md) - g(a); };
      std::vector<double> cands{1.0, a_hi};
      const int SAMPLES = 256;
      double prev_a = 1.0, prev_d = deriv(1.0);
      for (int i = 1; i <= SAMPLES; ++i) {
        double a = std::exp(std::log(a_hi) * i / SAMPLES);
        if (a <= prev_a) continue;
        double d = deriv(a);
        if ((prev_d > 0.0 && d <= 0.0) || (prev_d < 0.0 && d >= 0.0)) {
          double lo = prev_a, hi2 = a, dlo = prev_d;
          for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi2);
            double dm = deriv(mid);
            if ((dlo > 0.0) == (dm > 0.0)) {
              lo = mid;
              dlo = dm;
            } else {
              hi2 = mid;
            }
          }
          cands.push_back(0.5 * (lo + hi2));
        }
        prev_a = a;
        prev_d = d;
      }

      // Grid fallback: cumulative integral table over log-spaced nodes, so
      // every numerator is a difference of two prefix values.
      const int GRID = 4096;
      std::vector<double> nodes;
      nodes.reserve(2 * GRID + 2);
      for (int i = 0; i <= GRID; ++i) {
        double a = std::exp(std::log(a_hi) * i / GRID);
        nodes.push_back(a);
        nodes.push_back(std::min(a * md, y));
      }
      nodes.push_back(y);
      std::sort(nodes.begin(), nodes.end());
      nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
      std::vector<double> prefix(nodes.size(), 0.0);
      // Per-segment tolerance: errors add across ~8k segments, so /64 keeps
      // the table accurate to ~1e-8 absolute, far below every use of it.
      for (std::size_t i = 1; i < nodes.size(); ++i)
        prefix[i] = prefix[i - 1] + integrate(g, nodes[i - 1], nodes[i], quad_tol / 64.0);
      auto prefix_at = [&](double x) {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), x - 1e-12);
        std::size_t i = static_cast<std::size_t>(it - nodes.begin());
        return prefix[std::min(i, prefix.size() - 1)];
      };
      double grid_best = 0.0, grid_best_a = 1.0;
      for (int i = 0; i <= GRID; ++i) {
        double a = std::exp(std::log(a_hi) * i / GRID);
        double v = prefix_at(a * md) - prefix_at(a);
        if (v > grid_best) {
          grid_best = v;
          grid_best_a = a;
        }
      }
      pt.m_value_grid = grid_best / denom;
      cands.push_back(grid_best_a);

      double best = -1.0, best_a = 1.0;
      for (double a : cands) {
        if (a < 1.0 || a > a_hi) continue;
        double v = numerator(a);
        if (v > best) {
          best = v;
          best_a = a;
        }
      }
      pt.m_value = best / denom;
      pt.maximizer_a = best_a;
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
    }
  }
  return rep;
}

Family regularize(const Family& fam, int limit_class, double ell, long long cutoff) {
  if (cutoff < 1) throw validation_error("regularization cutoff must be at least 1");
  if (limit_class == 0) {
    if (!(ell > 0.0) || !std::isfinite(ell))
      throw validation_error("finite limit value must be positive and finite");
    return Family::constant(ell);
  }
  if (limit_class != 1 && limit_class != 2)
    throw validation_error("limit_class must be 0 (finite), 1 (zero) or 2 (infinity)");

  // Sample the tail: consecutive integers near the cutoff, then log-spaced
  // out to the family's horizon, demanding the direction match the class.
  bool want_nonincreasing = limit_class == 1;
  std::vector<double> samples;
  for (long long x = cutoff; x <= cutoff + 1000 && x <= fam.max_index(); ++x)
    samples.push_back(static_cast<double>(x));
  double horizon = static_cast<double>(std::min<long long>(fam.max_index(), cutoff * 1000000));
  for (double x = static_cast<double>(cutoff + 1000); x < horizon; x *= 1.25)
    samples.push_back(x);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    double prev = fam.f(samples[i - 1]);
    double cur = fam.f(samples[i]);
    bool bad = want_nonincreasing ? cur > prev * (1.0 + 1e-12) + 1e-300
                                  : cur < prev * (1.0 - 1e-12) - 1e-300;
    if (bad)
      throw validation_error("family is not monotone beyond the cutoff: first violation near x = " +
                             std::to_string(samples[i]));
  }

  Family out;
  out.kind_ = family_kind::plateau;
  out.base_ = std::make_shared<Family>(fam);
  out.cutoff_ = cutoff;
  out.dir_ = want_nonincreasing ? monotonicity::non_increasing : monotonicity::non_decreasing;
  out.label_ = fam.label() + "|plateau:" + std::to_string(cutoff);
  return out;
}

}  // namespace emz
