#include "embezzlemeter.h"

#include <cstring>
#include <new>
#include <string>

#include "emz/conversion.hpp"
#include "emz/embezzlement.hpp"
#include "emz/families.hpp"
#include "emz/io.hpp"
#include "emz/oracles.hpp"
#include "emz/prob_vec.hpp"

struct emz_vec {
  emz::ProbVec v;
};

struct emz_family {
  emz::Family f;
};

namespace {

void put_err(char* err, size_t cap, const char* msg) {
  if (!err || cap == 0) return;
  std::strncpy(err, msg, cap - 1);
  err[cap - 1] = '\0';
}

// Uniform exception -> status mapping for every entry point.
template <typename Fn>
int guarded(char* err, size_t err_cap, Fn&& fn) {
  try {
    return fn();
  } catch (const emz::validation_error& e) {
    put_err(err, err_cap, e.what());
    return EMZ_ERR_VALIDATION;
  } catch (const emz::numeric_error& e) {
    put_err(err, err_cap, e.what());
    return EMZ_ERR_NUMERIC;
  } catch (const std::bad_alloc&) {
    put_err(err, err_cap, "out of memory");
    return EMZ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    put_err(err, err_cap, e.what());
    return EMZ_ERR_INTERNAL;
  }
}

void fill_report(const emz::ConversionReport& rep, emz_conversion_report* out) {
  out->d_star = rep.d_star;
  out->argmax_k = static_cast<long long>(rep.argmax_k);
  out->sandwich_lo = rep.sandwich_lo;
  out->sandwich_hi = rep.sandwich_hi;
  out->discrimination_bound = rep.discrimination_bound;
  out->has_purified = rep.d_star_purified.has_value() ? 1 : 0;
  out->d_star_purified = rep.d_star_purified.value_or(0.0);
  out->purified_converged = 1;
}

void fill_row(const emz::embezzle_evaluation& ev, emz_embezzle_row* out) {
  out->n = ev.n;
  out->m = ev.m;
  out->d_star = ev.d_star;
  out->argmax_k = ev.argmax_k;
  out->criterion = ev.criterion;
  out->argmax_l = ev.argmax_l;
  out->p1 = ev.p1;
  out->has_bound = ev.has_bound ? 1 : 0;
  out->bound = ev.bound;
}

}  // namespace

extern "C" {

const char* emz_version(void) { return emz::TOOL_VERSION; }

int emz_vec_create(const double* entries, size_t count, int renormalize, emz_vec** out,
                   char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    std::vector<double> vals(entries, entries + count);
    auto policy = renormalize ? emz::norm_policy::renormalize : emz::norm_policy::strict;
    *out = new emz_vec{emz::ProbVec::make(std::move(vals), policy)};
    return EMZ_OK;
  });
}

int emz_vec_load(const char* path, int renormalize, emz_vec** out, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    auto policy = renormalize ? emz::norm_policy::renormalize : emz::norm_policy::strict;
    *out = new emz_vec{emz::load_prob_vec(path, policy)};
    return EMZ_OK;
  });
}

void emz_vec_free(emz_vec* v) { delete v; }

size_t emz_vec_dim(const emz_vec* v) { return v->v.dim(); }
size_t emz_vec_rank(const emz_vec* v) { return v->v.rank(); }

int emz_vec_entries(const emz_vec* v, double* out, size_t cap) {
  if (cap < v->v.dim()) return EMZ_ERR_VALIDATION;
  for (size_t i = 0; i < v->v.dim(); ++i) out[i] = v->v.entries()[i];
  return EMZ_OK;
}

int emz_ky_fan(const emz_vec* v, size_t k, double* out, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = emz::ky_fan(v->v, k);
    return EMZ_OK;
  });
}

int emz_entanglement_monotone(const emz_vec* v, size_t k, double* out, char* err,
                              size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = emz::entanglement_monotone(v->v, k);
    return EMZ_OK;
  });
}

int emz_majorizes(const emz_vec* r, const emz_vec* p, int* out) {
  *out = emz::majorizes(r->v, p->v) ? 1 : 0;
  return EMZ_OK;
}

int emz_trace_distance(const emz_vec* p, const emz_vec* q, double* out) {
  *out = emz::trace_distance(p->v, q->v);
  return EMZ_OK;
}

int emz_fidelity(const emz_vec* p, const emz_vec* q, double* out) {
  *out = emz::fidelity(p->v, q->v);
  return EMZ_OK;
}

int emz_purified_distance(const emz_vec* p, const emz_vec* q, double* out) {
  *out = emz::purified_distance(p->v, q->v);
  return EMZ_OK;
}

int emz_steepest_approximation(const emz_vec* center, double epsilon, emz_vec** out, char* err,
                               size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = new emz_vec{emz::steepest_approximation({center->v, epsilon})};
    return EMZ_OK;
  });
}

int emz_nielsen_convertible(const emz_vec* psi, const emz_vec* phi, int* out) {
  *out = emz::nielsen_convertible(psi->v, phi->v) ? 1 : 0;
  return EMZ_OK;
}

int emz_star_distance(const emz_vec* psi, const emz_vec* phi, emz_conversion_report* out,
                      char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    fill_report(emz::star_distance(psi->v, phi->v), out);
    return EMZ_OK;
  });
}

int emz_star_distance_purified(const emz_vec* psi, const emz_vec* phi, double tol,
                               size_t budget, emz_conversion_report* out, char* err,
                               size_t err_cap) {
  return guarded(err, err_cap, [&] {
    emz::ConversionReport rep = emz::star_distance(psi->v, phi->v);
    emz::purified_options opt;
    if (tol > 0.0) opt.tol = tol;
    if (budget > 0) opt.budget = budget;
    emz::purified_result pr = emz::star_distance_purified(psi->v, phi->v, opt);
    rep.d_star_purified = std::max(pr.value, rep.d_star);
    fill_report(rep, out);
    out->purified_converged = pr.converged ? 1 : 0;
    if (!pr.converged) {
      put_err(err, err_cap, "purified optimizer did not reach tolerance within budget");
      return EMZ_ERR_NUMERIC;
    }
    return EMZ_OK;
  });
}

void emz_sandwich_bounds(double d_star, double* lo, double* hi) {
  emz::sandwich_bounds(d_star, *lo, *hi);
}

double emz_discrimination_bound(double d_value) { return emz::discrimination_bound(d_value); }

int emz_oracle_min_l1(const emz_vec* p, const emz_vec* q, int method, size_t resolution,
                      double* out, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (method != 0 && method != 1)
      throw emz::validation_error("oracle method must be 0 (grid) or 1 (lp)");
    auto m = method == 1 ? emz::oracle_method::lp : emz::oracle_method::grid;
    *out = emz::oracle_min_l1_over_majorizing(p->v, q->v, m, resolution);
    return EMZ_OK;
  });
}

int emz_oracle_max_fidelity(const emz_vec* p, const emz_vec* q, size_t resolution,
                            int refine_rounds, double* out, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = emz::oracle_max_fidelity_over_majorizing(p->v, q->v, resolution, refine_rounds);
    return EMZ_OK;
  });
}

int emz_ensemble_check(const emz_vec* psi, const char* ensemble_path, int renormalize,
                       int* convertible, long long* worst_k, double* margin, char* err,
                       size_t err_cap) {
  return guarded(err, err_cap, [&] {
    auto policy = renormalize ? emz::norm_policy::renormalize : emz::norm_policy::strict;
    emz::Ensemble e = emz::load_ensemble(ensemble_path, policy);
    emz::ensemble_verdict v = emz::ensemble_convertible(psi->v, e);
    *convertible = v.convertible ? 1 : 0;
    *worst_k = static_cast<long long>(v.worst_k);
    *margin = v.margin;
    return EMZ_OK;
  });
}

int emz_tensor_with_uniform(const emz_vec* p, long long m, emz_vec** out, char* err,
                            size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = new emz_vec{emz::tensor_with_uniform(p->v, m)};
    return EMZ_OK;
  });
}

int emz_tensor_with_e1(const emz_vec* p, long long m, emz_vec** out, char* err,
                       size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = new emz_vec{emz::tensor_with_e1(p->v, m)};
    return EMZ_OK;
  });
}

int emz_embezzle_distance(const emz_vec* p, long long m, emz_embezzle_row* out, char* err,
                          size_t err_cap) {
  return guarded(err, err_cap, [&] {
    fill_row(emz::embezzle_distance(p->v, m), out);
    return EMZ_OK;
  });
}

int emz_family_parse(const char* spec, emz_family** out, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = new emz_family{emz::Family::parse(spec)};
    return EMZ_OK;
  });
}

void emz_family_free(emz_family* f) { delete f; }

int emz_family_member(const emz_family* f, long long n, emz_vec** out, char* err,
                      size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = new emz_vec{f->f.member(n)};
    return EMZ_OK;
  });
}

int emz_family_evaluate(const emz_family* f, long long n, long long m, emz_embezzle_row* out,
                        char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    fill_row(emz::embezzle_evaluate(f->f, n, m), out);
    return EMZ_OK;
  });
}

int emz_power_limit(double alpha, long long m, emz_power_limits* out, char* err,
                    size_t err_cap) {
  return guarded(err, err_cap, [&] {
    emz::power_limit_result r = emz::analytic_limit_power(alpha, m);
    out->has_limit = r.limit.has_value() ? 1 : 0;
    out->limit = r.limit.value_or(0.0);
    out->lower = r.lower.value_or(0.0);
    out->upper = r.upper.value_or(1.0);
    return EMZ_OK;
  });
}

int emz_zeta(double s, double* out, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = emz::zeta(s);
    return EMZ_OK;
  });
}

int emz_integral_asymptotics(const emz_family* f, long long m, double y, double quad_tol,
                             double* m_value, double* maximizer_a, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    emz::asymptotics_report rep =
        emz::integral_asymptotics(f->f, m, {y}, quad_tol > 0 ? quad_tol : 1e-10);
    const emz::integral_point& pt = rep.points.at(0);
    if (!pt.ok) throw emz::validation_error(pt.error);
    *m_value = pt.m_value;
    *maximizer_a = pt.maximizer_a;
    return EMZ_OK;
  });
}

int emz_divergence_precheck(const emz_family* f, int* out, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = emz::divergence_precheck_flags_convergent(f->f) ? 1 : 0;
    return EMZ_OK;
  });
}

int emz_family_regularize(const emz_family* f, int limit_class, double ell, long long cutoff,
                          emz_family** out, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    *out = new emz_family{emz::regularize(f->f, limit_class, ell, cutoff)};
    return EMZ_OK;
  });
}

int emz_file_digest(const char* path, char* out, size_t out_cap, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    std::string d = emz::file_digest(path);
    if (out_cap <= d.size()) throw emz::validation_error("digest buffer too small");
    std::memcpy(out, d.c_str(), d.size() + 1);
    return EMZ_OK;
  });
}

}  // extern "C"
