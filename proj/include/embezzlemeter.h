/* embezzlemeter: exact LOCC convertibility, star conversion distance and
 * embezzlement diagnostics for Schmidt coefficient vectors.
 *
 * Conventions: every function returns an emz status code. Out-parameters are
 * written only on EMZ_OK unless stated otherwise. Functions taking (err,
 * err_cap) write a NUL-terminated message into err on failure when err_cap >
 * 0. Handles are created and destroyed by this library; they are immutable
 * and safe to share across threads once created.
 */
#ifndef EMBEZZLEMETER_H
#define EMBEZZLEMETER_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define EMZ_OK 0
#define EMZ_ERR_VALIDATION 2 /* bad input: not a distribution, bad parameter, bad file */
#define EMZ_ERR_NUMERIC 3    /* numeric non-convergence within budget */
#define EMZ_ERR_INTERNAL 4

const char* emz_version(void);

/* ---- probability vectors (sorted Schmidt coefficient vectors) ---- */

typedef struct emz_vec emz_vec;

/* renormalize = 0: entries must sum to 1 within 1e-12. renormalize = 1:
 * rescale by the sum. Entries in [-1e-12, 0) clamp to zero; anything lower
 * is rejected. Entries are sorted non-increasingly on construction. */
int emz_vec_create(const double* entries, size_t count, int renormalize, emz_vec** out,
                   char* err, size_t err_cap);
/* Accepts a JSON array of decimals or a one-column CSV. */
int emz_vec_load(const char* path, int renormalize, emz_vec** out, char* err, size_t err_cap);
void emz_vec_free(emz_vec* v);
size_t emz_vec_dim(const emz_vec* v);
size_t emz_vec_rank(const emz_vec* v);
int emz_vec_entries(const emz_vec* v, double* out, size_t cap);

/* ---- majorization primitives ---- */

/* Sum of the k largest entries; k may be 0 (gives 0) up to dim. */
int emz_ky_fan(const emz_vec* v, size_t k, double* out, char* err, size_t err_cap);
/* 1 - ky_fan(k), 1 <= k <= dim. */
int emz_entanglement_monotone(const emz_vec* v, size_t k, double* out, char* err,
                              size_t err_cap);
/* *out = 1 iff r majorizes p (prefix domination within 1e-12, zero padded). */
int emz_majorizes(const emz_vec* r, const emz_vec* p, int* out);
int emz_trace_distance(const emz_vec* p, const emz_vec* q, double* out);
int emz_fidelity(const emz_vec* p, const emz_vec* q, double* out);
int emz_purified_distance(const emz_vec* p, const emz_vec* q, double* out);
/* The ball member that majorizes the whole trace-distance ball. */
int emz_steepest_approximation(const emz_vec* center, double epsilon, emz_vec** out, char* err,
                               size_t err_cap);

/* ---- conversion ---- */

/* *out = 1 iff psi converts to phi deterministically by LOCC. */
int emz_nielsen_convertible(const emz_vec* psi, const emz_vec* phi, int* out);

typedef struct {
  double d_star;
  long long argmax_k;
  double sandwich_lo;           /* d_star^2 / 2 */
  double sandwich_hi;           /* sqrt(2 d_star), unclamped */
  double discrimination_bound;  /* (1 + d_star) / 2 */
  int has_purified;
  double d_star_purified;
  int purified_converged;
} emz_conversion_report;

int emz_star_distance(const emz_vec* psi, const emz_vec* phi, emz_conversion_report* out,
                      char* err, size_t err_cap);
/* As above, plus the purified refinement. Non-convergence within the budget
 * returns EMZ_ERR_NUMERIC with the report still filled with the best value.
 * A tol/budget of 0 selects the defaults (1e-8, 100000 evaluations). */
int emz_star_distance_purified(const emz_vec* psi, const emz_vec* phi, double tol,
                               size_t budget, emz_conversion_report* out, char* err,
                               size_t err_cap);

void emz_sandwich_bounds(double d_star, double* lo, double* hi);
double emz_discrimination_bound(double d_value);

/* Brute-force reference optimizers. method: 0 = grid (padded dim <= 3),
 * 1 = LP (any dim). resolution 0 selects the default grid. */
int emz_oracle_min_l1(const emz_vec* p, const emz_vec* q, int method, size_t resolution,
                      double* out, char* err, size_t err_cap);
int emz_oracle_max_fidelity(const emz_vec* p, const emz_vec* q, size_t resolution,
                            int refine_rounds, double* out, char* err, size_t err_cap);

/* Ensemble convertibility; file holds {"members":[{"weight":w,"state":[..]},..]}. */
int emz_ensemble_check(const emz_vec* psi, const char* ensemble_path, int renormalize,
                       int* convertible, long long* worst_k, double* margin, char* err,
                       size_t err_cap);

/* ---- embezzlement ---- */

int emz_tensor_with_uniform(const emz_vec* p, long long m, emz_vec** out, char* err,
                            size_t err_cap);
int emz_tensor_with_e1(const emz_vec* p, long long m, emz_vec** out, char* err, size_t err_cap);

typedef struct {
  long long n;
  long long m;
  double d_star;
  long long argmax_k;
  double criterion;
  long long argmax_l;
  double p1;
  int has_bound;
  double bound;
} emz_embezzle_row;

int emz_embezzle_distance(const emz_vec* p, long long m, emz_embezzle_row* out, char* err,
                          size_t err_cap);

/* ---- coefficient families ---- */

typedef struct emz_family emz_family;

/* spec: "vdh" | "power:a" | "log:k" | "osc" | "custom:file" */
int emz_family_parse(const char* spec, emz_family** out, char* err, size_t err_cap);
void emz_family_free(emz_family* f);
int emz_family_member(const emz_family* f, long long n, emz_vec** out, char* err,
                      size_t err_cap);
int emz_family_evaluate(const emz_family* f, long long n, long long m, emz_embezzle_row* out,
                        char* err, size_t err_cap);

/* Exact asymptotics for the power family; non-power specs are rejected.
 * has_limit = 0 leaves only the zeta bounds (alpha < -1). */
typedef struct {
  int has_limit;
  double limit;
  double lower;
  double upper;
} emz_power_limits;
int emz_power_limit(double alpha, long long m, emz_power_limits* out, char* err,
                    size_t err_cap);

int emz_zeta(double s, double* out, char* err, size_t err_cap);

/* Continuum proxy M(y) and its maximizer for one y. */
int emz_integral_asymptotics(const emz_family* f, long long m, double y, double quad_tol,
                             double* m_value, double* maximizer_a, char* err, size_t err_cap);

/* *out = 1 when the normalizer looks convergent (family cannot embezzle). */
int emz_divergence_precheck(const emz_family* f, int* out, char* err, size_t err_cap);

/* limit_class: 0 finite (plateau at ell), 1 zero, 2 infinity. */
int emz_family_regularize(const emz_family* f, int limit_class, double ell, long long cutoff,
                          emz_family** out, char* err, size_t err_cap);

/* ---- support ---- */

/* "fnv1a64:<hex>" content digest, for run manifests. */
int emz_file_digest(const char* path, char* out, size_t out_cap, char* err, size_t err_cap);

#ifdef __cplusplus
}
#endif

#endif /* EMBEZZLEMETER_H */
