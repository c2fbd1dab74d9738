/* qptors.h: C interface to the qptors library.
 *
 * Densities of elliptic curves over Q_p with a rational 3-torsion point
 * or a rational 3-isogeny: exact closed forms, tri-state decision
 * procedures on p-adic coefficient boxes, empirical density estimates,
 * and self-verification suites.
 *
 * Conventions:
 *   - Every function returns a qpt_status; results travel through out
 *     parameters.  No function throws or aborts.
 *   - A qpt_ctx handle carries reusable caches and the error message of
 *     the most recent failing call on that handle (qpt_last_error).
 *     Handles are not thread-safe; use one per thread.
 *   - Strings returned through `char **out` are allocated by the
 *     library and must be released with qpt_string_free.
 *   - Exact rationals are rendered as "num/den" strings; JSON output is
 *     a single line and byte-deterministic for identical inputs.
 *
 * (C) 2026 the qptors authors
 * Licensed under the Apache License, Version 2.0 (see
 * LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
 */

#ifndef QPTORS_H
#define QPTORS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef QPTORS_API
#define QPTORS_API __attribute__((visibility("default")))
#endif

typedef enum qpt_status {
    QPT_OK = 0,
    QPT_EINVAL = 1,   /* null pointer, unknown name, malformed number */
    QPT_EDOMAIN = 2,  /* mathematical domain violation (p = 2, ...) or
                         budget overflow; see qpt_last_error */
    QPT_ENOMEM = 3,
    QPT_EINTERNAL = 4 /* exception that should not happen; please report */
} qpt_status;

/* Library version ("1.0.0") and JSON schema version (1). */
QPTORS_API const char* qpt_version(void);
QPTORS_API unsigned qpt_schema_version(void);

/* ------------------------------------------------------------------ */
/* Context handle                                                      */
/* ------------------------------------------------------------------ */

typedef struct qpt_ctx qpt_ctx;

QPTORS_API qpt_ctx* qpt_ctx_new(void);
QPTORS_API void qpt_ctx_free(qpt_ctx* ctx);

/* Message of the most recent failing call on this handle; the empty
 * string when the last call succeeded.  The pointer stays valid until
 * the next call on the handle. */
QPTORS_API const char* qpt_last_error(const qpt_ctx* ctx);

QPTORS_API void qpt_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Exact densities and counts                                          */
/* ------------------------------------------------------------------ */

/* mode "tors": density of curves over Q_p with a rational 3-torsion
 * point (p >= 3); mode "iso": with a rational 3-isogeny (p >= 5).
 * *out receives "num/den". */
QPTORS_API qpt_status qpt_density(qpt_ctx* ctx, const char* mode, uint64_t p,
                                  char** out);

/* Reduction-type components of the 3-torsion density for p >= 5, as a
 * JSON object {"good": "num/den", "split_mult": ..., "nonsplit_mult":
 * ..., "additive": ..., "total": ...}. */
QPTORS_API qpt_status qpt_density_components(qpt_ctx* ctx, uint64_t p,
                                             char** out_json);

/* The p = 3 component decomposition, same shape with keys {"good",
 * "additive_nonsingular", "additive_singular", "split_mult_singular",
 * "total"}. */
QPTORS_API qpt_status qpt_density_p3_components(qpt_ctx* ctx, char** out_json);

/* Number of (a, b) in F_p^2 with nonzero discriminant whose curve has a
 * point of order 3 (p >= 5); decimal string (the value is integral). */
QPTORS_API qpt_status qpt_w3p(qpt_ctx* ctx, uint64_t p, char** out);

/* gamma_{s,t}: number of matrices in GL_2(F_ell) with determinant s
 * and trace t (ell odd prime, 1 <= s < ell, 0 <= t < ell). */
QPTORS_API qpt_status qpt_gamma(qpt_ctx* ctx, uint64_t ell, uint64_t s,
                                uint64_t t, uint64_t* out);

/* Large-p density of ell-torsion for p in the residue class s_class
 * (mod ell): 1/(ell-1) - [s_class = 1]/(ell^2-1), as "num/den". */
QPTORS_API qpt_status qpt_asymptotic_density(qpt_ctx* ctx, uint64_t ell,
                                             uint64_t s_class, char** out);

/* Probability that a random quadratic twist retains ell-torsion.
 * mode "roots": count = number of Q_p-rational roots of psi_ell;
 * mode "isogenies": ell = 3, count = number of rational 3-isogenies.
 * p_is_1_mod_ell: nonzero when p = 1 (mod ell). */
QPTORS_API qpt_status qpt_twist_probability(qpt_ctx* ctx, const char* mode,
                                            uint64_t ell, uint64_t count,
                                            int p_is_1_mod_ell, char** out);

/* Renders an exact rational "num/den" (or plain "num") as a decimal
 * string with `digits` places after the point, rounded half away from
 * zero: "25/62" with 12 digits gives "0.403225806452". */
QPTORS_API qpt_status qpt_rational_decimal(qpt_ctx* ctx, const char* rational,
                                           unsigned digits, char** out);

/* Closed form of the Igusa-type integral with parameters (k, m, n, d);
 * requires d > 1 when k > 0 and n <= p when m > 0.  "num/den". */
QPTORS_API qpt_status qpt_igusa_closed_form(qpt_ctx* ctx, uint64_t p,
                                            unsigned k, unsigned m, unsigned n,
                                            unsigned d, char** out);

/* ------------------------------------------------------------------ */
/* Decision procedures                                                 */
/* ------------------------------------------------------------------ */

/* Predicates on the residue box of y^2 = x^3 + ax + b mod p^k, p >= 5.
 * a and b are decimal integers (arbitrary size, optional sign).
 *
 *   "tors3"  has a Q_p-rational point of order 3
 *   "iso3"   admits a Q_p-rational 3-isogeny (JSON adds the kernel
 *            count and whether it is exact)
 *   "ell"    has a point of order `ell` (ell >= 5 prime, ell != p)
 *   "ptors"  has a point of order p (p in {5, 7})
 *
 * The answer is constant across every Z_p lift of the box or the call
 * reports "undecided" with a reason.  *out_json receives
 * {"answer": "yes|no|undecided", "reason": "...", ...}. */
QPTORS_API qpt_status qpt_decide_pair(qpt_ctx* ctx, const char* predicate,
                                      uint64_t p, unsigned k, uint64_t ell,
                                      const char* a, const char* b,
                                      char** out_json);

/* 3-torsion over Q_3 on the box of y^2 = x^3 + a2 x^2 + a4 x + a6
 * mod 3^k (k >= 8 recommended for small undecided mass). */
QPTORS_API qpt_status qpt_decide_triple(qpt_ctx* ctx, unsigned k,
                                        const char* a2, const char* a4,
                                        const char* a6, char** out_json);

/* ------------------------------------------------------------------ */
/* Density estimation                                                  */
/* ------------------------------------------------------------------ */

typedef struct qpt_estimate_params {
    uint64_t p;            /* prime: 3 uses the triple space */
    unsigned k;            /* residue precision */
    const char* predicate; /* as in qpt_decide_pair; at p = 3 only
                              "tors3" is available */
    uint64_t ell;          /* for predicate "ell" */
    int monte_carlo;       /* 0: exhaustive enumeration */
    uint64_t samples;      /* Monte-Carlo draws */
    uint64_t seed;         /* Monte-Carlo seed */
    const char* stratum;   /* NULL/"all", or one of "good",
                              "split_mult", "nonsplit_mult", "additive"
                              (exhaustive mode only) */
    uint64_t budget;       /* max residues enumerated; 0 = 10^7 */
    unsigned jobs;         /* worker threads; 0 = 1 */
} qpt_estimate_params;

/* Runs a density estimate and returns the DensityEstimate JSON record
 * (fields p, k, mode, seed, yes, no, undecided, lower, upper, ...);
 * rationals are "num/den" strings.  Identical parameters produce
 * byte-identical output regardless of `jobs`. */
QPTORS_API qpt_status qpt_estimate(qpt_ctx* ctx,
                                   const qpt_estimate_params* params,
                                   char** out_json);

/* Truncated integral of |f(u,v)|_p over Z_p^2 at precision K, where f
 * is sum coeffs[i] * u^du[i] * v^dv[i] with n terms.  The JSON carries
 * {"value": "num/den", "tail": "num/den", "boundary": count}; the true
 * integral lies in [value - tail, value]. */
QPTORS_API qpt_status qpt_igusa_numeric(qpt_ctx* ctx, uint64_t p,
                                        const int64_t* coeffs,
                                        const unsigned* du, const unsigned* dv,
                                        unsigned n_terms, unsigned K,
                                        char** out_json);

/* As qpt_igusa_numeric, additionally comparing against the closed form
 * with parameters (ck, cm, cn, cd): the JSON gains "closed" and
 * "within_tail" (true when value - tail <= closed <= value, i.e. the
 * two computations agree up to the stated truncation error). */
QPTORS_API qpt_status qpt_igusa_numeric_vs_closed(
    qpt_ctx* ctx, uint64_t p, const int64_t* coeffs, const unsigned* du,
    const unsigned* dv, unsigned n_terms, unsigned K, unsigned ck, unsigned cm,
    unsigned cn, unsigned cd, char** out_json);

/* ------------------------------------------------------------------ */
/* Verification                                                        */
/* ------------------------------------------------------------------ */

/* Runs a named self-check suite ("formulas", "counts", "estimator" or
 * "all") at prime p.  k, samples, seed parametrize the estimator
 * checks (0 picks defaults).  The report is returned in both forms;
 * pass NULL for one you do not need.  *out_pass receives 1 when every
 * executed check passed.  A failing check is QPT_OK with *out_pass = 0;
 * only invalid arguments give an error status. */
QPTORS_API qpt_status qpt_verify(qpt_ctx* ctx, const char* suite, uint64_t p,
                                 unsigned k, uint64_t samples, uint64_t seed,
                                 char** out_json, char** out_text,
                                 int* out_pass);

#ifdef __cplusplus
}
#endif

#endif /* QPTORS_H */
