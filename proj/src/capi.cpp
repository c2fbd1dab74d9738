// capi.cpp: the extern-C boundary of the shared library.
//
// Every entry point funnels through guard(), which translates C++
// exceptions into status codes and parks the message on the handle, so
// no exception ever crosses the ABI.  Returned strings are malloc'd and
// owned by the caller (qpt_string_free).
//
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "qptors.h"

#include "decision.hpp"
#include "elliptic.hpp"
#include "estimator.hpp"
#include "formulas.hpp"
#include "padic.hpp"
#include "verify.hpp"

#include "json.hpp"

#include <gmpxx.h>

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

struct qpt_ctx {
    qpt::decision::Ctx decide;
    std::string last_error;
};

namespace {

using namespace qpt;

qpt_status fail(qpt_ctx* ctx, qpt_status s, const char* msg) {
    if (ctx) ctx->last_error = msg;
    return s;
}

template <class Fn>
qpt_status guard(qpt_ctx* ctx, Fn&& fn) {
    if (!ctx) return QPT_EINVAL;
    ctx->last_error.clear();
    try {
        return fn();
    } catch (const domain_error& e) {
        ctx->last_error = e.what();
        return QPT_EDOMAIN;
    } catch (const precondition_error& e) {
        ctx->last_error = e.what();
        return QPT_EINVAL;
    } catch (const std::invalid_argument& e) {
        ctx->last_error = std::string("malformed number: ") + e.what();
        return QPT_EINVAL;
    } catch (const std::bad_alloc&) {
        ctx->last_error = "out of memory";
        return QPT_ENOMEM;
    } catch (const std::exception& e) {
        ctx->last_error = std::string("internal error: ") + e.what();
        return QPT_EINTERNAL;
    }
}

// malloc'd copy for the C side; nullptr on allocation failure.
char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

qpt_status emit(qpt_ctx* ctx, char** out, const std::string& s) {
    *out = dup_string(s);
    if (!*out) return fail(ctx, QPT_ENOMEM, "out of memory");
    return QPT_OK;
}

std::string frac(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpz_class parse_mpz(const char* s) {
    if (!s) throw std::invalid_argument("null string");
    return mpz_class(std::string(s)); // throws std::invalid_argument
}

// Tri-state answer plus (for "iso3") the kernel count as JSON.
std::string decide_json(decision::TriState t) {
    nlohmann::ordered_json j;
    j["answer"] = decision::answer_name(t.value);
    j["reason"] = decision::reason_name(t.reason);
    return j.dump();
}

estimator::PairPredicate make_pair_predicate(qpt_ctx* ctx,
                                             const std::string& pred, u64 ell) {
    using elliptic::ShortW;
    using padic::ResidueInt;
    if (pred == "tors3")
        return [ctx](const ShortW<ResidueInt>& W) {
            return decision::has_qp_3torsion(W, ctx->decide);
        };
    if (pred == "iso3")
        return [](const ShortW<ResidueInt>& W) {
            return decision::has_qp_3isogeny(W);
        };
    if (pred == "ell")
        return [ctx, ell](const ShortW<ResidueInt>& W) {
            return decision::has_qp_ell_torsion(W, ell, ctx->decide);
        };
    if (pred == "ptors")
        return [ctx](const ShortW<ResidueInt>& W) {
            return decision::has_qp_p_torsion(W, ctx->decide);
        };
    throw precondition_error("unknown predicate '" + pred +
                             "' (expected tors3, iso3, ell or ptors)");
}

} // namespace

extern "C" {

const char* qpt_version(void) { return "1.0.0"; }

unsigned qpt_schema_version(void) { return 1; }

qpt_ctx* qpt_ctx_new(void) { return new (std::nothrow) qpt_ctx; }

void qpt_ctx_free(qpt_ctx* ctx) { delete ctx; }

const char* qpt_last_error(const qpt_ctx* ctx) {
    return ctx ? ctx->last_error.c_str() : "";
}

void qpt_string_free(char* s) { std::free(s); }

qpt_status qpt_density(qpt_ctx* ctx, const char* mode, uint64_t p, char** out) {
    return guard(ctx, [&]() -> qpt_status {
        if (!mode || !out) return fail(ctx, QPT_EINVAL, "null argument");
        std::string m(mode);
        mpq_class d;
        if (m == "tors")
            d = formulas::density_tors(p);
        else if (m == "iso")
            d = formulas::density_iso(p);
        else
            return fail(ctx, QPT_EINVAL, "mode must be \"tors\" or \"iso\"");
        return emit(ctx, out, frac(d));
    });
}

qpt_status qpt_density_components(qpt_ctx* ctx, uint64_t p, char** out_json) {
    return guard(ctx, [&]() -> qpt_status {
        if (!out_json) return fail(ctx, QPT_EINVAL, "null argument");
        auto c = formulas::density_components(p);
        nlohmann::ordered_json j;
        j["good"] = frac(c.good);
        j["split_mult"] = frac(c.split_mult);
        j["nonsplit_mult"] = frac(c.nonsplit_mult);
        j["additive"] = frac(c.additive);
        j["total"] = frac(c.total);
        return emit(ctx, out_json, j.dump());
    });
}

qpt_status qpt_density_p3_components(qpt_ctx* ctx, char** out_json) {
    return guard(ctx, [&]() -> qpt_status {
        if (!out_json) return fail(ctx, QPT_EINVAL, "null argument");
        auto c = formulas::density_p3_components();
        nlohmann::ordered_json j;
        j["good"] = frac(c.good);
        j["additive_nonsingular"] = frac(c.additive_nonsingular);
        j["additive_singular"] = frac(c.additive_singular);
        j["split_mult_singular"] = frac(c.split_mult_singular);
        j["total"] = frac(c.total);
        return emit(ctx, out_json, j.dump());
    });
}

qpt_status qpt_w3p(qpt_ctx* ctx, uint64_t p, char** out) {
    return guard(ctx, [&]() -> qpt_status {
        if (!out) return fail(ctx, QPT_EINVAL, "null argument");
        return emit(ctx, out, formulas::w3p(p).get_str());
    });
}

qpt_status qpt_gamma(qpt_ctx* ctx, uint64_t ell, uint64_t s, uint64_t t,
                     uint64_t* out) {
    return guard(ctx, [&]() -> qpt_status {
        if (!out) return fail(ctx, QPT_EINVAL, "null argument");
        *out = formulas::gamma_count(ell, s, t);
        return QPT_OK;
    });
}

qpt_status qpt_asymptotic_density(qpt_ctx* ctx, uint64_t ell, uint64_t s_class,
                                  char** out) {
    return guard(ctx, [&]() -> qpt_status {
        if (!out) return fail(ctx, QPT_EINVAL, "null argument");
        return emit(ctx, out, frac(formulas::asymptotic_density(ell, s_class)));
    });
}

qpt_status qpt_twist_probability(qpt_ctx* ctx, const char* mode, uint64_t ell,
                                 uint64_t count, int p_is_1_mod_ell,
                                 char** out) {
    return guard(ctx, [&]() -> qpt_status {
        if (!mode || !out) return fail(ctx, QPT_EINVAL, "null argument");
        std::string m(mode);
        formulas::TwistMode tm;
        if (m == "roots")
            tm = formulas::TwistMode::roots_m;
        else if (m == "isogenies")
            tm = formulas::TwistMode::isogenies_n;
        else
            return fail(ctx, QPT_EINVAL,
                        "mode must be \"roots\" or \"isogenies\"");
        return emit(ctx, out,
                    frac(formulas::twist_probability(ell, count, tm,
                                                     p_is_1_mod_ell != 0)));
    });
}

qpt_status qpt_rational_decimal(qpt_ctx* ctx, const char* rational,
                                unsigned digits, char** out) {
    return guard(ctx, [&]() -> qpt_status {
        if (!rational || !out) return fail(ctx, QPT_EINVAL, "null argument");
        mpq_class q{std::string(rational)}; // throws on malformed input
        if (q.get_den() == 0)
            return fail(ctx, QPT_EINVAL, "zero denominator");
        q.canonicalize();
        bool negative = q < 0;
        mpz_class num = abs(q.get_num()), den = q.get_den();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
        // Round half away from zero at the last digit.
        mpz_class scaled = (num * scale * 2 + den) / (2 * den);
        std::string s = scaled.get_str();
        if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
        if (digits > 0) s.insert(s.size() - digits, ".");
        if (negative) s.insert(0, "-");
        return emit(ctx, out, s);
    });
}

qpt_status qpt_igusa_closed_form(qpt_ctx* ctx, uint64_t p, unsigned k,
                                 unsigned m, unsigned n, unsigned d,
                                 char** out) {
    return guard(ctx, [&]() -> qpt_status {
        if (!out) return fail(ctx, QPT_EINVAL, "null argument");
        return emit(ctx, out, frac(formulas::igusa_closed_form(p, k, m, n, d)));
    });
}

qpt_status qpt_decide_pair(qpt_ctx* ctx, const char* predicate, uint64_t p,
                           unsigned k, uint64_t ell, const char* a,
                           const char* b, char** out_json) {
    return guard(ctx, [&]() -> qpt_status {
        if (!predicate || !out_json)
            return fail(ctx, QPT_EINVAL, "null argument");
        if (k == 0) return fail(ctx, QPT_EINVAL, "precision k must be positive");
        elliptic::ShortW<padic::ResidueInt> W{
            padic::make_residue(p, k, parse_mpz(a)),
            padic::make_residue(p, k, parse_mpz(b))};
        std::string pred(predicate);
        if (pred == "iso3") {
            auto t = decision::has_qp_3isogeny(W);
            auto c = decision::count_qp_3isogenies(W);
            nlohmann::ordered_json j;
            j["answer"] = decision::answer_name(t.value);
            j["reason"] = decision::reason_name(t.reason);
            j["count"] = c.count;
            j["count_exact"] = c.exact;
            return emit(ctx, out_json, j.dump());
        }
        auto t = make_pair_predicate(ctx, pred, ell)(W);
        return emit(ctx, out_json, decide_json(t));
    });
}

qpt_status qpt_decide_triple(qpt_ctx* ctx, unsigned k, const char* a2,
                             const char* a4, const char* a6, char** out_json) {
    return guard(ctx, [&]() -> qpt_status {
        if (!out_json) return fail(ctx, QPT_EINVAL, "null argument");
        if (k == 0) return fail(ctx, QPT_EINVAL, "precision k must be positive");
        elliptic::MediumW<padic::ResidueInt> E{
            padic::make_residue(3, k, parse_mpz(a2)),
            padic::make_residue(3, k, parse_mpz(a4)),
            padic::make_residue(3, k, parse_mpz(a6))};
        return emit(ctx, out_json, decide_json(decision::has_q3_3torsion(E)));
    });
}

qpt_status qpt_estimate(qpt_ctx* ctx, const qpt_estimate_params* params,
                        char** out_json) {
    return guard(ctx, [&]() -> qpt_status {
        if (!params || !params->predicate || !out_json)
            return fail(ctx, QPT_EINVAL, "null argument");
        std::string pred(params->predicate);
        u64 budget = params->budget ? params->budget : estimator::kDefaultBudget;
        unsigned jobs = params->jobs ? params->jobs : 1;

        estimator::Stratum stratum = estimator::Stratum::all;
        if (params->stratum && std::string(params->stratum) != "all") {
            std::string s(params->stratum);
            if (s == "good")
                stratum = estimator::Stratum::good;
            else if (s == "split_mult")
                stratum = estimator::Stratum::split_mult;
            else if (s == "nonsplit_mult")
                stratum = estimator::Stratum::nonsplit_mult;
            else if (s == "additive")
                stratum = estimator::Stratum::additive;
            else
                return fail(ctx, QPT_EINVAL, "unknown stratum");
            if (params->monte_carlo)
                return fail(ctx, QPT_EINVAL,
                            "strata are available in exhaustive mode only");
        }

        estimator::DensityEstimate e;
        if (params->p == 3) {
            if (pred != "tors3")
                return fail(ctx, QPT_EINVAL,
                            "p = 3 supports the \"tors3\" predicate only");
            auto p3 = [](const elliptic::MediumW<padic::ResidueInt>& E) {
                return decision::has_q3_3torsion(E);
            };
            e = params->monte_carlo
                    ? estimator::monte_carlo_density3(params->k, params->samples,
                                                      params->seed, p3, jobs)
                    : estimator::exhaustive_density3(params->k, p3, stratum,
                                                     budget, jobs);
        } else {
            auto pp = make_pair_predicate(ctx, pred, params->ell);
            // The decision caches mutate on first use; fill them before
            // fanning out so worker threads only read.
            if (jobs > 1 && params->p <= 4096 &&
                (pred == "tors3" || pred == "ell" || pred == "ptors"))
                ctx->decide.warm(params->p);
            e = params->monte_carlo
                    ? estimator::monte_carlo_density(params->p, params->k,
                                                     params->samples,
                                                     params->seed, pp, jobs)
                    : estimator::exhaustive_density(params->p, params->k, pp,
                                                    stratum, budget, jobs);
        }
        return emit(ctx, out_json, estimator::to_json(e));
    });
}

namespace {

// Shared body of the two igusa entry points: run the truncated integral
// and render it as an ordered JSON record.
qpt_status igusa_common(qpt_ctx* ctx, uint64_t p, const int64_t* coeffs,
                        const unsigned* du, const unsigned* dv,
                        unsigned n_terms, unsigned K, char** out_json,
                        estimator::IgusaNumeric* out,
                        nlohmann::ordered_json* j) {
    if (!out_json || (n_terms > 0 && (!coeffs || !du || !dv)))
        return fail(ctx, QPT_EINVAL, "null argument");
    std::vector<estimator::IgusaTerm> f;
    f.reserve(n_terms);
    for (unsigned i = 0; i < n_terms; i++)
        f.push_back({mpz_class(static_cast<long>(coeffs[i])), du[i], dv[i]});
    *out = estimator::igusa_numeric(p, f, K);
    (*j)["value"] = frac(out->value);
    (*j)["tail"] = frac(out->tail);
    (*j)["boundary"] = out->boundary;
    return QPT_OK;
}

}  // namespace

qpt_status qpt_igusa_numeric(qpt_ctx* ctx, uint64_t p, const int64_t* coeffs,
                             const unsigned* du, const unsigned* dv,
                             unsigned n_terms, unsigned K, char** out_json) {
    return guard(ctx, [&]() -> qpt_status {
        estimator::IgusaNumeric ig;
        nlohmann::ordered_json j;
        qpt_status s =
            igusa_common(ctx, p, coeffs, du, dv, n_terms, K, out_json, &ig, &j);
        if (s != QPT_OK) return s;
        return emit(ctx, out_json, j.dump());
    });
}

qpt_status qpt_igusa_numeric_vs_closed(qpt_ctx* ctx, uint64_t p,
                                       const int64_t* coeffs,
                                       const unsigned* du, const unsigned* dv,
                                       unsigned n_terms, unsigned K,
                                       unsigned ck, unsigned cm, unsigned cn,
                                       unsigned cd, char** out_json) {
    return guard(ctx, [&]() -> qpt_status {
        estimator::IgusaNumeric ig;
        nlohmann::ordered_json j;
        qpt_status s =
            igusa_common(ctx, p, coeffs, du, dv, n_terms, K, out_json, &ig, &j);
        if (s != QPT_OK) return s;
        mpq_class closed = formulas::igusa_closed_form(p, ck, cm, cn, cd);
        // One-sided truncation: value >= integral >= value - tail, so the
        // closed form agrees iff it lands in that window.
        j["closed"] = frac(closed);
        j["within_tail"] = (closed <= ig.value && ig.value - closed <= ig.tail);
        return emit(ctx, out_json, j.dump());
    });
}

qpt_status qpt_verify(qpt_ctx* ctx, const char* suite, uint64_t p, unsigned k,
                      uint64_t samples, uint64_t seed, char** out_json,
                      char** out_text, int* out_pass) {
    return guard(ctx, [&]() -> qpt_status {
        if (!suite) return fail(ctx, QPT_EINVAL, "null argument");
        auto report = verify::run(suite, p, k, samples, seed);
        if (out_json) {
            qpt_status s = emit(ctx, out_json, verify::to_json(report));
            if (s != QPT_OK) return s;
        }
        if (out_text) {
            qpt_status s = emit(ctx, out_text, verify::to_text(report));
            if (s != QPT_OK) {
                if (out_json) {
                    qpt_string_free(*out_json);
                    *out_json = nullptr;
                }
                return s;
            }
        }
        if (out_pass) *out_pass = report.pass() ? 1 : 0;
        return QPT_OK;
    });
}

} // extern "C"
