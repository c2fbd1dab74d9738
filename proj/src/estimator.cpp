// estimator.cpp: exhaustive and Monte-Carlo density runs, and numerical
// Igusa-type integrals.
//
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "estimator.hpp"

#include "json.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <thread>
#include <utility>

namespace qpt::estimator {

using decision::TriState;
using elliptic::Kodaira;
using elliptic::MediumW;
using elliptic::ShortW;
using padic::ResidueInt;

namespace {

// p^k as u64, guarded well below overflow so that derived quantities
// (p^2k as u128, i64 residue values) stay representable.
u64 checked_power(u64 p, unsigned k) {
    u64 m = 1;
    for (unsigned i = 0; i < k; i++) {
        if (m > (u64(1) << 62) / p)
            throw domain_error("estimator: p^k exceeds 2^62");
        m *= p;
    }
    return m;
}

// Stratum of a resolved classification; nullopt when the type (or the
// split/nonsplit distinction) is still unknown at this precision.
std::optional<Stratum> stratum_of(const elliptic::Reduction& r) {
    switch (r.type) {
        case Kodaira::unknown:
            return std::nullopt;
        case Kodaira::good:
            return Stratum::good;
        case Kodaira::In:
            if (r.split == 1) return Stratum::split_mult;
            if (r.split == 0) return Stratum::nonsplit_mult;
            return std::nullopt;
        default:
            return Stratum::additive;
    }
}

struct Tally {
    u64 yes = 0, no = 0, undecided = 0;
    u64 members = 0;      // residues inside the requested stratum
    u64 unclassified = 0; // stratified runs: unresolved classification

    void count(TriState t) {
        members++;
        if (t.yes())
            yes++;
        else if (t.no())
            no++;
        else
            undecided++;
    }
    Tally& operator+=(const Tally& o) {
        yes += o.yes;
        no += o.no;
        undecided += o.undecided;
        members += o.members;
        unclassified += o.unclassified;
        return *this;
    }
};

// Runs `body(chunk_tally, begin, end)` over [0, n) split into `jobs`
// contiguous chunks, merging the chunk tallies.  Exceptions from worker
// threads are re-thrown on the calling thread.
template <class Body>
Tally run_chunked(u64 n, unsigned jobs, const Body& body) {
    if (jobs <= 1 || n < 2) {
        Tally t;
        body(t, u64(0), n);
        return t;
    }
    jobs = static_cast<unsigned>(std::min<u64>(jobs, n));
    std::vector<Tally> parts(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned c = 0; c < jobs; c++) {
        u64 begin = n / jobs * c + std::min<u64>(n % jobs, c);
        u64 end = n / jobs * (c + 1) + std::min<u64>(n % jobs, c + 1);
        pool.emplace_back([&, c, begin, end] {
            try {
                body(parts[c], begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    Tally t;
    for (const auto& part : parts) t += part;
    return t;
}

DensityEstimate finish(u64 p, unsigned k, Stratum stratum, Tally t,
                       u64 space_total) {
    DensityEstimate e;
    e.p = p;
    e.k = k;
    e.yes = t.yes;
    e.no = t.no;
    e.undecided = t.undecided;
    e.unclassified = t.unclassified;
    e.stratum = stratum;
    e.total = stratum == Stratum::all ? space_total : t.members;
    if (e.total == 0) {
        e.lower = 0;
        e.upper = 1;
    } else {
        e.lower = mpq_class(mpz_class(t.yes), mpz_class(e.total));
        e.lower.canonicalize();
        e.upper = mpq_class(mpz_class(t.yes + t.undecided), mpz_class(e.total));
        e.upper.canonicalize();
    }
    return e;
}

// Per-sample generator: mixing the index with the golden-ratio increment
// gives every sample its own SplitMix64 stream, so chunked execution
// draws exactly the same residues as a sequential pass.
SplitMix64 sample_stream(u64 seed, u64 index) {
    return SplitMix64(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

ShortW<ResidueInt> pair_box(u64 p, unsigned k, u64 a, u64 b) {
    return {padic::make_residue_i64(p, k, static_cast<i64>(a)),
            padic::make_residue_i64(p, k, static_cast<i64>(b))};
}

MediumW<ResidueInt> triple_box(unsigned k, u64 a2, u64 a4, u64 a6) {
    return {padic::make_residue_i64(3, k, static_cast<i64>(a2)),
            padic::make_residue_i64(3, k, static_cast<i64>(a4)),
            padic::make_residue_i64(3, k, static_cast<i64>(a6))};
}

void require_k(unsigned k) {
    if (k == 0) throw domain_error("estimator: precision k must be positive");
}

} // namespace

const char* stratum_name(Stratum s) {
    switch (s) {
        case Stratum::all: return "all";
        case Stratum::good: return "good";
        case Stratum::split_mult: return "split_mult";
        case Stratum::nonsplit_mult: return "nonsplit_mult";
        case Stratum::additive: return "additive";
    }
    return "?";
}

mpq_class DensityEstimate::point() const {
    mpq_class mid = (lower + upper) / 2;
    mid.canonicalize();
    return mid;
}

std::string to_json(const DensityEstimate& e) {
    nlohmann::ordered_json j;
    j["p"] = e.p;
    j["k"] = e.k;
    j["mode"] = e.monte_carlo ? "monte_carlo" : "exhaustive";
    if (e.monte_carlo) {
        j["samples"] = e.samples;
        j["seed"] = e.seed;
        j["generator"] = "splitmix64";
    }
    j["stratum"] = stratum_name(e.stratum);
    j["yes"] = e.yes;
    j["no"] = e.no;
    j["undecided"] = e.undecided;
    j["total"] = e.total;
    if (e.stratum != Stratum::all) j["unclassified"] = e.unclassified;
    auto frac = [](const mpq_class& q) {
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    };
    j["lower"] = frac(e.lower);
    j["upper"] = frac(e.upper);
    return j.dump();
}

DensityEstimate exhaustive_density(u64 p, unsigned k, const PairPredicate& pred,
                                   Stratum stratum, u64 budget, unsigned jobs) {
    if (p < 5 || !is_prime_u64(p))
        throw domain_error(
            "exhaustive_density: p must be a prime >= 5 "
            "(use exhaustive_density3 for p = 3)");
    require_k(k);
    u64 m = checked_power(p, k);
    u128 space = u128(m) * m;
    if (space > budget) throw domain_error("exhaustive_density: p^2k exceeds budget");
    u64 n = static_cast<u64>(space);

    Tally t = run_chunked(n, jobs, [&](Tally& out, u64 begin, u64 end) {
        for (u64 i = begin; i < end; i++) {
            auto W = pair_box(p, k, i % m, i / m);
            if (stratum != Stratum::all) {
                auto s = stratum_of(elliptic::classify_reduction(W));
                if (!s) {
                    out.unclassified++;
                    continue;
                }
                if (*s != stratum) continue;
            }
            out.count(pred(W));
        }
    });
    return finish(p, k, stratum, t, n);
}

DensityEstimate exhaustive_density3(unsigned k, const TriplePredicate& pred,
                                    Stratum stratum, u64 budget, unsigned jobs) {
    require_k(k);
    u64 m = checked_power(3, k);
    u128 space = u128(m) * m;
    if (space > budget / m)
        throw domain_error("exhaustive_density3: 3^3k exceeds budget");
    u64 n = static_cast<u64>(space) * m;

    Tally t = run_chunked(n, jobs, [&](Tally& out, u64 begin, u64 end) {
        for (u64 i = begin; i < end; i++) {
            auto E = triple_box(k, i % m, (i / m) % m, i / (m * m));
            if (stratum != Stratum::all) {
                auto s = stratum_of(elliptic::classify_reduction_p3(E));
                if (!s) {
                    out.unclassified++;
                    continue;
                }
                if (*s != stratum) continue;
            }
            out.count(pred(E));
        }
    });
    return finish(3, k, stratum, t, n);
}

DensityEstimate monte_carlo_density(u64 p, unsigned k, u64 n_samples, u64 seed,
                                    const PairPredicate& pred, unsigned jobs) {
    if (p < 5 || !is_prime_u64(p))
        throw domain_error(
            "monte_carlo_density: p must be a prime >= 5 "
            "(use monte_carlo_density3 for p = 3)");
    require_k(k);
    u64 m = checked_power(p, k);

    Tally t = run_chunked(n_samples, jobs, [&](Tally& out, u64 begin, u64 end) {
        for (u64 i = begin; i < end; i++) {
            SplitMix64 g = sample_stream(seed, i);
            u64 a = g.below(m), b = g.below(m);
            out.count(pred(pair_box(p, k, a, b)));
        }
    });
    DensityEstimate e = finish(p, k, Stratum::all, t, n_samples);
    e.monte_carlo = true;
    e.samples = n_samples;
    e.seed = seed;
    return e;
}

DensityEstimate monte_carlo_density3(unsigned k, u64 n_samples, u64 seed,
                                     const TriplePredicate& pred, unsigned jobs) {
    require_k(k);
    u64 m = checked_power(3, k);

    Tally t = run_chunked(n_samples, jobs, [&](Tally& out, u64 begin, u64 end) {
        for (u64 i = begin; i < end; i++) {
            SplitMix64 g = sample_stream(seed, i);
            u64 a2 = g.below(m), a4 = g.below(m), a6 = g.below(m);
            out.count(pred(triple_box(k, a2, a4, a6)));
        }
    });
    DensityEstimate e = finish(3, k, Stratum::all, t, n_samples);
    e.monte_carlo = true;
    e.samples = n_samples;
    e.seed = seed;
    return e;
}

// ---------------------------------------------------------------------------
// Igusa integrals
// ---------------------------------------------------------------------------

namespace {

// Evaluates the reduced polynomial at (u, v) mod pj, with coefficients
// already reduced into [0, pj).
u64 eval_terms(const std::vector<std::pair<u64, std::pair<unsigned, unsigned>>>& terms,
               u64 u, u64 v, u64 pj) {
    u64 acc = 0;
    for (const auto& [c, degs] : terms) {
        u64 t = mulmod(c, powmod(u, degs.first, pj), pj);
        t = mulmod(t, powmod(v, degs.second, pj), pj);
        acc = addmod(acc, t, pj);
    }
    return acc;
}

} // namespace

IgusaNumeric igusa_numeric(u64 p, const std::vector<IgusaTerm>& f, unsigned K) {
    if (!is_prime_u64(p)) throw domain_error("igusa_numeric: p must be prime");

    // Combine like monomials so that cancelling inputs are recognized as
    // the zero polynomial (a precondition violation) rather than looping
    // over a space where every residue vanishes.
    std::map<std::pair<unsigned, unsigned>, mpz_class> mono;
    for (const auto& t : f) mono[{t.du, t.dv}] += t.c;
    for (auto it = mono.begin(); it != mono.end();)
        it = it->second == 0 ? mono.erase(it) : std::next(it);
    if (mono.empty()) throw domain_error("igusa_numeric: f must be nonzero");

    IgusaNumeric out;
    out.value = 1;
    if (K == 0) {
        out.tail = 1; // min(v, 0) = 0 everywhere; the whole mass is boundary
        out.boundary = 1;
        return out;
    }

    // Split off the content p^c: v_p(f) = c + v_p(g) with g primitive,
    // so level j of f is level j - c of g (and trivially full below c).
    unsigned content = 0;
    {
        bool first = true;
        for (const auto& [deg, c] : mono) {
            unsigned v = padic::valuation_exact(c, p);
            content = first ? v : std::min(content, v);
            first = false;
        }
    }
    std::vector<IgusaTerm> g;
    mpz_class pc;
    mpz_ui_pow_ui(pc.get_mpz_t(), p, content);
    for (const auto& [deg, c] : mono) {
        mpz_class reduced;
        mpz_divexact(reduced.get_mpz_t(), c.get_mpz_t(), pc.get_mpz_t());
        g.push_back({reduced, deg.first, deg.second});
    }

    // Refine the vanishing locus of g level by level: survivors at level
    // j are the residues mod p^j where g vanishes mod p^j, and only they
    // can produce deeper vanishing.
    unsigned levels = K > content ? K - content : 0;
    checked_power(p, K); // representability guard for the moduli below
    std::vector<u64> Ng(levels + 1, 0);
    {
        std::vector<std::pair<u64, u64>> survivors = {{0, 0}};
        u64 pj = 1;
        for (unsigned j = 1; j <= levels; j++) {
            u64 pjm1 = pj;
            pj *= p;
            std::vector<std::pair<u64, std::pair<unsigned, unsigned>>> terms;
            terms.reserve(g.size());
            for (const auto& t : g)
                terms.push_back({mpz_fdiv_ui(t.c.get_mpz_t(), pj), {t.du, t.dv}});
            std::vector<std::pair<u64, u64>> next;
            for (const auto& [u0, v0] : survivors)
                for (u64 s = 0; s < p; s++)
                    for (u64 t = 0; t < p; t++) {
                        u64 u = u0 + s * pjm1, v = v0 + t * pjm1;
                        if (eval_terms(terms, u, v, pj) == 0) next.push_back({u, v});
                    }
            survivors = std::move(next);
            Ng[j] = survivors.size();
        }
    }

    // value = 1 - sum_j (p^-(j-1) - p^-j) * mu_j with mu_j the mass of
    // {v_p(f) >= j}: mu_j = 1 for j <= content, N_{j-content}/p^2(j-c)
    // above.
    mpz_class pz = p;
    for (unsigned j = 1; j <= K; j++) {
        mpz_class pj;
        mpz_ui_pow_ui(pj.get_mpz_t(), p, j);
        mpq_class weight(mpz_class(pz - 1), pj);
        weight.canonicalize();
        mpq_class mu = 1;
        if (j > content) {
            mpz_class sq;
            mpz_ui_pow_ui(sq.get_mpz_t(), p, 2 * (j - content));
            mu = mpq_class(mpz_class(Ng[j - content]), sq);
            mu.canonicalize();
        }
        out.value -= weight * mu;
    }
    out.value.canonicalize();

    // Boundary: residues mod p^K with v_p(f) >= K, i.e. N_levels scaled
    // back up by the content layers.
    mpz_class boundary = levels == 0 ? 1 : mpz_class(Ng[levels]);
    {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), p, 2 * (K - levels));
        boundary *= scale;
    }
    if (!boundary.fits_ulong_p())
        throw domain_error("igusa_numeric: boundary count overflows");
    out.boundary = mpz_get_ui(boundary.get_mpz_t());
    mpz_class p3K;
    mpz_ui_pow_ui(p3K.get_mpz_t(), p, 3 * K);
    out.tail = mpq_class(boundary, p3K);
    out.tail.canonicalize();
    return out;
}

} // namespace qpt::estimator
