// estimator.hpp: empirical Haar-measure measurement.
//
// The decision predicates answer yes/no/undecided on residue boxes, and
// each box has Haar measure p^-2k (pairs) or p^-3k (triples).  Summing
// boxes therefore yields rigorous two-sided brackets for the density of
// any decidable set: lower = decided-yes mass, upper = lower + undecided
// mass.  This header provides exhaustive enumeration of a whole residue
// space, deterministic Monte-Carlo sampling of it, and a numerical
// evaluator for integrals of |f(u,v)|_p that the closed forms in
// formulas.hpp are checked against.
//
// Pairs (a, b) suffice for p >= 5 and triples (a2, a4, a6) for p = 3:
// completing the square and depressing the cubic are measure-preserving
// on the coefficient space, so a five-coefficient sample is never needed.
//
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "common.hpp"
#include "decision.hpp"
#include "elliptic.hpp"
#include "padic.hpp"

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

namespace qpt::estimator {

// ---------------------------------------------------------------------------
// Strata
// ---------------------------------------------------------------------------

// Reduction-kind constraint for stratified runs.  A residue box belongs
// to a stratum when the classifier resolves its reduction type; boxes
// whose type is still unresolved at the working precision are counted
// separately (see DensityEstimate::unclassified) and excluded from every
// stratum denominator.
enum class Stratum : unsigned char {
    all,
    good,
    split_mult,
    nonsplit_mult,
    additive,
};

const char* stratum_name(Stratum s);

// ---------------------------------------------------------------------------
// Estimates
// ---------------------------------------------------------------------------

struct DensityEstimate {
    u64 p = 0;
    unsigned k = 0;           // working precision of the residue space
    bool monte_carlo = false; // false: exhaustive over the whole space
    u64 samples = 0;          // Monte-Carlo draws (0 for exhaustive)
    u64 seed = 0;             // Monte-Carlo seed (0 for exhaustive)

    // Tally of predicate answers over the denominator set.
    u64 yes = 0;
    u64 no = 0;
    u64 undecided = 0;

    // Denominator: p^2k (or 3^3k) for exhaustive runs, the sample count
    // for Monte-Carlo runs, and the number of definite stratum members
    // for stratified runs.
    u64 total = 0;

    // Stratified runs only: residues whose reduction type the classifier
    // could not resolve at precision k.  They are members of no stratum
    // and appear in no denominator.
    u64 unclassified = 0;

    Stratum stratum = Stratum::all;

    // yes/total and (yes + undecided)/total.  For unstratified runs the
    // true density lies in [lower, upper]; for stratified runs the
    // bracket is conditional on the classification being resolved.  An
    // empty denominator yields the vacuous bracket [0, 1].
    mpq_class lower;
    mpq_class upper;

    // Interval midpoint, the natural point estimate.
    mpq_class point() const;
};

// Serializes one estimate as a single-line JSON record.  Rationals are
// emitted as "num/den" strings so consumers never round them.  Output is
// deterministic: identical estimates serialize to identical bytes.
std::string to_json(const DensityEstimate& e);

// ---------------------------------------------------------------------------
// Exhaustive and Monte-Carlo density runs
// ---------------------------------------------------------------------------

// Predicates over one residue box.  When jobs > 1 the same callable is
// invoked concurrently from several threads, so any shared state it
// closes over (a decision::Ctx in particular) must be warmed or guarded
// by the caller first.
using PairPredicate =
    std::function<decision::TriState(const elliptic::ShortW<padic::ResidueInt>&)>;
using TriplePredicate =
    std::function<decision::TriState(const elliptic::MediumW<padic::ResidueInt>&)>;

// Largest residue space an exhaustive run will enumerate by default.
inline constexpr u64 kDefaultBudget = 10'000'000;

// Evaluates the predicate on every pair (a, b) in (Z/p^k)^2, p >= 5.
// Throws domain_error when p < 5, when p^k overflows, or when p^2k
// exceeds the budget.  The space is cut into contiguous chunks processed
// by `jobs` threads and merged by summing tallies, so the result is
// independent of the schedule.
DensityEstimate exhaustive_density(u64 p, unsigned k, const PairPredicate& pred,
                                   Stratum stratum = Stratum::all,
                                   u64 budget = kDefaultBudget,
                                   unsigned jobs = 1);

// Evaluates the predicate on every triple (a2, a4, a6) in (Z/3^k)^3.
// Same contract with p fixed at 3 and total 3^3k.
DensityEstimate exhaustive_density3(unsigned k, const TriplePredicate& pred,
                                    Stratum stratum = Stratum::all,
                                    u64 budget = kDefaultBudget,
                                    unsigned jobs = 1);

// Draws n_samples uniform pairs from (Z/p^k)^2 with a SplitMix64 stream
// derived from (seed, sample index) and tallies the predicate.  The
// estimate is a function of (p, k, n_samples, seed) only; in particular
// it does not depend on `jobs`.
DensityEstimate monte_carlo_density(u64 p, unsigned k, u64 n_samples, u64 seed,
                                    const PairPredicate& pred,
                                    unsigned jobs = 1);

// Triple-space Monte Carlo at p = 3.
DensityEstimate monte_carlo_density3(unsigned k, u64 n_samples, u64 seed,
                                     const TriplePredicate& pred,
                                     unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Numerical Igusa-type integrals
// ---------------------------------------------------------------------------

// One monomial c * u^du * v^dv of an integer polynomial in two variables.
struct IgusaTerm {
    mpz_class c;
    unsigned du = 0;
    unsigned dv = 0;
};

struct IgusaNumeric {
    // Truncated integral: sum over (u, v) mod p^K of p^-min(v_p(f), K),
    // divided by p^2K.  Exact rational, and an upper bound for the true
    // integral of |f|_p over Z_p^2.
    mpq_class value;

    // One-sided tail bound: value - tail <= integral <= value, with
    // tail = boundary / p^3K.
    mpq_class tail;

    // Number of residue pairs mod p^K with v_p(f) >= K.
    u64 boundary = 0;
};

// Computes the truncated integral of |f|_p over Z_p^2 at precision K by
// depth-first refinement of the vanishing locus: only residues with
// f = 0 (mod p^j) are subdivided, so the cost is governed by the measure
// of the zero set rather than p^2K.  Throws domain_error when f is the
// zero polynomial or p^K does not fit in 63 bits.
IgusaNumeric igusa_numeric(u64 p, const std::vector<IgusaTerm>& f, unsigned K);

} // namespace qpt::estimator
