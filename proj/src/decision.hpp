// decision.hpp: tri-state predicates on Weierstrass models given to finite
// p-adic precision.
//
// Each predicate treats its input residues as the set of all integer lifts
// and answers yes/no only when the answer is the same for every lift;
// otherwise it returns undecided together with the reason the precision was
// insufficient.  A yes/no obtained at precision k is therefore reproduced at
// every higher precision of the same integers, which is what makes the
// estimator's interval semantics exact rather than heuristic.
//
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "common.hpp"
#include "elliptic.hpp"
#include "padic.hpp"

#include <map>
#include <vector>

namespace qpt::decision {

enum class Answer : unsigned char { yes, no, undecided };

// Why a predicate could not decide at the given precision.
enum class Reason : unsigned char {
    none,                       // decided
    disc_vanishes_at_precision, // v(disc) (hence n, or the type) unresolved
    valuation_unresolved,       // a needed digit lies beyond the known ones
    root_budget,                // root isolation exhausted its budget
};

struct TriState {
    Answer value = Answer::undecided;
    Reason reason = Reason::none; // meaningful only when value == undecided

    bool yes() const { return value == Answer::yes; }
    bool no() const { return value == Answer::no; }
    bool decided() const { return value != Answer::undecided; }
};

inline TriState tri(bool b) {
    return {b ? Answer::yes : Answer::no, Reason::none};
}
inline TriState tri_undecided(Reason r) { return {Answer::undecided, r}; }

const char* answer_name(Answer a);
const char* reason_name(Reason r);

// Shared lookup context.  Caches, per prime p, the table of group orders
// #E_{a,b}(F_p) for y^2 = x^3 + ax + b (0 marks singular pairs), so that the
// good-reduction branches cost O(1) after the first call at a given p.
// Lookups mutate the cache on first use of a prime: warm the cache before
// sharing a Ctx across threads; afterwards reads are safe.
class Ctx {
public:
    // #E_{a,b}(F_p) with a = a_mod_p, b = b_mod_p; 0 if the pair is singular.
    // For p beyond the table cap the order is computed directly, uncached.
    u64 curve_order(u64 p, u64 a_mod_p, u64 b_mod_p);

    // Force the table for p into the cache (no-op beyond the cap).
    void warm(u64 p);

private:
    static constexpr u64 kTableCap = 4096;
    std::map<u64, std::vector<u32>> tables_;
};

// --- Q_p-rational 3-torsion, p >= 5 ------------------------------------
//
// good:       yes iff 3 | #E~(F_p)
// split I_n:  yes if p = 1 (mod 3), else yes iff 3 | n = v(disc)
// nonsplit:   yes iff p = 2 (mod 3)   (3 | p+1)
// additive:   yes iff the Tamagawa number is 3 (types IV / IV*)
TriState has_qp_3torsion(const elliptic::ShortW<padic::ResidueInt>& W, Ctx& ctx);

// --- Q_p-rational ell-torsion, ell >= 5 prime, ell != p, p >= 5 ---------
//
// good:       yes iff ell | #E~(F_p)
// split I_n:  yes iff ell | p-1 or ell | n
// nonsplit:   yes iff ell | p+1
// additive:   no  ([E : E_0] <= 4 and E_0/E_1 has order p)
TriState has_qp_ell_torsion(const elliptic::ShortW<padic::ResidueInt>& W,
                            u64 ell, Ctx& ctx);

// --- Q_p-rational 3-isogeny, p >= 5 -------------------------------------
//
// A rational 3-isogeny is a Galois-stable order-3 subgroup {O, P, -P}; its
// kernel x-coordinate is a Q_p-root of psi_3 = 3x^4 + 6ax^2 + 12bx - a^2,
// and distinct roots give distinct isogenies.  For a nonsingular curve the
// number of Q_p-roots is 0, 1, 2 or 4 (two independent kernels force all
// four).  has: yes as soon as one root is certified even if the total count
// is not; no only when the count 0 is exact.
TriState has_qp_3isogeny(const elliptic::ShortW<padic::ResidueInt>& W);

struct IsogenyCount {
    unsigned count = 0; // certified distinct Q_p-roots (lower bound if !exact)
    bool exact = false;
};
IsogenyCount count_qp_3isogenies(const elliptic::ShortW<padic::ResidueInt>& W);

// --- Q_3-rational 3-torsion on a medium model ---------------------------
//
// Torsion reducing to a nonsingular point is decided by the mod-9 lift
// criterion (psi_3(x0) = 0 mod 9 and y0^2 = f(x0) mod 9 solvable with
// (x0, y0) nonsingular mod 3) on the normalized minimal model; torsion
// reducing to a singular point exists only for split I_n (3 | n and
// Delta_1 = Delta/3^n a cube unit mod 9) and for IV / IV* with Tamagawa
// number 3 (where additionally 9 | a2, resp. 3^7 | a2 a6 - a4^2, on the
// translated model).  The two kinds are mutually exclusive (full 3-torsion
// is impossible over Q_3), so the result is their disjunction.
// Precision k >= 8 decides every input whose discriminant valuation is
// visible; the IV* digit condition alone needs k >= 7.
TriState has_q3_3torsion(const elliptic::MediumW<padic::ResidueInt>& W);

// --- Q_p-rational p-torsion, p in {5, 7} --------------------------------
//
// good:       no unless p | #E~(F_p) (forces a_p = 1 mod p); otherwise
//             decided by the mod-p^2 criterion below
// split I_n:  yes iff p | n and Delta_1 = Delta/p^n is a p-th power unit
//             mod p^2 (Tate curve: q^(1/p) rational)
// nonsplit:   no  (E_0/E_1 has order p+1)
// additive:   decided by the mod-p^2 criterion (a p-torsion point lands in
//             E_0 and can reduce onto E~_ns ~ F_p^+; this is not always
//             empty)
//
// The mod-p^2 criterion: a minimal model has a nontrivial p-torsion point
// reducing to a nonsingular point iff some x0 in [0, p^2) has
// psi_p(x0) = 0 (mod p^2) and y0^2 = f(x0) (mod p^2) solvable with (x0, y0)
// nonsingular mod p.  It needs two digits (k >= 2) of a minimal model.
TriState has_qp_p_torsion(const elliptic::ShortW<padic::ResidueInt>& W, Ctx& ctx);

} // namespace qpt::decision
