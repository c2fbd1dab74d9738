// decision.cpp: tri-state torsion and isogeny predicates.
//
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "decision.hpp"

#include <gmpxx.h>

namespace qpt::decision {

using elliptic::Kodaira;
using elliptic::LongZ;
using elliptic::MediumW;
using elliptic::Reduction;
using elliptic::ShortW;
using padic::ResidueInt;
using padic::Val;

namespace {

// How far root isolation may refine before giving up.  psi_3 is a quartic;
// this covers every non-degenerate input at the precisions the estimator
// uses, and exhaustion is reported as undecided(root_budget), never as a
// wrong count.
constexpr unsigned kRootBudget = 64;

mpz_class z(u64 v) { return mpz_class(static_cast<unsigned long>(v)); }

ResidueInt disc_short(const ResidueInt& a, const ResidueInt& b) {
    using namespace padic;
    ResidueInt a3 = rmul(rmul(a, a), a);
    ResidueInt b2 = rmul(b, b);
    return rmul_i(radd(rmul_i(a3, 4), rmul_i(b2, 27)), -16);
}

ResidueInt disc_medium(const MediumW<ResidueInt>& E) {
    // disc of y^2 = x^3 + A2 x^2 + A4 x + A6 (a1 = a3 = 0):
    //   -64 A2^3 A6 + 16 A2^2 A4^2 - 64 A4^3 - 432 A6^2 + 288 A2 A4 A6
    using namespace padic;
    ResidueInt A22 = rmul(E.A2, E.A2), A42 = rmul(E.A4, E.A4);
    ResidueInt t = rmul_i(rmul(rmul(A22, E.A2), E.A6), -64);
    t = radd(t, rmul_i(rmul(A22, A42), 16));
    t = radd(t, rmul_i(rmul(A42, E.A4), -64));
    t = radd(t, rmul_i(rmul(E.A6, E.A6), -432));
    return radd(t, rmul_i(rmul(rmul(E.A2, E.A4), E.A6), 288));
}

Reason classify_reason(const Reduction& R) {
    // With v(disc) itself unresolved the type search ran out of digits of
    // the discriminant; otherwise some individual valuation comparison did.
    return R.vdisc_exact ? Reason::valuation_unresolved
                         : Reason::disc_vanishes_at_precision;
}

// Tate-curve criterion for p-torsion reducing to a singular point, split
// multiplicative case: p | n = v(disc) and Delta_1 = Delta / p^n a p-th
// power unit mod p^2 (q^(1/p) is then rational).  `d` is the discriminant
// residue of the minimal model classified as I_n.
TriState split_mult_p_torsion(const Reduction& R, const ResidueInt& d) {
    u64 p = d.p;
    if (!R.n_exact) return tri_undecided(Reason::disc_vanishes_at_precision);
    if (R.n % p != 0) return tri(false);
    if (d.k < R.n + 2) return tri_undecided(Reason::valuation_unresolved);
    ResidueInt u = padic::rshift_down(d, R.n);
    return tri(padic::is_pth_power_unit_mod_p2(z(u.value), p));
}

// Lift criterion for p-torsion reducing to a nonsingular point.  `L` must
// be an integer lift of a *minimal* model of the curve, determined at least
// mod p^2 (the answer then does not depend on the lift): there is such a
// torsion point iff some x0 in [0, p^2) has psi_p(x0) = 0 (mod p^2) and
// y0^2 = f(x0) (mod p^2) solvable with (x0, y0) nonsingular mod p, i.e.
// f(x0) a unit square mod p, or f(x0) = 0 (mod p^2) with f'(x0) a unit.
bool nonsingular_p_torsion_exists(const LongZ& L, u64 p) {
    using namespace padic;
    ZPoly psi = elliptic::division_polynomial(L, static_cast<unsigned>(p));
    u64 p2 = p * p;
    std::vector<u64> pc(psi.c.size());
    for (size_t i = 0; i < psi.c.size(); i++)
        pc[i] = mpz_fdiv_ui(psi.c[i].get_mpz_t(), p2);
    u64 c2 = mpz_fdiv_ui(L.a2.get_mpz_t(), p2);
    u64 c1 = mpz_fdiv_ui(L.a4.get_mpz_t(), p2);
    u64 c0 = mpz_fdiv_ui(L.a6.get_mpz_t(), p2);
    for (u64 x = 0; x < p2; x++) {
        u64 v = 0;
        for (size_t i = pc.size(); i-- > 0;) v = (mulmod(v, x, p2) + pc[i]) % p2;
        if (v != 0) continue;
        // f(x) = x^3 + a2 x^2 + a4 x + a6 mod p^2
        u64 c = mulmod(mulmod(addmod(x, c2, p2), x, p2) + c1, x, p2);
        c = addmod(c, c0, p2);
        if (c % p != 0) {
            if (legendre_u64(c % p, p) == 1) return true; // y0 a unit
        } else if (c == 0) {
            // y0 = 0 mod p: need the partial f'(x0) nonzero mod p
            u64 fp = (3 * mulmod(x % p, x % p, p) + 2 * c2 * (x % p) + c1) % p;
            if (fp != 0) return true;
        }
    }
    return false;
}

LongZ lift_short(const ShortW<ResidueInt>& M) {
    LongZ L;
    L.a4 = z(M.a.value);
    L.a6 = z(M.b.value);
    return L;
}

LongZ lift_medium(const MediumW<ResidueInt>& M) {
    LongZ L;
    L.a2 = z(M.A2.value);
    L.a4 = z(M.A4.value);
    L.a6 = z(M.A6.value);
    return L;
}

// Disjunction of two branches known to be mutually exclusive: an undecided
// side can still be overruled by a yes, but not by a no.
TriState tri_or(TriState a, TriState b) {
    if (a.yes() || b.yes()) return tri(true);
    if (a.no() && b.no()) return tri(false);
    return a.decided() ? b : a;
}

padic::RPoly psi3_rpoly(const ShortW<ResidueInt>& W) {
    if (W.a.p != W.b.p)
        throw precondition_error("count_qp_3isogenies: mismatched p");
    if (W.a.p < 5)
        throw domain_error("count_qp_3isogenies: requires p >= 5");
    unsigned k = std::min(W.a.k, W.b.k);
    mpz_class A = z(W.a.value), B = z(W.b.value);
    return padic::rp_make(W.a.p, k,
                          {-A * A, 12 * B, 6 * A, mpz_class(0), mpz_class(3)});
}

} // namespace

const char* answer_name(Answer a) {
    switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    default: return "undecided";
    }
}

const char* reason_name(Reason r) {
    switch (r) {
    case Reason::none: return "none";
    case Reason::disc_vanishes_at_precision: return "disc_vanishes_at_precision";
    case Reason::valuation_unresolved: return "valuation_unresolved";
    default: return "root_budget";
    }
}

u64 Ctx::curve_order(u64 p, u64 a_mod_p, u64 b_mod_p) {
    if (p < 3) throw domain_error("Ctx::curve_order: requires odd p");
    u64 a = a_mod_p % p, b = b_mod_p % p;
    if (p > kTableCap) {
        elliptic::FpCurve E{p, 0, 0, 0, a, b};
        return elliptic::fp_is_singular(E) ? 0 : elliptic::fp_group_order(E);
    }
    warm(p);
    return tables_.find(p)->second[a * p + b];
}

void Ctx::warm(u64 p) {
    if (p > kTableCap || tables_.count(p)) return;
    std::vector<u32> t(p * p, 0);
    for (u64 a = 0; a < p; a++)
        for (u64 b = 0; b < p; b++) {
            elliptic::FpCurve E{p, 0, 0, 0, a, b};
            if (!elliptic::fp_is_singular(E))
                t[a * p + b] = static_cast<u32>(elliptic::fp_group_order(E));
        }
    tables_.emplace(p, std::move(t));
}

TriState has_qp_3torsion(const ShortW<ResidueInt>& W, Ctx& ctx) {
    ShortW<ResidueInt> M;
    Reduction R = elliptic::classify_reduction(W, &M);
    u64 p = W.a.p;
    switch (R.type) {
    case Kodaira::good:
        return tri(ctx.curve_order(p, M.a.value % p, M.b.value % p) % 3 == 0);
    case Kodaira::In:
        if (R.split == 1) {
            if (p % 3 == 1) return tri(true); // mu_3 in Z_p*
            if (!R.n_exact)
                return tri_undecided(Reason::disc_vanishes_at_precision);
            return tri(R.n % 3 == 0);
        }
        return tri(p % 3 == 2); // 3 | p+1, the nonsplit torus order
    case Kodaira::unknown:
        return tri_undecided(classify_reason(R));
    default:
        // Additive: E_1 is torsion-free and E_0/E_1 has order p, so an
        // order-3 point must generate the component group: c = 3, which
        // happens exactly for IV / IV* with tam3, and conversely a Z/3
        // component group always lifts to a torsion point (the quotient
        // map kills no 3-torsion since Hom(Z_p, Z/3) = 0).
        return tri(R.tam3 == 1);
    }
}

TriState has_qp_ell_torsion(const ShortW<ResidueInt>& W, u64 ell, Ctx& ctx) {
    u64 p = W.a.p;
    if (ell < 5 || !is_prime_u64(ell))
        throw domain_error("has_qp_ell_torsion: ell must be a prime >= 5");
    if (ell == p)
        throw domain_error("has_qp_ell_torsion: requires ell != p");
    ShortW<ResidueInt> M;
    Reduction R = elliptic::classify_reduction(W, &M);
    switch (R.type) {
    case Kodaira::good:
        return tri(ctx.curve_order(p, M.a.value % p, M.b.value % p) % ell == 0);
    case Kodaira::In:
        if (R.split == 1) {
            if ((p - 1) % ell == 0) return tri(true); // mu_ell in Z_p*
            // Units are all ell-th powers here, so the Tate parameter has
            // an ell-th root iff ell | n.
            if (!R.n_exact)
                return tri_undecided(Reason::disc_vanishes_at_precision);
            return tri(R.n % ell == 0);
        }
        return tri((p + 1) % ell == 0);
    case Kodaira::unknown:
        return tri_undecided(classify_reason(R));
    default:
        // Additive: [E : E_0] <= 4 < ell and E_0/E_1 has order p != ell.
        return tri(false);
    }
}

TriState has_qp_3isogeny(const ShortW<ResidueInt>& W) {
    padic::RRootCount r = padic::r_count_qp_roots(psi3_rpoly(W), kRootBudget);
    if (r.count >= 1) return tri(true);
    if (r.exact) return tri(false);
    return tri_undecided(Reason::root_budget);
}

IsogenyCount count_qp_3isogenies(const ShortW<ResidueInt>& W) {
    padic::RRootCount r = padic::r_count_qp_roots(psi3_rpoly(W), kRootBudget);
    return {r.count, r.exact};
}

TriState has_q3_3torsion(const MediumW<ResidueInt>& W) {
    MediumW<ResidueInt> N;
    Reduction R = elliptic::classify_reduction_p3(W, &N);
    unsigned k = N.A2.k;

    // Nonsingular-reduction branch on the normalized minimal model.
    auto nonsingular = [&]() -> TriState {
        if (k < 2) return tri_undecided(Reason::valuation_unresolved);
        return tri(nonsingular_p_torsion_exists(lift_medium(N), 3));
    };
    // v_3(x) >= t over all lifts: yes also when inexact (v = k >= t).
    auto val_at_least = [](const Val& v, unsigned t) -> TriState {
        if (v.v >= t) return tri(true);
        return v.exact ? tri(false)
                       : tri_undecided(Reason::valuation_unresolved);
    };

    switch (R.type) {
    case Kodaira::good: {
        elliptic::FpCurve E{3, 0, N.A2.value % 3, 0, N.A4.value % 3,
                            N.A6.value % 3};
        if (elliptic::fp_group_order(E) % 3 != 0) return tri(false);
        return nonsingular();
    }
    case Kodaira::In:
        // E_0(Q_3) = Z_3* (split) or the norm-one torus of order 4
        // (nonsplit) up to the torsion-free E_1: no nonsingular 3-torsion
        // either way, and no singular one unless split.
        if (R.split != 1) return tri(false);
        return split_mult_p_torsion(R, disc_medium(N));
    case Kodaira::IV:
        // Singular branch: 9 | A2 and A6/9 = 1 (mod 3) on the translated
        // model; the latter is exactly tam3.
        if (R.tam3 == 1) {
            TriState nine = val_at_least(padic::valuation(N.A2), 2);
            return tri_or(nine, nonsingular());
        }
        return nonsingular();
    case Kodaira::IVstar:
        // Singular branch: 3^7 | A2 A6 - A4^2 and A6/81 = 1 (mod 3) on the
        // doubly translated model; again the latter is tam3.
        if (R.tam3 == 1) {
            ResidueInt q = padic::rsub(padic::rmul(N.A2, N.A6),
                                       padic::rmul(N.A4, N.A4));
            TriState seven = val_at_least(padic::valuation(q), 7);
            return tri_or(seven, nonsingular());
        }
        return nonsingular();
    case Kodaira::unknown:
        return tri_undecided(classify_reason(R));
    default:
        // Remaining additive types have component group of order 1, 2 or 4:
        // only nonsingular-reduction torsion is possible.
        return nonsingular();
    }
}

TriState has_qp_p_torsion(const ShortW<ResidueInt>& W, Ctx& ctx) {
    u64 p = W.a.p;
    if (p != 5 && p != 7)
        throw domain_error("has_qp_p_torsion: p must be 5 or 7");
    ShortW<ResidueInt> M;
    Reduction R = elliptic::classify_reduction(W, &M);

    auto nonsingular = [&]() -> TriState {
        if (M.a.k < 2) return tri_undecided(Reason::valuation_unresolved);
        return tri(nonsingular_p_torsion_exists(lift_short(M), p));
    };

    switch (R.type) {
    case Kodaira::good:
        // A p-torsion point reduces to a point of exact order p, so
        // p | #E~(F_p); equivalently a_p = 1 (mod p), which at p = 7 pins
        // #E~ = 7 and at p = 5 allows #E~ in {5, 10}.
        if (ctx.curve_order(p, M.a.value % p, M.b.value % p) % p != 0)
            return tri(false);
        return nonsingular();
    case Kodaira::In:
        // Split: all p-torsion reduces to singular points (Z_p* has none);
        // Tate criterion.  Nonsplit: the torus has order p+1, none at all.
        if (R.split != 1) return tri(false);
        return split_mult_p_torsion(R, disc_short(M.a, M.b));
    case Kodaira::unknown:
        return tri_undecided(classify_reason(R));
    default:
        // Additive: [E : E_0] <= 4 rules out singular reduction, but E_0
        // can still split off a Z/p onto E~_ns ~ F_p^+.
        return nonsingular();
    }
}

} // namespace qpt::decision
