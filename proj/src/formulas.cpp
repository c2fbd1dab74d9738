// formulas.cpp: closed-form densities and counts.
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "formulas.hpp"

#include "padic.hpp"

#include <stdexcept>

namespace qpt::formulas {

namespace {

// mpz p^e for moderate e.
mpz_class zpow(u64 p, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, e);
    return r;
}

// Reduced fraction from mpz numerator/denominator.
Q frac(const mpz_class& num, const mpz_class& den) {
    Q q(num, den);
    q.canonicalize();
    return q;
}

void reject_p2(u64 p, const char* what) {
    if (p == 2)
        throw domain_error(std::string(what) +
                           ": p = 2 is outside the analysed range (the "
                           "density derivation covers odd p only)");
}

void require_odd_prime_ge(u64 p, u64 lo, const char* what) {
    reject_p2(p, what);
    if (p < lo || !is_prime_u64(p))
        throw domain_error(std::string(what) + ": p must be an odd prime >= " +
                           std::to_string(lo));
}

}  // namespace

// ---------------------------------------------------------------------------
// Headline densities
// ---------------------------------------------------------------------------

Q density_tors(u64 p) {
    require_odd_prime_ge(p, 3, "density_tors");
    if (p == 3) return Q(3, 26);
    mpz_class P((unsigned long)p);
    if (p % 3 == 1) {
        // p^2 (3p^6 + 4p^2 - 4p + 4) / (8 (p^8 + p^6 + p^4 + p^2 + 1))
        mpz_class num = P * P * (3 * zpow(p, 6) + 4 * P * P - 4 * P + 4);
        mpz_class den =
            8 * (zpow(p, 8) + zpow(p, 6) + zpow(p, 4) + P * P + 1);
        return frac(num, den);
    }
    // p^2 / (2 (p^2 + p + 1))
    return frac(P * P, 2 * (P * P + P + 1));
}

Q density_iso(u64 p) {
    if (p == 3) throw domain_error("density_iso: p = 3 not covered (p >= 5)");
    require_odd_prime_ge(p, 5, "density_iso");
    mpz_class P((unsigned long)p);
    mpz_class cyc = zpow(p, 4) + zpow(p, 3) + P * P + P + 1;
    if (p % 3 == 1)
        return frac(3 * zpow(p, 4) + 3 * zpow(p, 3) + 4 * P * P + 4, 4 * cyc);
    return frac(zpow(p, 4) + zpow(p, 3) + 2 * P * P + 2, 2 * cyc);
}

DensityComponents density_components(u64 p) {
    require_odd_prime_ge(p, 5, "density_components");
    mpz_class P((unsigned long)p);
    DensityComponents c;
    if (p % 3 == 1) {
        c.good = frac(3 * P * P - 4 * P + 1, 8 * P * P);
        c.split_mult = frac(P - 1, 2 * P * P);
        c.nonsplit_mult = 0;
    } else {
        c.good = frac((P - 1) * (P - 1), 2 * P * P);
        c.split_mult = frac(P - 1, 2 * P * P * (P * P + P + 1));
        c.nonsplit_mult = frac(P - 1, 2 * P * P);
    }
    c.additive = frac(P - 1, 2 * zpow(p, 5)) + frac(P - 1, 2 * zpow(p, 8));
    // Scale the Z_p^2 measure by the density of minimal equations, p^10/(p^10-1):
    // each rescaling class (a, b) ~ (p^4 a, p^6 b) contributes measure p^-10.
    c.total = (c.good + c.split_mult + c.nonsplit_mult + c.additive) *
              frac(zpow(p, 10), zpow(p, 10) - 1);
    return c;
}

mpz_class w3p(u64 p) {
    require_odd_prime_ge(p, 5, "w3p");
    mpz_class P((unsigned long)p);
    if (p % 3 == 1) {
        mpz_class num = 3 * P * P - 4 * P + 1;  // = (3p-1)(p-1), always 8 | num
        return num / 8;
    }
    return (P - 1) * (P - 1) / 2;
}

// ---------------------------------------------------------------------------
// The Igusa-style local integral
// ---------------------------------------------------------------------------

Q igusa_closed_form(u64 p, unsigned k, unsigned m, unsigned n, unsigned d) {
    if (p < 2) throw domain_error("igusa_closed_form: p must be a prime");
    if (k > 0 && d < 2)
        throw precondition_error(
            "igusa_closed_form: the irreducible factor must have degree "
            "d > 1 (linear factors belong to h)");
    if (m > 0 && (u64)n > p)
        throw precondition_error(
            "igusa_closed_form: needs n+1 distinct roots in P^1(F_p), so "
            "n <= p");
    mpz_class P((unsigned long)p);
    unsigned long e = (unsigned long)(n + 1) * m + (unsigned long)k * d;
    // geometric sum 1 + p + ... + p^m
    mpz_class geo = (zpow(p, m + 1) - 1) / (P - 1);
    mpz_class num =
        zpow(p, e) * (zpow(p, m + 2) - zpow(p, m + 1) * n + P * n - 1);
    mpz_class den = (zpow(p, e + 2) - 1) * geo;
    return frac(num, den);
}

// ---------------------------------------------------------------------------
// Isogeny-count layers (eta)
// ---------------------------------------------------------------------------

EtaValues eta_values(u64 p) {
    require_odd_prime_ge(p, 5, "eta_values");
    mpz_class P((unsigned long)p);
    EtaValues e;
    Q base = frac(zpow(p, 3) - P * P, zpow(p, 3) - 1);
    e.eta_unit = base;               // |1|^2 = 1
    e.eta_nu = base;                 // |nu|^2 = 1
    e.eta_p = base / frac(P * P, 1); // |p|^2 = p^-2
    e.eta_nup = e.eta_p;
    e.sum_lambda = e.eta_unit + e.eta_nu + e.eta_p + e.eta_nup;
    mpz_class p10m1 = zpow(p, 10) - 1;
    mpz_class p3m1 = zpow(p, 3) - 1;
    if (p % 3 == 1) {
        e.eta2 = 0;
        e.eta4 = frac(zpow(p, 3) * (P - 1) *
                          (zpow(p, 4) - 3 * zpow(p, 3) + 3 * P - 1) *
                          (zpow(p, 5) + 1),
                      12 * p10m1 * p3m1);
    } else {
        e.eta2 = frac(zpow(p, 3) * (P - 1) * (P - 1) * (zpow(p, 5) + 1) *
                          (zpow(p, 3) + 1),
                      2 * p10m1 * p3m1);
        e.eta4 = 0;
    }
    // Multiplicity relation: a curve with exactly j rational 3-isogenies is
    // covered 2j times by the four parametrisations, so
    // 2 eta1 + 4 eta2 + 8 eta4 = sum_lambda eta_lambda.
    e.eta1 = (e.sum_lambda - 4 * e.eta2 - 8 * e.eta4) / 2;
    return e;
}

// ---------------------------------------------------------------------------
// GL_2 conjugation counts (gamma)
// ---------------------------------------------------------------------------

namespace {
void check_gamma_args(u64 ell, u64 s, const char* what) {
    if (ell < 3 || !is_prime_u64(ell))
        throw domain_error(std::string(what) + ": ell must be an odd prime");
    if (s % ell == 0)
        throw precondition_error(std::string(what) +
                                 ": s must be a unit mod ell");
}
}  // namespace

u64 gamma_count(u64 ell, u64 s, u64 t) {
    check_gamma_args(ell, s, "gamma_count");
    u64 disc = submod(mulmod(t % ell, t % ell, ell), mulmod(4 % ell, s % ell, ell), ell);
    int chi = padic::legendre_u64(disc, ell);
    return (u64)((i64)(ell * ell) + (i64)ell * chi);
}

u64 gamma_brute_force(u64 ell, u64 s, u64 t) {
    check_gamma_args(ell, s, "gamma_brute_force");
    if (ell > 13)
        throw precondition_error("gamma_brute_force: guarded to ell <= 13");
    u64 su = s % ell, tu = t % ell, count = 0;
    for (u64 a = 0; a < ell; a++)
        for (u64 b = 0; b < ell; b++)
            for (u64 c = 0; c < ell; c++) {
                // trace pins d; determinant check remains.
                u64 d = submod(tu, a, ell);
                if (submod(mulmod(a, d, ell), mulmod(b, c, ell), ell) == su)
                    count++;
            }
    return count;
}

GammaTable gamma_table(u64 ell) {
    check_gamma_args(ell, 1, "gamma_table");
    GammaTable tab;
    tab.ell = ell;
    tab.entries.resize(ell - 1);
    for (u64 s = 1; s < ell; s++) {
        u64 row_sum = 0;
        tab.entries[s - 1].resize(ell);
        for (u64 t = 0; t < ell; t++) {
            u64 g = gamma_count(ell, s, t);
            tab.entries[s - 1][t] = g;
            row_sum += g;
        }
        if (row_sum != ell * ell * ell - ell)
            throw std::logic_error("gamma_table: row sum != ell^3 - ell");
    }
    return tab;
}

// ---------------------------------------------------------------------------
// Large-p asymptotics and the general-ell count formula
// ---------------------------------------------------------------------------

Q asymptotic_density(u64 ell, u64 s_class) {
    if (ell < 3 || !is_prime_u64(ell))
        throw domain_error("asymptotic_density: ell must be an odd prime");
    if (s_class % ell == 0)
        throw precondition_error("asymptotic_density: s must be a unit mod ell");
    Q v(1, (unsigned long)(ell - 1));
    if (s_class % ell == 1) v -= Q(1, (unsigned long)(ell * ell - 1));
    return v;
}

Q density_ell_via_counts(u64 p, u64 ell, u64 count_x1, u64 count_xfull) {
    require_odd_prime_ge(p, 5, "density_ell_via_counts");
    if (ell < 3 || !is_prime_u64(ell))
        throw domain_error("density_ell_via_counts: ell must be an odd prime");
    if (ell == p)
        throw precondition_error("density_ell_via_counts: requires ell != p");
    mpz_class P((unsigned long)p);
    mpz_class L((unsigned long)ell);

    // Curve counts -> parameter-space point counts.  A curve whose F_p
    // points contain Z/ell but not (Z/ell)^2 carries ell-1 marked points;
    // a curve with full level structure carries ell^2-1 marked points and
    // ell^3 - ell full level structures.
    mpz_class x1m = (L - 1) * (mpz_class((unsigned long)count_x1) -
                               (unsigned long)count_xfull) +
                    (L * L - 1) * mpz_class((unsigned long)count_xfull);
    mpz_class xfm = (L * L * L - L) * mpz_class((unsigned long)count_xfull);

    // Good reduction: measure of minimal equations whose reduction has a
    // point of order ell.  The two parameter-count terms collapse to
    // (curves with a point)/p^2.
    Q bracket = frac(x1m, (L - 1) * P * P) - frac(xfm, (L * L - 1) * P * P);

    u64 r = p % ell;
    if (r == 1) {
        // Split multiplicative: ell | p-1, every I_n works.
        bracket += frac(P - 1, 2 * P * P);
    } else {
        // Split multiplicative: only ell | n, a geometric series in n.
        bracket += frac((P - 1) * (P - 1), 2 * P * P * (zpow(p, (unsigned long)ell) - 1));
        // Nonsplit multiplicative: needs ell | p+1.
        if (r == ell - 1) bracket += frac(P - 1, 2 * P * P);
    }
    if (ell == 3)
        bracket += frac(P - 1, 2 * zpow(p, 5)) + frac(P - 1, 2 * zpow(p, 8));
    return bracket * frac(zpow(p, 10), zpow(p, 10) - 1);
}

// ---------------------------------------------------------------------------
// Twist families
// ---------------------------------------------------------------------------

Q twist_probability(u64 ell, u64 count, TwistMode mode, bool p_is_1_mod_ell) {
    if (ell < 3 || !is_prime_u64(ell))
        throw domain_error("twist_probability: ell must be an odd prime");
    if (mode == TwistMode::isogenies_n) {
        if (ell != 3)
            throw precondition_error(
                "twist_probability: isogeny counts only classify ell = 3");
        switch (count) {
            case 0: return Q(0);
            case 1: return Q(1, 4);
            case 2:
                if (p_is_1_mod_ell)
                    throw precondition_error(
                        "twist_probability: n = 2 forces p = 2 (mod 3)");
                return Q(1, 2);
            case 4:
                if (!p_is_1_mod_ell)
                    throw precondition_error(
                        "twist_probability: n = 4 forces p = 1 (mod 3)");
                return Q(1, 4);
            default:
                throw domain_error(
                    "twist_probability: number of 3-isogenies must be "
                    "0, 1, 2 or 4");
        }
    }
    // roots_m: count = #{Q_p-rational roots of psi_ell}, at most deg psi_ell.
    u64 half = (ell - 1) / 2;
    if (count > (ell * ell - 1) / 2)
        throw domain_error("twist_probability: more roots than deg psi_ell");
    if (count == 0) return Q(0);
    if (count < half)
        throw domain_error(
            "twist_probability: a rational root forces at least (ell-1)/2 "
            "of them");
    if (count == half) return Q(1, 4);
    return p_is_1_mod_ell ? Q(1, 4) : Q(1, 2);
}

// ---------------------------------------------------------------------------
// p = 3
// ---------------------------------------------------------------------------

P3Components density_p3_components() {
    P3Components c;
    c.good = Q(2, 27);
    c.additive_nonsingular = Q(1, 27);
    c.additive_singular = frac(1, zpow(3, 6)) + frac(1, zpow(3, 9));
    c.split_mult_singular = frac(2, 27 * 26);
    c.total = (c.good + c.additive_nonsingular + c.additive_singular +
               c.split_mult_singular) *
              frac(zpow(3, 10), zpow(3, 10) - 1);
    return c;
}

}  // namespace qpt::formulas
