// elliptic.hpp: Weierstrass models, invariants, division polynomials, point
// arithmetic over F_p, and Kodaira classification from residue coefficients.
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <gmpxx.h>

#include <vector>

#include "common.hpp"
#include "padic.hpp"

namespace qpt::elliptic {

// y^2 = x^3 + a x + b
template <typename T> struct ShortW {
    T a, b;
};
// y^2 = x^3 + A2 x^2 + A4 x + A6
template <typename T> struct MediumW {
    T A2, A4, A6;
};
// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
template <typename T> struct LongW {
    T a1, a2, a3, a4, a6;
};

using ShortZ = ShortW<mpz_class>;
using MediumZ = MediumW<mpz_class>;
using LongZ = LongW<mpz_class>;

LongZ to_long(const ShortZ& E);
LongZ to_long(const MediumZ& E);

struct Invariants {
    mpz_class b2, b4, b6, b8, c4, c6, disc;
};

// Standard quantities; maintains c4^3 - c6^2 = 1728 disc.
Invariants invariants(const LongZ& E);

// Isomorphic integral models.  complete_square scales (x, y) by u = 2 and is
// an isomorphism over Z_p for every odd p; depress further scales by u = 3
// (valid over Z_p for p >= 5), giving the classical y^2 = x^3 - 27c4 x - 54c6.
// Valuations of c4, c6, disc are unchanged at the primes where the scaling is
// a unit.
MediumZ complete_square(const LongZ& E); // y^2 = x^3 + b2 x^2 + 8 b4 x + 16 b6
ShortZ depress(const MediumZ& E);        // y^2 = x^3 - 27 c4 x - 54 c6
ShortZ to_short(const LongZ& E);

// Division polynomial in x: psi_n for odd n, psi_n / psi_2 for even n.
padic::ZPoly division_polynomial(const LongZ& E, unsigned n);

// --------------------------------------------------------------------------
// Points over F_p (small p; used for tables and cross-checks)
// --------------------------------------------------------------------------

struct FpCurve {
    u64 p = 0;
    u64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
};

FpCurve fp_reduce(const LongZ& E, u64 p);
bool fp_is_singular(const FpCurve& E);

struct FpPoint {
    u64 x = 0, y = 0;
    bool inf = true;
};

// Group law on a nonsingular curve (precondition).
FpPoint fp_neg(const FpCurve& E, const FpPoint& P);
FpPoint fp_add(const FpCurve& E, const FpPoint& P, const FpPoint& Q);
FpPoint fp_mul(const FpCurve& E, u64 n, const FpPoint& P);

// Affine points (the point at infinity is not included).  Guarded to small p.
std::vector<FpPoint> fp_points(const FpCurve& E);

// #E(F_p) = p + 1 + sum_x chi(g(x)); requires p odd and nonsingular E.
u64 fp_group_order(const FpCurve& E);

// #{P in E(F_p) : n P = O}, counting O itself.
u64 fp_torsion_count(const FpCurve& E, unsigned n);

// True iff E(F_p) contains a point of exact order ell (ell prime).
bool fp_has_point_of_order(const FpCurve& E, unsigned ell);

// --------------------------------------------------------------------------
// Reduction type from residue coefficients
// --------------------------------------------------------------------------

enum class Kodaira {
    good,
    In,
    II,
    III,
    IV,
    I0star,
    Instar,
    IVstar,
    IIIstar,
    IIstar,
    unknown, // not decidable at the given precision
};

const char* kodaira_name(Kodaira t);

struct Reduction {
    Kodaira type = Kodaira::unknown;
    // I_n / I_n^*: the index; exact when n_exact, otherwise a lower bound.
    unsigned n = 0;
    bool n_exact = false;
    // I_n only: 1 split, 0 nonsplit, -1 not applicable / unknown.
    int split = -1;
    // IV / IV^* only: 1 iff the Tamagawa number is 3, 0 iff it is 1.
    int tam3 = -1;
    // v(disc) of the minimal model reached (lower bound unless vdisc_exact).
    unsigned vdisc = 0;
    bool vdisc_exact = false;
    // Number of u = p rescalings needed to reach a minimal model.
    unsigned rescalings = 0;
};

// Kodaira type of y^2 = x^3 + a x + b over Q_p, p >= 5, from coefficients
// known mod p^k.  Every claim in the result holds for all integer lifts;
// type == unknown means the precision did not decide the classification.
//
// When `minimal` is non-null it receives the model the classification was
// actually read off: the input truncated to a uniform precision and divided
// through by u = p^rescalings (so it is a minimal model of the same curve).
// Its content is meaningful only when the returned type is not `unknown`.
Reduction classify_reduction(const ShortW<padic::ResidueInt>& E,
                             ShortW<padic::ResidueInt>* minimal = nullptr);

// Same for p = 3 on y^2 = x^3 + A2 x^2 + A4 x + A6 (Tate's algorithm; the
// depressed model is not available at 3).
//
// `normalized`, when non-null, receives the final working model: rescaled to
// a minimal model and x-translated so that for singular reduction the
// singular point sits at x = 0 (for type IV* including the second shift that
// moves the triple root of the quotient cubic to 0).  Meaningful only when
// the returned type is not `unknown`.
Reduction classify_reduction_p3(const MediumW<padic::ResidueInt>& E,
                                MediumW<padic::ResidueInt>* normalized = nullptr);

} // namespace qpt::elliptic
