// formulas.hpp: closed-form densities and counts, in exact rational
// arithmetic.
//
// Every quantity here is a rational number computed per prime with GMP;
// there is no floating point in this translation unit.  Brute-force
// oracles (gamma_brute_force, and the moduli counting routines these
// formulas are checked against) live next to the closed forms so the two
// can be compared exactly in tests and in the verify tool.
//
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "common.hpp"

#include <gmpxx.h>

#include <vector>

namespace qpt::formulas {

using Q = mpq_class;

// ---------------------------------------------------------------------------
// Headline densities
// ---------------------------------------------------------------------------

// Density of Weierstrass equations over Z_p defining an elliptic curve
// with a nontrivial Q_p-rational 3-torsion point.  Three cases:
//
//   p = 3:          3/26
//   p = 1 (mod 3):  p^2 (3p^6 + 4p^2 - 4p + 4) / (8 (p^8+p^6+p^4+p^2+1))
//   p = 2 (mod 3):  p^2 / (2 (p^2+p+1))
//
// p = 2 is rejected: the source analysis stops at odd p and we do not
// extrapolate.  Throws domain_error for p = 2 or non-prime-looking input.
Q density_tors(u64 p);

// Density of Weierstrass equations over Z_p admitting a Q_p-rational
// 3-isogeny, for p >= 5:
//
//   p = 1 (mod 3):  (3p^4 + 3p^3 + 4p^2 + 4) / (4 (p^4+p^3+p^2+p+1))
//   p = 2 (mod 3):  (p^4 + p^3 + 2p^2 + 2)   / (2 (p^4+p^3+p^2+p+1))
//
// p in {2, 3} is rejected (the 3-isogeny count is only derived for p >= 5).
Q density_iso(u64 p);

// The four reduction-type components of density_tors for p >= 5, as
// measures on Z_p^2 (not yet scaled by the minimality factor):
//
//   good           (3p^2-4p+1)/(8p^2)         if p = 1 (mod 3)
//                  (p-1)^2/(2p^2)             if p = 2 (mod 3)
//   split_mult     (p-1)/(2p^2)               if p = 1 (mod 3)
//                  (p-1)/(2p^2(p^2+p+1))      if p = 2 (mod 3)
//   nonsplit_mult  0                          if p = 1 (mod 3)
//                  (p-1)/(2p^2)               if p = 2 (mod 3)
//   additive       (p-1)/(2p^5) + (p-1)/(2p^8)
//
// Exact identity: (good + split_mult + nonsplit_mult + additive) *
// p^10/(p^10 - 1) == density_tors(p).
struct DensityComponents {
    Q good;
    Q split_mult;
    Q nonsplit_mult;
    Q additive;
    // Sum of the four components scaled by p^10/(p^10-1); equals
    // density_tors(p) exactly.
    Q total;
};
DensityComponents density_components(u64 p);

// Number of (a, b) in F_p^2 with Delta != 0 such that y^2 = x^3 + ax + b
// has a point of order 3 over F_p (p >= 5):
//
//   (3p^2 - 4p + 1)/8   if p = 1 (mod 3)
//   (p - 1)^2 / 2       if p = 2 (mod 3)
//
// Always an integer; cross-checked against the brute-force count
// moduli::count_weierstrass_with_ell_structure(p, 3, point_of_order_ell).
mpz_class w3p(u64 p);

// ---------------------------------------------------------------------------
// The Igusa-style local integral
// ---------------------------------------------------------------------------

// Exact value of the local integral  int_{Z_p^2} |g^k h^m|_p du dv  where
// h is a product of n+1 linear forms with pairwise distinct roots mod p
// and g reduces mod p to an irreducible form of degree d > 1:
//
//       p^{(n+1)m + kd} (p^{m+2} - p^{m+1} n + p n - 1)
//   -----------------------------------------------------
//   (p^{(n+1)m + kd + 2} - 1) (1 + p + ... + p^m)
//
// Degenerate cases fall out of the same expression: k = 0 makes d
// irrelevant, m = 0 makes n irrelevant, and k = m = 0 gives 1 (the
// integral of the constant 1).
Q igusa_closed_form(u64 p, unsigned k, unsigned m, unsigned n, unsigned d);

// ---------------------------------------------------------------------------
// Isogeny-count layers (eta)
// ---------------------------------------------------------------------------

// The measures eta_lambda of the images of the isogeny parametrisations
// for lambda in {1, nu, p, nu p}, together with the multi-isogeny layers.
//
//   eta_lambda = |lambda|_p^2 (p^3 - p^2)/(p^3 - 1)
//   eta2 = p^3 (p-1)^2 (p^5+1)(p^3+1) / (2 (p^10-1)(p^3-1))   if p = 2 (3)
//          0                                                  if p = 1 (3)
//   eta4 = p^3 (p-1)(p^4-3p^3+3p-1)(p^5+1) / (12 (p^10-1)(p^3-1))
//                                                             if p = 1 (3)
//          0                                                  if p = 2 (3)
//
// eta1 (curves with exactly one rational 3-isogeny) is solved from the
// multiplicity relation  2 eta1 + 4 eta2 + 8 eta4 = sum_lambda eta_lambda
// rather than integrated directly; the decomposition then satisfies
// eta1 + eta2 + eta4 == density_iso(p) exactly.
struct EtaValues {
    Q eta_unit;    // lambda = 1
    Q eta_nu;      // lambda = nu (unit non-square); equals eta_unit
    Q eta_p;       // lambda = p
    Q eta_nup;     // lambda = nu p; equals eta_p
    Q sum_lambda;  // eta_unit + eta_nu + eta_p + eta_nup
    Q eta1;
    Q eta2;
    Q eta4;
};
EtaValues eta_values(u64 p);

// ---------------------------------------------------------------------------
// GL_2 conjugation counts (gamma)
// ---------------------------------------------------------------------------

// Number of matrices in GL_2(F_ell) with determinant s and trace t, for
// ell an odd prime and s a unit mod ell:
//
//   gamma_{s,t} = ell^2 + legendre(t^2 - 4s) * ell
//
// (legendre(0) counts as 0).  gamma_brute_force enumerates the ell^4
// candidate matrices directly and is the oracle; it is guarded to
// ell <= 13 to keep it trivially cheap.
u64 gamma_count(u64 ell, u64 s, u64 t);
u64 gamma_brute_force(u64 ell, u64 s, u64 t);

// Full table of gamma_{s,t} for s in [1, ell), t in [0, ell).  Construction
// checks the row identity  sum_t gamma_{s,t} = ell^3 - ell  (= #SL_2(F_ell)
// after scaling) for every s and throws std::logic_error on violation.
struct GammaTable {
    u64 ell = 0;
    // entries[s-1][t] = gamma_{s,t}
    std::vector<std::vector<u64>> entries;
};
GammaTable gamma_table(u64 ell);

// ---------------------------------------------------------------------------
// Large-p asymptotics and the general-ell count formula
// ---------------------------------------------------------------------------

// Limit, as p -> infinity through p = s (mod ell), of the density of
// Weierstrass equations with a Q_p-rational ell-torsion point:
//
//   1/(ell - 1) - delta_{s = 1 (mod ell)} / (ell^2 - 1)
//
// ell must be an odd prime and s a unit mod ell.
Q asymptotic_density(u64 ell, u64 s_class);

// Density of Weierstrass equations over Z_p with a Q_p-rational ell-torsion
// point, computed from the two finite-field curve counts
//
//   count_x1    = #{(a,b) in F_p^2 : Delta != 0, E_{a,b}(F_p) has a point
//                  of order ell}
//   count_xfull = #{(a,b) : Delta != 0, E_{a,b}(F_p)[ell] = (Z/ell)^2}
//
// exactly as produced by moduli::count_weierstrass_with_ell_structure.
// Internally these are converted to parameter-space point counts
// (each curve with a point of order ell is hit ell-1 times per marked
// point, ell^3 - ell times with full level structure) and fed into the
// congruence-case formula
//
//   W = p^10/(p^10-1) * [ X1/((ell-1) p^2) - Xfull/((ell^2-1) p^2)
//         + (p-1)/(2p^2)                        if p =  1 (mod ell)
//         + (p-1)^2/(2p^2(p^ell-1))             if p = -1 (mod ell) too
//       | X1/((ell-1) p^2) + (p-1)^2/(2p^2(p^ell-1))   otherwise,
//         plus (p-1)/(2p^2) when p = -1 (mod ell) ]
//
// For ell = 3 the additive-reduction term (p-1)/(2p^5) + (p-1)/(2p^8) is
// added inside the bracket: types IV/IV* can carry a 3-torsion point, a
// phenomenon absent for ell >= 5.  With the brute-force counts this
// reproduces density_tors(p) exactly.
//
// Preconditions: p >= 5, ell odd prime, ell != p.
Q density_ell_via_counts(u64 p, u64 ell, u64 count_x1, u64 count_xfull);

// ---------------------------------------------------------------------------
// Twist families
// ---------------------------------------------------------------------------

// Probability that a curve drawn from the four quadratic-twist classes
// with a fixed j-invariant has a nontrivial Q_p-rational ell-torsion
// point (p >= 5, ell odd prime, ell != p).
//
// mode roots_m: `count` is the number m of Q_p-rational roots of psi_ell.
//
//   m = 0            -> 0
//   m = (ell-1)/2    -> 1/4
//   m > (ell-1)/2    -> 1/4 + 1/4 * [p != 1 (mod ell)]
//
// mode isogenies_n: ell must be 3 and `count` is the number n of
// Q_p-rational 3-isogenies.
//
//   n = 0 -> 0,  n = 1 -> 1/4,  n = 2 -> 1/2,  n = 4 -> 1/4
//
// Any other n is rejected, as are combinations the classification rules
// out (n = 2 forces p = 2 mod 3, n = 4 forces p = 1 mod 3).
enum class TwistMode { roots_m, isogenies_n };
Q twist_probability(u64 ell, u64 count, TwistMode mode, bool p_is_1_mod_ell);

// ---------------------------------------------------------------------------
// p = 3
// ---------------------------------------------------------------------------

// Components of the 3-torsion density at p = 3, as measures on Z_3^3
// (the (a2, a4, a6) coefficient space):
//
//   good reduction                    2/27
//   additive, nonsingular 3-torsion   1/27
//   additive IV/IV*, singular case    3^-6 + 3^-9
//   split multiplicative, singular    2/(3^3 (3^3 - 1))
//
// total = (3^10/(3^10-1)) * sum == 3/26 exactly.
struct P3Components {
    Q good;
    Q additive_nonsingular;
    Q additive_singular;
    Q split_mult_singular;
    Q total;
};
P3Components density_p3_components();

}  // namespace qpt::formulas
