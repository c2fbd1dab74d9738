// moduli.hpp: parameter-space maps for curves with 3-torsion structure.
//
// The families are A^2 planes (u, v) carrying a marked point or full
// level-3 structure, mapped to short Weierstrass coefficients (a, b) by
// polynomial maps.  Everything here is exact: maps are stored as bivariate
// polynomials with rational coefficients and can be evaluated over Q or
// over residue rings Z/p^k (p != 3, so the denominators 3 and 27 invert).
//
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "elliptic.hpp"
#include "padic.hpp"

#include <utility>
#include <vector>

namespace qpt::moduli {

using padic::ResidueInt;
using Q = mpq_class;

// ---------------------------------------------------------------------------
// Bivariate polynomials over Q (dense, c[i][j] multiplies u^i v^j)
// ---------------------------------------------------------------------------

struct QBivar {
    std::vector<std::vector<Q>> c;

    bool is_zero() const;
    int degu() const; // -1 for the zero polynomial
    int degv() const;
};

QBivar bv_const(const Q& q);
QBivar bv_u();
QBivar bv_v();
// monomial q * u^i v^j
QBivar bv_mono(const Q& q, unsigned i, unsigned j);

QBivar bv_add(const QBivar& f, const QBivar& g);
QBivar bv_sub(const QBivar& f, const QBivar& g);
QBivar bv_mul(const QBivar& f, const QBivar& g);
QBivar bv_scale(const QBivar& f, const Q& q);
QBivar bv_pow(const QBivar& f, unsigned e);
QBivar bv_du(const QBivar& f); // d/du
QBivar bv_dv(const QBivar& f); // d/dv
bool bv_eq(const QBivar& f, const QBivar& g);

Q bv_eval(const QBivar& f, const Q& u, const Q& v);
// Evaluation over Z/p^k.  Coefficient denominators must be prime to p.
ResidueInt bv_eval_residue(const QBivar& f, const ResidueInt& u, const ResidueInt& v);
// Specializations to univariate coefficient vectors (index = exponent).
std::vector<Q> bv_specialize_u(const QBivar& f, const Q& u0); // poly in v
std::vector<Q> bv_specialize_v(const QBivar& f, const Q& v0); // poly in u

// Jacobian determinant d(F,G)/d(u,v).
QBivar bv_jacobian(const QBivar& F, const QBivar& G);

// Resultant of univariate polynomials over Q (index = exponent).
Q resultant(std::vector<Q> f, std::vector<Q> g);

// ---------------------------------------------------------------------------
// Families and twist parameters
// ---------------------------------------------------------------------------

// (u, v) lies in the marked-point family iff (u^3 - 27v) v^3 != 0,
// and in the full-level family iff u (u^3 - v^3) != 0.
bool x1_family_ok(const Q& u, const Q& v);
bool x3_family_ok(const Q& u, const Q& v);

// Least positive quadratic non-residue modulo an odd prime.
u64 least_nonresidue(u64 p);

// Twist data for the curves y^2 = x^3 + b with b = 16 p^{3 delta} nu^{3 eps}.
struct TwistParams {
    u64 p = 0;
    unsigned delta = 0;   // 0 or 1
    unsigned epsilon = 0; // 0 or 1
    u64 nu = 0;           // least nonresidue mod p, filled by make_twist_params
};
TwistParams make_twist_params(u64 p, unsigned delta, unsigned epsilon);
mpz_class twist_b(const TwistParams& t);

// ---------------------------------------------------------------------------
// The parameter maps (as pairs of bivariate polynomials in (u, v))
// ---------------------------------------------------------------------------

struct MapUV {
    QBivar a, b;
};

std::pair<Q, Q> map_at(const MapUV& m, const Q& u, const Q& v);
std::pair<ResidueInt, ResidueInt> map_at_residue(const MapUV& m, const ResidueInt& u,
                                                 const ResidueInt& v);

// Marked 3-torsion point family:
//   pi1(u, v) = (8uv - u^4/3,  16v^2 - 8vu^3/3 + 2u^6/27),   J = 256 v^2.
MapUV pi1();

// Full level-3 family:
//   pi2(u, v) = (-216u^3 v - 27v^4,  -432u^6 - 1080u^3 v^3 + 54v^6),
//   J = -559872 u^2 (u-v)^2 (u^2+uv+v^2)^2.
MapUV pi2();

// Twisted 3-isogeny family (lambda a nonzero rational):
//   pi_psi(lambda; u, v) = (2*lambda*uv - lambda^2 u^4/3,
//                           lambda v^2 - 2 lambda^2 v u^3/3 + 2 lambda^3 u^6/27),
//   J = 4 lambda^2 v^2; the isogeny kernel sits over x = lambda u^2 / 3.
MapUV pi_psi(const Q& lambda);
Q psi_kernel_x(const Q& lambda, const Q& u);

// Hesse polynomials: the coefficients (C4, C6) of the curve attached to a
// point (u : v) of the Hesse pencil of y^2 = x^3 + ax + b; (u, v) = (1, 0)
// reproduces (a, b).
std::pair<Q, Q> hesse_c4_c6(const Q& a, const Q& b, const Q& u, const Q& v);
// The same with (a, b) numeric and (u, v) symbolic.
MapUV hesse_map(const Q& a, const Q& b);

// Specialization a = 0 of the Hesse map:
//   pi_F(b; u, v) = (-2^8 3^5 b^2 v^4 + 2^3 3^2 b u^3 v,
//                    -2^13 3^6 b^3 v^6 - 2^7 3^3 5 b^2 u^3 v^3 + b u^6),
//   J = -432 b^2 u^2 (u^3 + 6912 b v^3)^2.
MapUV pi_F(const Q& b);

// Integral model of the twisted family: phi_b(u, z) = pi_F(b; u, z p^{-delta})
// with b = twist_b, cleared of the p^{-delta}:
//   J = -48^3 nu^{6 eps} p^{5 delta} u^2 ((48 nu^eps z)^3 + u^3)^2.
MapUV phi_b_map(const TwistParams& t);

// Explicit 3-torsion points on y^2 = x^3 + pi2^a x + pi2^b, after the
// rescale (x, y) -> (4x, 8y) that clears the corollary model:
//   P1 = (3(4u^2+4uv+v^2), -36(u^3+u^2v+uv^2))  (rational), and
//   P2 = (-9v^2, 12 sqrt(-3) (u^3-v^3)); y2 below is the sqrt(-3)-coefficient.
struct HessePoints {
    QBivar x1, y1; // P1, rational coordinates
    QBivar x2, y2; // P2 = (x2, y2 * sqrt(-3))
};
HessePoints hesse_torsion_points();

// ---------------------------------------------------------------------------
// Tate normal form
// ---------------------------------------------------------------------------

// Move a point of exact order 3 to (0, 0) and its tangent to y = 0, giving
// y^2 + u xy + v y = x^3.  Throws domain_error when P is not on the curve,
// has order 2 (vertical tangent), or fails the order-3 certificate a2 = 0.
std::pair<Q, Q> tate_normal_form(const elliptic::LongW<Q>& W, const Q& px, const Q& py);

// ---------------------------------------------------------------------------
// F_p counts of the parameter spaces
// ---------------------------------------------------------------------------

enum class Family { X1_3, X_3 };
enum class LevelStructure { point_of_order_ell, full_level };

// Brute-force count of family points (u, v) in F_p^2; p >= 5.
u64 count_parameter_points_fp(u64 p, Family family);

// Brute-force count of nonsingular short Weierstrass pairs (a, b) in F_p^2
// whose curve has a point of order ell (resp. full ell-torsion); p != ell.
u64 count_weierstrass_with_ell_structure(u64 p, u64 ell, LevelStructure s);

} // namespace qpt::moduli
