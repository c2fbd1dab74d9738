// moduli.cpp: parameter-space maps, Tate normal form, F_p counts.
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "moduli.hpp"

#include <algorithm>

namespace qpt::moduli {

// ---------------------------------------------------------------------------
// QBivar basics
// ---------------------------------------------------------------------------

static void normalize(QBivar& f) {
    for (auto& row : f.c) {
        while (!row.empty() && row.back() == 0) row.pop_back();
    }
    while (!f.c.empty() && f.c.back().empty()) f.c.pop_back();
}

bool QBivar::is_zero() const {
    for (const auto& row : c)
        for (const auto& q : row)
            if (q != 0) return false;
    return true;
}

int QBivar::degu() const {
    for (int i = (int)c.size() - 1; i >= 0; i--)
        for (const auto& q : c[i])
            if (q != 0) return i;
    return -1;
}

int QBivar::degv() const {
    int d = -1;
    for (const auto& row : c)
        for (int j = (int)row.size() - 1; j >= 0; j--)
            if (row[j] != 0) {
                d = std::max(d, j);
                break;
            }
    return d;
}

QBivar bv_const(const Q& q) { return bv_mono(q, 0, 0); }
QBivar bv_u() { return bv_mono(1, 1, 0); }
QBivar bv_v() { return bv_mono(1, 0, 1); }

QBivar bv_mono(const Q& q, unsigned i, unsigned j) {
    QBivar f;
    if (q == 0) return f;
    f.c.resize(i + 1);
    f.c[i].resize(j + 1);
    f.c[i][j] = q;
    return f;
}

QBivar bv_add(const QBivar& f, const QBivar& g) {
    QBivar r;
    r.c.resize(std::max(f.c.size(), g.c.size()));
    for (size_t i = 0; i < r.c.size(); i++) {
        const auto* fr = i < f.c.size() ? &f.c[i] : nullptr;
        const auto* gr = i < g.c.size() ? &g.c[i] : nullptr;
        r.c[i].resize(std::max(fr ? fr->size() : 0, gr ? gr->size() : 0));
        for (size_t j = 0; j < r.c[i].size(); j++) {
            if (fr && j < fr->size()) r.c[i][j] += (*fr)[j];
            if (gr && j < gr->size()) r.c[i][j] += (*gr)[j];
        }
    }
    normalize(r);
    return r;
}

QBivar bv_sub(const QBivar& f, const QBivar& g) { return bv_add(f, bv_scale(g, -1)); }

QBivar bv_mul(const QBivar& f, const QBivar& g) {
    QBivar r;
    if (f.is_zero() || g.is_zero()) return r;
    r.c.assign(f.c.size() + g.c.size() - 1, {});
    size_t cols = 0;
    for (const auto& row : f.c) cols = std::max(cols, row.size());
    size_t gcols = 0;
    for (const auto& row : g.c) gcols = std::max(gcols, row.size());
    for (auto& row : r.c) row.assign(cols + gcols, 0);
    for (size_t i = 0; i < f.c.size(); i++)
        for (size_t j = 0; j < f.c[i].size(); j++) {
            if (f.c[i][j] == 0) continue;
            for (size_t k = 0; k < g.c.size(); k++)
                for (size_t l = 0; l < g.c[k].size(); l++)
                    if (g.c[k][l] != 0) r.c[i + k][j + l] += f.c[i][j] * g.c[k][l];
        }
    normalize(r);
    return r;
}

QBivar bv_scale(const QBivar& f, const Q& q) {
    QBivar r = f;
    for (auto& row : r.c)
        for (auto& x : row) x *= q;
    normalize(r);
    return r;
}

QBivar bv_pow(const QBivar& f, unsigned e) {
    QBivar r = bv_const(1);
    for (unsigned i = 0; i < e; i++) r = bv_mul(r, f);
    return r;
}

QBivar bv_du(const QBivar& f) {
    QBivar r;
    if (f.c.size() <= 1) return r;
    r.c.resize(f.c.size() - 1);
    for (size_t i = 1; i < f.c.size(); i++) {
        r.c[i - 1].resize(f.c[i].size());
        for (size_t j = 0; j < f.c[i].size(); j++) r.c[i - 1][j] = Q((long)i) * f.c[i][j];
    }
    normalize(r);
    return r;
}

QBivar bv_dv(const QBivar& f) {
    QBivar r;
    r.c.resize(f.c.size());
    for (size_t i = 0; i < f.c.size(); i++) {
        if (f.c[i].size() <= 1) continue;
        r.c[i].resize(f.c[i].size() - 1);
        for (size_t j = 1; j < f.c[i].size(); j++) r.c[i][j - 1] = Q((long)j) * f.c[i][j];
    }
    normalize(r);
    return r;
}

bool bv_eq(const QBivar& f, const QBivar& g) { return bv_sub(f, g).is_zero(); }

Q bv_eval(const QBivar& f, const Q& u, const Q& v) {
    Q acc = 0;
    for (size_t i = f.c.size(); i-- > 0;) {
        Q row = 0;
        for (size_t j = f.c[i].size(); j-- > 0;) row = row * v + f.c[i][j];
        acc = acc * u + row;
    }
    return acc;
}

ResidueInt bv_eval_residue(const QBivar& f, const ResidueInt& u, const ResidueInt& v) {
    if (u.p != v.p || u.k != v.k)
        throw precondition_error("bv_eval_residue: mismatched residue rings");
    auto lift = [&](const Q& q) {
        ResidueInt num = padic::make_residue(u.p, u.k, mpz_class(q.get_num()));
        ResidueInt den = padic::make_residue(u.p, u.k, mpz_class(q.get_den()));
        return padic::rdiv_unit(num, den);
    };
    ResidueInt acc = padic::make_residue_u64(u.p, u.k, 0);
    for (size_t i = f.c.size(); i-- > 0;) {
        ResidueInt row = padic::make_residue_u64(u.p, u.k, 0);
        for (size_t j = f.c[i].size(); j-- > 0;)
            row = padic::radd(padic::rmul(row, v), lift(f.c[i][j]));
        acc = padic::radd(padic::rmul(acc, u), row);
    }
    return acc;
}

std::vector<Q> bv_specialize_u(const QBivar& f, const Q& u0) {
    std::vector<Q> out;
    Q pw = 1;
    for (size_t i = 0; i < f.c.size(); i++) {
        if (f.c[i].size() > out.size()) out.resize(f.c[i].size(), 0);
        for (size_t j = 0; j < f.c[i].size(); j++) out[j] += f.c[i][j] * pw;
        pw *= u0;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<Q> bv_specialize_v(const QBivar& f, const Q& v0) {
    std::vector<Q> out(f.c.size(), 0);
    for (size_t i = 0; i < f.c.size(); i++) {
        Q pw = 1;
        for (size_t j = 0; j < f.c[i].size(); j++) {
            out[i] += f.c[i][j] * pw;
            pw *= v0;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

QBivar bv_jacobian(const QBivar& F, const QBivar& G) {
    return bv_sub(bv_mul(bv_du(F), bv_dv(G)), bv_mul(bv_dv(F), bv_du(G)));
}

// ---------------------------------------------------------------------------
// Univariate resultant over Q
// ---------------------------------------------------------------------------

static int qdeg(const std::vector<Q>& f) {
    for (int i = (int)f.size() - 1; i >= 0; i--)
        if (f[i] != 0) return i;
    return -1;
}

static Q qpow(const Q& x, int e) {
    Q r = 1;
    for (int i = 0; i < e; i++) r *= x;
    return r;
}

// res(f, g) = (-1)^{df dg} lc(g)^{df - dr} res(g, f mod g), with the bases
// res(f, c) = c^{deg f} and res(c, g) = c^{deg g}.
Q resultant(std::vector<Q> f, std::vector<Q> g) {
    int df = qdeg(f), dg = qdeg(g);
    if (df < 0 || dg < 0) return 0; // convention: zero polynomial
    if (dg == 0) return qpow(g[0], df);
    if (df == 0) return qpow(f[0], dg);
    if (df < dg) {
        Q s = (df % 2 && dg % 2) ? -1 : 1;
        return s * resultant(std::move(g), std::move(f));
    }
    std::vector<Q> r = f;
    const Q lg = g[dg];
    for (int i = df; i >= dg; i--) {
        if (r[i] == 0) continue;
        Q q = r[i] / lg;
        for (int j = 0; j <= dg; j++) r[i - dg + j] -= q * g[j];
    }
    int dr = qdeg(r);
    if (dr < 0) return 0; // g divides f: nonconstant common factor
    r.resize(dr + 1);
    Q s = (df % 2 && dg % 2) ? -1 : 1;
    return s * qpow(lg, df - dr) * resultant(std::move(g), std::move(r));
}

// ---------------------------------------------------------------------------
// Families and twists
// ---------------------------------------------------------------------------

bool x1_family_ok(const Q& u, const Q& v) { return (u * u * u - 27 * v) != 0 && v != 0; }
bool x3_family_ok(const Q& u, const Q& v) { return u != 0 && (u * u * u != v * v * v); }

u64 least_nonresidue(u64 p) {
    if (p < 3 || p % 2 == 0) throw precondition_error("least_nonresidue: p must be odd >= 3");
    for (u64 n = 2; n < p; n++)
        if (padic::legendre_u64(n, p) == -1) return n;
    throw precondition_error("least_nonresidue: no nonresidue found (p not prime?)");
}

TwistParams make_twist_params(u64 p, unsigned delta, unsigned epsilon) {
    if (p < 5) throw precondition_error("make_twist_params: p must be >= 5");
    if (delta > 1 || epsilon > 1)
        throw precondition_error("make_twist_params: delta, epsilon must be 0 or 1");
    return {p, delta, epsilon, least_nonresidue(p)};
}

mpz_class twist_b(const TwistParams& t) {
    mpz_class b = 16;
    for (unsigned i = 0; i < 3 * t.delta; i++) b *= (unsigned long)t.p;
    for (unsigned i = 0; i < 3 * t.epsilon; i++) b *= (unsigned long)t.nu;
    return b;
}

// ---------------------------------------------------------------------------
// The maps
// ---------------------------------------------------------------------------

std::pair<Q, Q> map_at(const MapUV& m, const Q& u, const Q& v) {
    return {bv_eval(m.a, u, v), bv_eval(m.b, u, v)};
}

std::pair<ResidueInt, ResidueInt> map_at_residue(const MapUV& m, const ResidueInt& u,
                                                 const ResidueInt& v) {
    return {bv_eval_residue(m.a, u, v), bv_eval_residue(m.b, u, v)};
}

MapUV pi1() {
    MapUV m;
    m.a = bv_add(bv_mono(8, 1, 1), bv_mono(Q(-1, 3), 4, 0));
    m.b = bv_add(bv_add(bv_mono(16, 0, 2), bv_mono(Q(-8, 3), 3, 1)), bv_mono(Q(2, 27), 6, 0));
    return m;
}

MapUV pi2() {
    MapUV m;
    m.a = bv_add(bv_mono(-216, 3, 1), bv_mono(-27, 0, 4));
    m.b = bv_add(bv_add(bv_mono(-432, 6, 0), bv_mono(-1080, 3, 3)), bv_mono(54, 0, 6));
    return m;
}

MapUV pi_psi(const Q& lambda) {
    MapUV m;
    Q l2 = lambda * lambda, l3 = l2 * lambda;
    m.a = bv_add(bv_mono(2 * lambda, 1, 1), bv_mono(-l2 / 3, 4, 0));
    m.b = bv_add(bv_add(bv_mono(lambda, 0, 2), bv_mono(-2 * l2 / 3, 3, 1)),
                 bv_mono(2 * l3 / 27, 6, 0));
    return m;
}

Q psi_kernel_x(const Q& lambda, const Q& u) { return lambda * u * u / 3; }

MapUV hesse_map(const Q& a, const Q& b) {
    Q a2 = a * a, a3 = a2 * a, a4 = a3 * a, b2 = b * b, b3 = b2 * b;
    MapUV m;
    m.a = bv_add(bv_add(bv_add(bv_mono(-6912 * a3, 0, 4), bv_mono(-288 * a2, 2, 2)),
                        bv_add(bv_mono(-3456 * a * b, 1, 3), bv_mono(a, 4, 0))),
                 bv_add(bv_mono(-62208 * b2, 0, 4), bv_mono(72 * b, 3, 1)));
    m.b = bv_add(
        bv_add(bv_add(bv_add(bv_mono(-110592 * a4, 1, 5), bv_mono(-995328 * a3 * b, 0, 6)),
                      bv_add(bv_mono(34560 * a2 * b, 2, 4), bv_mono(-16 * a2, 5, 1))),
               bv_add(bv_add(bv_mono(-497664 * a * b2, 1, 5), bv_mono(-720 * a * b, 4, 2)),
                      bv_mono(-5971968 * b3, 0, 6))),
        bv_add(bv_mono(-17280 * b2, 3, 3), bv_mono(b, 6, 0)));
    return m;
}

std::pair<Q, Q> hesse_c4_c6(const Q& a, const Q& b, const Q& u, const Q& v) {
    return map_at(hesse_map(a, b), u, v);
}

MapUV pi_F(const Q& b) { return hesse_map(0, b); }

MapUV phi_b_map(const TwistParams& t) {
    auto zpow = [](mpz_class base, unsigned e) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
        return r;
    };
    mpz_class p = (unsigned long)t.p, nu = (unsigned long)t.nu;
    mpz_class p2d = zpow(p, 2 * t.delta), p3d = zpow(p, 3 * t.delta);
    mpz_class nu3e = zpow(nu, 3 * t.epsilon), nu6e = nu3e * nu3e, nu9e = nu6e * nu3e;
    mpz_class c_z4 = mpz_class(-zpow(2, 16) * zpow(3, 5)) * p2d * nu6e;
    mpz_class c_u3z = mpz_class(zpow(2, 7) * zpow(3, 2)) * p2d * nu3e;
    mpz_class c_z6 = mpz_class(-zpow(2, 25) * zpow(3, 6)) * p3d * nu9e;
    mpz_class c_u3z3 = mpz_class(-zpow(2, 15) * zpow(3, 3) * 5) * p3d * nu6e;
    mpz_class c_u6 = mpz_class(16) * p3d * nu3e;
    MapUV m;
    // Variables are (u, z); z takes the bivariate v-slot.
    m.a = bv_add(bv_mono(Q(c_z4), 0, 4), bv_mono(Q(c_u3z), 3, 1));
    m.b = bv_add(bv_add(bv_mono(Q(c_z6), 0, 6), bv_mono(Q(c_u3z3), 3, 3)),
                 bv_mono(Q(c_u6), 6, 0));
    return m;
}

HessePoints hesse_torsion_points() {
    HessePoints h;
    h.x1 = bv_add(bv_add(bv_mono(12, 2, 0), bv_mono(12, 1, 1)), bv_mono(3, 0, 2));
    h.y1 = bv_add(bv_add(bv_mono(-36, 3, 0), bv_mono(-36, 2, 1)), bv_mono(-36, 1, 2));
    h.x2 = bv_mono(-9, 0, 2);
    h.y2 = bv_add(bv_mono(12, 3, 0), bv_mono(-12, 0, 3));
    return h;
}

// ---------------------------------------------------------------------------
// Tate normal form
// ---------------------------------------------------------------------------

std::pair<Q, Q> tate_normal_form(const elliptic::LongW<Q>& W, const Q& px, const Q& py) {
    const Q &a1 = W.a1, &a2 = W.a2, &a3 = W.a3, &a4 = W.a4, &a6 = W.a6;
    Q lhs = py * py + a1 * px * py + a3 * py;
    Q rhs = px * px * px + a2 * px * px + a4 * px + a6;
    if (lhs != rhs) throw domain_error("tate_normal_form: point is not on the curve");

    // Translate P to the origin: (x, y) -> (x + px, y + py).
    Q r = px, t = py;
    Q b1 = a1;
    Q b2 = a2 + 3 * r;
    Q b3 = a3 + r * a1 + 2 * t;
    Q b4 = a4 + 2 * r * a2 + 3 * r * r - t * a1;
    // b6 = 0 because P lies on the curve.

    if (b3 == 0) throw domain_error("tate_normal_form: point has order dividing 2");

    // Shear the tangent at the origin onto y = 0: y -> y + s x.
    Q s = b4 / b3;
    Q c1 = b1 + 2 * s;
    Q c2 = b2 - s * b1 - s * s;
    Q c3 = b3;
    if (c2 != 0) throw domain_error("tate_normal_form: point does not have order 3");
    return {c1, c3};
}

// ---------------------------------------------------------------------------
// F_p counts
// ---------------------------------------------------------------------------

u64 count_parameter_points_fp(u64 p, Family family) {
    if (p < 5) throw precondition_error("count_parameter_points_fp: p must be >= 5");
    u64 n = 0;
    for (u64 u = 0; u < p; u++) {
        u64 u3 = mulmod(mulmod(u, u, p), u, p);
        for (u64 v = 0; v < p; v++) {
            if (family == Family::X1_3) {
                if (v != 0 && (u3 + p - mulmod(27 % p, v, p)) % p != 0) n++;
            } else {
                u64 v3 = mulmod(mulmod(v, v, p), v, p);
                if (u != 0 && u3 != v3) n++;
            }
        }
    }
    return n;
}

u64 count_weierstrass_with_ell_structure(u64 p, u64 ell, LevelStructure s) {
    if (p < 3 || p == ell)
        throw precondition_error("count_weierstrass_with_ell_structure: need odd p != ell");
    u64 n = 0;
    for (u64 a = 0; a < p; a++) {
        for (u64 b = 0; b < p; b++) {
            u64 disc = (mulmod(4, mulmod(mulmod(a, a, p), a, p), p) +
                        mulmod(27 % p, mulmod(b, b, p), p)) %
                       p;
            if (disc == 0) continue;
            elliptic::FpCurve E{p, 0, 0, 0, a, b};
            u64 tc = elliptic::fp_torsion_count(E, (unsigned)ell);
            if (s == LevelStructure::point_of_order_ell ? tc > 1 : tc == ell * ell) n++;
        }
    }
    return n;
}

} // namespace qpt::moduli
