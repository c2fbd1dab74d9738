// elliptic.cpp: Weierstrass models, division polynomials, F_p points, and
// Kodaira classification from residue coefficients.
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "elliptic.hpp"

#include <algorithm>

namespace qpt::elliptic {

using padic::ResidueInt;
using padic::Val;
using padic::ZPoly;

LongZ to_long(const ShortZ& E) { return {0, 0, 0, E.a, E.b}; }
LongZ to_long(const MediumZ& E) { return {0, E.A2, 0, E.A4, E.A6}; }

Invariants invariants(const LongZ& E) {
    Invariants I;
    I.b2 = E.a1 * E.a1 + 4 * E.a2;
    I.b4 = 2 * E.a4 + E.a1 * E.a3;
    I.b6 = E.a3 * E.a3 + 4 * E.a6;
    I.b8 = E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 +
           E.a2 * E.a3 * E.a3 - E.a4 * E.a4;
    I.c4 = I.b2 * I.b2 - 24 * I.b4;
    I.c6 = -I.b2 * I.b2 * I.b2 + 36 * I.b2 * I.b4 - 216 * I.b6;
    I.disc = -I.b2 * I.b2 * I.b8 - 8 * I.b4 * I.b4 * I.b4 - 27 * I.b6 * I.b6 +
             9 * I.b2 * I.b4 * I.b6;
    return I;
}

MediumZ complete_square(const LongZ& E) {
    Invariants I = invariants(E);
    return {I.b2, 8 * I.b4, 16 * I.b6};
}

ShortZ depress(const MediumZ& E) {
    Invariants I = invariants(to_long(E));
    return {-27 * I.c4, -54 * I.c6};
}

ShortZ to_short(const LongZ& E) {
    Invariants I = invariants(E);
    return {-27 * I.c4, -54 * I.c6};
}

// --------------------------------------------------------------------------
// Division polynomials
// --------------------------------------------------------------------------

namespace {

ZPoly pmul(const ZPoly& f, const ZPoly& g) {
    ZPoly h;
    h.c.assign(f.c.size() + g.c.size() - 1, mpz_class(0));
    for (size_t i = 0; i < f.c.size(); i++)
        for (size_t j = 0; j < g.c.size(); j++) h.c[i + j] += f.c[i] * g.c[j];
    return h;
}

ZPoly psub(const ZPoly& f, const ZPoly& g) {
    ZPoly h = f;
    if (h.c.size() < g.c.size()) h.c.resize(g.c.size(), mpz_class(0));
    for (size_t i = 0; i < g.c.size(); i++) h.c[i] -= g.c[i];
    return h;
}

ZPoly psq(const ZPoly& f) { return pmul(f, f); }
ZPoly pcube(const ZPoly& f) { return pmul(pmul(f, f), f); }

} // namespace

ZPoly division_polynomial(const LongZ& E, unsigned n) {
    if (n == 0) throw domain_error("division_polynomial: n must be >= 1");
    Invariants I = invariants(E);
    // psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    ZPoly F;
    F.c = {I.b6, 2 * I.b4, I.b2, mpz_class(4)};
    std::vector<ZPoly> rep(std::max(n + 1, 5u));
    rep[0].c = {mpz_class(0)};
    rep[1].c = {mpz_class(1)};
    rep[2].c = {mpz_class(1)};
    rep[3].c = {I.b8, 3 * I.b6, 3 * I.b4, I.b2, mpz_class(3)};
    rep[4].c = {I.b4 * I.b8 - I.b6 * I.b6, I.b2 * I.b8 - I.b4 * I.b6, 10 * I.b8,
                10 * I.b6, 5 * I.b4, I.b2, mpz_class(2)};
    ZPoly F2 = psq(F);
    for (unsigned j = 5; j <= n; j++) {
        unsigned m = j / 2;
        if (j % 2) {
            // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3, with the
            // even-index entries stored as psi/psi_2 and psi_2^2 = F.
            ZPoly t1 = pmul(rep[m + 2], pcube(rep[m]));
            ZPoly t2 = pmul(rep[m - 1], pcube(rep[m + 1]));
            if (m % 2 == 0) t1 = pmul(t1, F2);
            else t2 = pmul(t2, F2);
            rep[j] = psub(t1, t2);
        } else {
            ZPoly t1 = pmul(rep[m + 2], psq(rep[m - 1]));
            ZPoly t2 = pmul(rep[m - 2], psq(rep[m + 1]));
            rep[j] = pmul(rep[m], psub(t1, t2));
        }
    }
    return padic::zp_strip(rep[n]);
}

// --------------------------------------------------------------------------
// Points over F_p
// --------------------------------------------------------------------------

FpCurve fp_reduce(const LongZ& E, u64 p) {
    if (p < 3) throw domain_error("fp_reduce: p must be an odd prime");
    auto red = [&](const mpz_class& v) { return mpz_fdiv_ui(v.get_mpz_t(), p); };
    return {p, red(E.a1), red(E.a2), red(E.a3), red(E.a4), red(E.a6)};
}

static u64 fp_disc(const FpCurve& E) {
    u64 p = E.p;
    u64 b2 = addmod(mulmod(E.a1, E.a1, p), mulmod(4 % p, E.a2, p), p);
    u64 b4 = addmod(mulmod(2 % p, E.a4, p), mulmod(E.a1, E.a3, p), p);
    u64 b6 = addmod(mulmod(E.a3, E.a3, p), mulmod(4 % p, E.a6, p), p);
    u64 b8 = mulmod(mulmod(E.a1, E.a1, p), E.a6, p);
    b8 = addmod(b8, mulmod(mulmod(4 % p, E.a2, p), E.a6, p), p);
    b8 = submod(b8, mulmod(mulmod(E.a1, E.a3, p), E.a4, p), p);
    b8 = addmod(b8, mulmod(mulmod(E.a2, E.a3, p), E.a3, p), p);
    b8 = submod(b8, mulmod(E.a4, E.a4, p), p);
    u64 d = submod(0, mulmod(mulmod(b2, b2, p), b8, p), p);
    d = submod(d, mulmod(8 % p, mulmod(b4, mulmod(b4, b4, p), p), p), p);
    d = submod(d, mulmod(27 % p, mulmod(b6, b6, p), p), p);
    d = addmod(d, mulmod(9 % p, mulmod(b2, mulmod(b4, b6, p), p), p), p);
    return d;
}

bool fp_is_singular(const FpCurve& E) { return fp_disc(E) == 0; }

FpPoint fp_neg(const FpCurve& E, const FpPoint& P) {
    if (P.inf) return P;
    u64 p = E.p;
    u64 y = submod(0, addmod(P.y, addmod(mulmod(E.a1, P.x, p), E.a3, p), p), p);
    return {P.x, y, false};
}

FpPoint fp_add(const FpCurve& E, const FpPoint& P, const FpPoint& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 p = E.p;
    if (P.x == Q.x &&
        addmod(addmod(P.y, Q.y, p), addmod(mulmod(E.a1, Q.x, p), E.a3, p), p) == 0)
        return {};
    u64 lam;
    if (P.x != Q.x) {
        lam = mulmod(submod(Q.y, P.y, p), inv_mod(submod(Q.x, P.x, p), p), p);
    } else {
        u64 num = addmod(mulmod(3 % p, mulmod(P.x, P.x, p), p),
                         mulmod(mulmod(2 % p, E.a2, p), P.x, p), p);
        num = addmod(num, E.a4, p);
        num = submod(num, mulmod(E.a1, P.y, p), p);
        u64 den = addmod(mulmod(2 % p, P.y, p), addmod(mulmod(E.a1, P.x, p), E.a3, p), p);
        lam = mulmod(num, inv_mod(den, p), p);
    }
    u64 nu = submod(P.y, mulmod(lam, P.x, p), p);
    u64 x3 = addmod(mulmod(lam, lam, p), mulmod(E.a1, lam, p), p);
    x3 = submod(x3, addmod(E.a2, addmod(P.x, Q.x, p), p), p);
    u64 y3 = submod(0, addmod(mulmod(addmod(lam, E.a1, p), x3, p), addmod(nu, E.a3, p), p), p);
    return {x3, y3, false};
}

FpPoint fp_mul(const FpCurve& E, u64 n, const FpPoint& P) {
    FpPoint r{};
    FpPoint base = P;
    while (n) {
        if (n & 1) r = fp_add(E, r, base);
        base = fp_add(E, base, base);
        n >>= 1;
    }
    return r;
}

std::vector<FpPoint> fp_points(const FpCurve& E) {
    if (E.p > 100000) throw domain_error("fp_points: p too large for enumeration");
    u64 p = E.p;
    std::vector<FpPoint> pts;
    u64 inv2 = inv_mod(2 % p, p);
    for (u64 x = 0; x < p; x++) {
        u64 fx = addmod(mulmod(x, mulmod(x, x, p), p), mulmod(E.a2, mulmod(x, x, p), p), p);
        fx = addmod(fx, addmod(mulmod(E.a4, x, p), E.a6, p), p);
        u64 s = addmod(mulmod(E.a1, x, p), E.a3, p); // y^2 + s y = f(x)
        u64 D = addmod(mulmod(s, s, p), mulmod(4 % p, fx, p), p);
        auto r = padic::sqrt_mod_p(D, p);
        if (!r) continue;
        u64 y1 = mulmod(submod(*r, s, p), inv2, p);
        pts.push_back({x, y1, false});
        if (*r != 0) {
            u64 y2 = mulmod(submod(submod(0, *r, p), s, p), inv2, p);
            pts.push_back({x, y2, false});
        }
    }
    return pts;
}

u64 fp_group_order(const FpCurve& E) {
    if (E.p > 1000000) throw domain_error("fp_group_order: p too large");
    if (fp_is_singular(E)) throw precondition_error("fp_group_order: singular curve");
    u64 p = E.p;
    u64 b2 = addmod(mulmod(E.a1, E.a1, p), mulmod(4 % p, E.a2, p), p);
    u64 b4 = addmod(mulmod(2 % p, E.a4, p), mulmod(E.a1, E.a3, p), p);
    u64 b6 = addmod(mulmod(E.a3, E.a3, p), mulmod(4 % p, E.a6, p), p);
    u64 i4 = inv_mod(4 % p, p), i2 = inv_mod(2 % p, p);
    u64 c2 = mulmod(b2, i4, p), c1 = mulmod(b4, i2, p), c0 = mulmod(b6, i4, p);
    i64 sum = 0;
    for (u64 x = 0; x < p; x++) {
        u64 g = addmod(mulmod(addmod(x, c2, p), mulmod(x, x, p), p),
                       addmod(mulmod(c1, x, p), c0, p), p);
        sum += padic::legendre_u64(g, p);
    }
    return (u64)((i64)p + 1 + sum);
}

u64 fp_torsion_count(const FpCurve& E, unsigned n) {
    u64 cnt = 1; // the point at infinity
    for (const auto& P : fp_points(E))
        if (fp_mul(E, n, P).inf) cnt++;
    return cnt;
}

bool fp_has_point_of_order(const FpCurve& E, unsigned ell) {
    return fp_torsion_count(E, ell) > 1;
}

// --------------------------------------------------------------------------
// Kodaira classification
// --------------------------------------------------------------------------

const char* kodaira_name(Kodaira t) {
    switch (t) {
        case Kodaira::good: return "good";
        case Kodaira::In: return "In";
        case Kodaira::II: return "II";
        case Kodaira::III: return "III";
        case Kodaira::IV: return "IV";
        case Kodaira::I0star: return "I0*";
        case Kodaira::Instar: return "In*";
        case Kodaira::IVstar: return "IV*";
        case Kodaira::IIIstar: return "III*";
        case Kodaira::IIstar: return "II*";
        case Kodaira::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

enum class Tri { yes, no, unknown };

// v_p(x) >= j / == j, sound for every lift of the residue x.
Tri val_ge(const Val& v, unsigned j) {
    if (v.exact) return v.v >= j ? Tri::yes : Tri::no;
    return j <= v.v ? Tri::yes : Tri::unknown; // only v_p >= v.v is known
}

Tri val_eq(const Val& v, unsigned j) {
    if (v.exact) return v.v == j ? Tri::yes : Tri::no;
    return j < v.v ? Tri::no : Tri::unknown;
}

ResidueInt r_disc_short(const ResidueInt& a, const ResidueInt& b) {
    using namespace padic;
    ResidueInt a3 = rmul(rmul(a, a), a);
    ResidueInt b2 = rmul(b, b);
    return rmul_i(radd(rmul_i(a3, 4), rmul_i(b2, 27)), -16);
}

void set_vdisc(Reduction& R, const Val& vd) {
    R.vdisc = vd.v;
    R.vdisc_exact = vd.exact;
}

Reduction undecided(const Val& vd, unsigned rescalings) {
    Reduction R;
    R.type = Kodaira::unknown;
    set_vdisc(R, vd);
    R.rescalings = rescalings;
    return R;
}

// Runs f on scope exit; used to hand the final working model back to the
// caller from whichever of the many return paths fires.
template <class F> struct ScopeExit {
    F f;
    ~ScopeExit() { f(); }
};
template <class F> ScopeExit(F) -> ScopeExit<F>;

} // namespace

Reduction classify_reduction(const ShortW<ResidueInt>& E, ShortW<ResidueInt>* minimal) {
    using namespace padic;
    if (E.a.p != E.b.p) throw precondition_error("classify_reduction: mismatched p");
    if (E.a.p < 5) throw domain_error("classify_reduction: requires p >= 5");
    unsigned k = std::min(E.a.k, E.b.k);
    ResidueInt a = rtrunc(E.a, k), b = rtrunc(E.b, k);
    u64 p = a.p;
    Reduction R;
    ScopeExit capture{[&] {
        if (minimal) *minimal = ShortW<ResidueInt>{a, b};
    }};

    for (;;) {
        ResidueInt d = r_disc_short(a, b);
        Val vd = valuation(d);
        Val va = valuation(a), vb = valuation(b);

        if (vd.exact && vd.v == 0) {
            R.type = Kodaira::good;
            R.vdisc = 0;
            R.vdisc_exact = true;
            return R;
        }
        if (va.exact && va.v == 0) {
            // Multiplicative: node at x0 = -3b / 2a; split iff 3 x0 is a
            // nonzero square mod p (b is a unit here, else disc would be one).
            R.type = Kodaira::In;
            R.n = vd.v;
            R.n_exact = vd.exact;
            set_vdisc(R, vd);
            u64 am = a.value % p, bm = b.value % p;
            u64 x0 = submod(0, mulmod(mulmod(3 % p, bm, p), inv_mod(mulmod(2, am, p), p), p), p);
            R.split = legendre_u64(mulmod(3 % p, x0, p), p) == 1 ? 1 : 0;
            return R;
        }
        // Additive range: alpha = v(a) >= 1, beta = v(b) >= 1 from here on.
        auto fixed = [&](Kodaira t, unsigned v) {
            R.type = t;
            R.vdisc = v;
            R.vdisc_exact = true;
            return R;
        };
        Tri t = val_eq(vb, 1);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::yes) return fixed(Kodaira::II, 2);
        t = val_eq(va, 1);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::yes) return fixed(Kodaira::III, 3);
        // alpha >= 2
        t = val_eq(vb, 2);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::yes) {
            fixed(Kodaira::IV, 4);
            R.tam3 = legendre_u64(rshift_down(b, 2).value % p, p) == 1 ? 1 : 0;
            return R;
        }
        // beta >= 3
        t = val_eq(vb, 3);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::yes) {
            Tri ta = val_eq(va, 2);
            if (ta == Tri::unknown) return undecided(vd, R.rescalings);
            if (ta == Tri::no) return fixed(Kodaira::I0star, 6); // alpha >= 3
            // alpha = 2, beta = 3: I0* vs In* splits on v(disc).
            if (vd.exact) {
                if (vd.v == 6) return fixed(Kodaira::I0star, 6);
                R.type = Kodaira::Instar;
                R.n = vd.v - 6;
                R.n_exact = true;
                set_vdisc(R, vd);
                return R;
            }
            if (vd.v >= 7) { // >= k >= 7: In* for some n >= k - 6
                R.type = Kodaira::Instar;
                R.n = vd.v - 6;
                R.n_exact = false;
                set_vdisc(R, vd);
                return R;
            }
            return undecided(vd, R.rescalings);
        }
        // beta >= 4
        Tri ta = val_eq(va, 2);
        if (ta == Tri::unknown) return undecided(vd, R.rescalings);
        if (ta == Tri::yes) return fixed(Kodaira::I0star, 6);
        // alpha >= 3
        t = val_eq(vb, 4);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::yes) {
            fixed(Kodaira::IVstar, 8);
            R.tam3 = legendre_u64(rshift_down(b, 4).value % p, p) == 1 ? 1 : 0;
            return R;
        }
        // beta >= 5
        ta = val_eq(va, 3);
        if (ta == Tri::unknown) return undecided(vd, R.rescalings);
        if (ta == Tri::yes) return fixed(Kodaira::IIIstar, 9);
        // alpha >= 4
        t = val_eq(vb, 5);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::yes) return fixed(Kodaira::IIstar, 10);
        // alpha >= 4, beta >= 6: not minimal; rescale by u = p.
        if (k < 7) return undecided(vd, R.rescalings);
        a = rtrunc(rshift_down(a, 4), k - 6);
        b = rshift_down(b, 6);
        k -= 6;
        R.rescalings++;
    }
}

namespace {

// x -> x + r on y^2 = x^3 + A2 x^2 + A4 x + A6 (exact on residues).
void translate_medium(ResidueInt& A2, ResidueInt& A4, ResidueInt& A6, i64 r) {
    using namespace padic;
    ResidueInt r1 = make_residue_i64(A2.p, A2.k, r);
    ResidueInt r2 = rmul(r1, r1), r3 = rmul(r2, r1);
    // order matters: A6 uses old A4, A2; A4 uses old A2
    A6 = radd(radd(A6, rmul(r1, A4)), radd(rmul(r2, A2), r3));
    A4 = radd(A4, radd(rmul_i(rmul(r1, A2), 2), rmul_i(r2, 3)));
    A2 = radd(A2, rmul_i(r1, 3));
}

ResidueInt r_disc_medium(const ResidueInt& A2, const ResidueInt& A4, const ResidueInt& A6) {
    using namespace padic;
    // disc = -64 A2^3 A6 + 16 A2^2 A4^2 - 64 A4^3 - 432 A6^2 + 288 A2 A4 A6
    ResidueInt A2sq = rmul(A2, A2);
    ResidueInt t = rmul_i(rmul(rmul(A2sq, A2), A6), -64);
    t = radd(t, rmul_i(rmul(A2sq, rmul(A4, A4)), 16));
    t = radd(t, rmul_i(rmul(rmul(A4, A4), A4), -64));
    t = radd(t, rmul_i(rmul(A6, A6), -432));
    t = radd(t, rmul_i(rmul(rmul(A2, A4), A6), 288));
    return t;
}

} // namespace

Reduction classify_reduction_p3(const MediumW<ResidueInt>& E, MediumW<ResidueInt>* normalized) {
    using namespace padic;
    if (E.A2.p != 3 || E.A4.p != 3 || E.A6.p != 3)
        throw domain_error("classify_reduction_p3: requires p = 3");
    unsigned k = std::min(E.A2.k, std::min(E.A4.k, E.A6.k));
    ResidueInt A2 = rtrunc(E.A2, k), A4 = rtrunc(E.A4, k), A6 = rtrunc(E.A6, k);
    Reduction R;
    ScopeExit capture{[&] {
        if (normalized) *normalized = MediumW<ResidueInt>{A2, A4, A6};
    }};

    for (;;) {
        ResidueInt d = r_disc_medium(A2, A4, A6);
        Val vd = valuation(d);
        if (vd.exact && vd.v == 0) {
            R.type = Kodaira::good;
            R.vdisc = 0;
            R.vdisc_exact = true;
            return R;
        }
        // Singular point of the reduction has x in F_3; translate it to 0.
        int xbar = -1;
        {
            u64 c2 = A2.value % 3, c1 = A4.value % 3, c0 = A6.value % 3;
            for (u64 x = 0; x < 3 && xbar < 0; x++) {
                u64 f = (x * x * x + c2 * x * x + c1 * x + c0) % 3;
                u64 df = (2 * c2 * x + c1) % 3; // f' = 3x^2 + 2 A2 x + A4
                if (f == 0 && df == 0) xbar = (int)x;
            }
            if (xbar < 0) throw precondition_error("classify_reduction_p3: internal");
        }
        if (xbar > 0) translate_medium(A2, A4, A6, xbar);

        Val v2 = valuation(A2);
        if (v2.exact && v2.v == 0) {
            // Node at the origin: y^2 = A2 x^2 + ... ; split iff A2 is a
            // square mod 3, i.e. A2 = 1 (mod 3).
            R.type = Kodaira::In;
            R.n = vd.v;
            R.n_exact = vd.exact;
            set_vdisc(R, vd);
            R.split = A2.value % 3 == 1 ? 1 : 0;
            return R;
        }
        // Additive. Tate's steps 3-10 at p = 3 (a1 = a3 = 0 throughout).
        Val v6 = valuation(A6);
        Tri t = val_ge(v6, 2);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::no) {
            R.type = Kodaira::II;
            set_vdisc(R, vd);
            return R;
        }
        ResidueInt b8 = rsub(rmul_i(rmul(A2, A6), 4), rmul(A4, A4));
        t = val_ge(valuation(b8), 3);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::no) {
            R.type = Kodaira::III;
            set_vdisc(R, vd);
            return R;
        }
        t = val_ge(v6, 3);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::no) {
            R.type = Kodaira::IV; // v(A6) = 2
            set_vdisc(R, vd);
            R.tam3 = rshift_down(A6, 2).value % 3 == 1 ? 1 : 0;
            return R;
        }
        // P(T) = T^3 + (A2/3) T^2 + (A4/9) T + (A6/27) over F_3.
        if (k < 4) return undecided(vd, R.rescalings);
        u64 c2 = (A2.value / 3) % 3, c1 = (A4.value / 9) % 3, c0 = (A6.value / 27) % 3;
        unsigned nroots = 0;
        int multiple = -1;
        for (u64 x = 0; x < 3; x++) {
            if ((x * x * x + c2 * x * x + c1 * x + c0) % 3 == 0) {
                nroots++;
                if ((2 * c2 * x + c1) % 3 == 0) multiple = (int)x;
            }
        }
        (void)nroots;
        if (multiple < 0) {
            R.type = Kodaira::I0star;
            set_vdisc(R, vd);
            return R;
        }
        if (c2 != 0 || c1 != 0) {
            // Double (not triple) root: I_n* with n = v(disc) - 6; the twist
            // is quadratic, hence tame even at 3, so the relation is exact.
            if (vd.exact) {
                R.type = Kodaira::Instar;
                R.n = vd.v - 6;
                R.n_exact = true;
                set_vdisc(R, vd);
                return R;
            }
            if (vd.v >= 7) {
                R.type = Kodaira::Instar;
                R.n = vd.v - 6;
                R.n_exact = false;
                set_vdisc(R, vd);
                return R;
            }
            return undecided(vd, R.rescalings);
        }
        // Triple root T = -c0: shift x by 3 r with r = -c0 (cube roots are
        // the identity on F_3).
        i64 r = (i64)((3 - c0) % 3);
        if (r != 0) translate_medium(A2, A4, A6, 3 * r);
        Val w6 = valuation(A6);
        t = val_eq(w6, 4);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::yes) {
            R.type = Kodaira::IVstar;
            set_vdisc(R, vd);
            R.tam3 = rshift_down(A6, 4).value % 3 == 1 ? 1 : 0;
            return R;
        }
        Val w4 = valuation(A4);
        t = val_ge(w4, 4);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::no) {
            R.type = Kodaira::IIIstar; // v(A4) = 3
            set_vdisc(R, vd);
            return R;
        }
        t = val_ge(w6, 6);
        if (t == Tri::unknown) return undecided(vd, R.rescalings);
        if (t == Tri::no) {
            R.type = Kodaira::IIstar; // v(A6) = 5
            set_vdisc(R, vd);
            return R;
        }
        // v(A2) >= 2, v(A4) >= 4, v(A6) >= 6: not minimal; rescale by u = 3.
        if (k < 7) return undecided(vd, R.rescalings);
        A2 = rtrunc(rshift_down(A2, 2), k - 6);
        A4 = rtrunc(rshift_down(A4, 4), k - 6);
        A6 = rshift_down(A6, 6);
        k -= 6;
        R.rescalings++;
    }
}

} // namespace qpt::elliptic
