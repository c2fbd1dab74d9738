// padic.cpp: residues mod p^k, valuations, and root counting over Q_p.
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "padic.hpp"

#include <algorithm>
#include <cstddef>

namespace qpt::padic {

// --------------------------------------------------------------------------
// Residues
// --------------------------------------------------------------------------

static void check_pk(u64 p, unsigned k) {
    if (p < 3 || p % 2 == 0) throw domain_error("p must be an odd prime");
    if (k == 0) throw domain_error("k must be >= 1");
}

ResidueInt make_residue(u64 p, unsigned k, const mpz_class& value) {
    check_pk(p, k);
    ResidueInt r;
    r.p = p;
    r.k = k;
    r.pk = pow_pk(p, k);
    mpz_class m = value % mpz_class(static_cast<unsigned long>(r.pk));
    if (m < 0) m += static_cast<unsigned long>(r.pk);
    r.value = mpz_get_ui(m.get_mpz_t());
    return r;
}

ResidueInt make_residue_u64(u64 p, unsigned k, u64 value) {
    check_pk(p, k);
    ResidueInt r;
    r.p = p;
    r.k = k;
    r.pk = pow_pk(p, k);
    r.value = value % r.pk;
    return r;
}

ResidueInt make_residue_i64(u64 p, unsigned k, i64 value) {
    ResidueInt r = make_residue_u64(p, k, 0);
    i64 m = value % (i64)r.pk;
    if (m < 0) m += (i64)r.pk;
    r.value = (u64)m;
    return r;
}

static unsigned common_k(const ResidueInt& a, const ResidueInt& b) {
    if (a.p != b.p) throw precondition_error("residues with mismatched p");
    return std::min(a.k, b.k);
}

ResidueInt rtrunc(const ResidueInt& a, unsigned k) {
    if (k > a.k) throw precondition_error("cannot raise residue precision");
    if (k == a.k) return a;
    ResidueInt r;
    r.p = a.p;
    r.k = k;
    r.pk = pow_pk(a.p, k);
    r.value = a.value % r.pk;
    return r;
}

ResidueInt radd(const ResidueInt& a, const ResidueInt& b) {
    unsigned k = common_k(a, b);
    ResidueInt r = rtrunc(a, k);
    r.value = addmod(r.value, b.value % r.pk, r.pk);
    return r;
}

ResidueInt rsub(const ResidueInt& a, const ResidueInt& b) {
    unsigned k = common_k(a, b);
    ResidueInt r = rtrunc(a, k);
    r.value = submod(r.value, b.value % r.pk, r.pk);
    return r;
}

ResidueInt rmul(const ResidueInt& a, const ResidueInt& b) {
    unsigned k = common_k(a, b);
    ResidueInt r = rtrunc(a, k);
    r.value = mulmod(r.value, b.value % r.pk, r.pk);
    return r;
}

ResidueInt rmul_i(const ResidueInt& a, i64 c) {
    ResidueInt r = a;
    i64 m = c % (i64)r.pk;
    if (m < 0) m += (i64)r.pk;
    r.value = mulmod(r.value, (u64)m, r.pk);
    return r;
}

ResidueInt rdiv_unit(const ResidueInt& a, const ResidueInt& b) {
    unsigned k = common_k(a, b);
    ResidueInt r = rtrunc(a, k);
    u64 bv = b.value % r.pk;
    if (bv % r.p == 0) throw precondition_error("division by a non-unit residue");
    r.value = mulmod(r.value, inv_mod(bv, r.pk), r.pk);
    return r;
}

ResidueInt rshift_down(const ResidueInt& a, unsigned j) {
    if (j == 0) return a;
    if (j >= a.k) throw precondition_error("rshift_down exhausts precision");
    u64 pj = pow_pk(a.p, j);
    if (a.value % pj != 0) throw precondition_error("rshift_down of a non-divisible value");
    ResidueInt r;
    r.p = a.p;
    r.k = a.k - j;
    r.pk = a.pk / pj;
    r.value = a.value / pj;
    return r;
}

Val valuation(const ResidueInt& x) {
    if (x.value == 0) return {x.k, false};
    unsigned v = 0;
    u64 t = x.value;
    while (t % x.p == 0) {
        t /= x.p;
        v++;
    }
    return {v, true};
}

unsigned valuation_exact(const mpz_class& x, u64 p) {
    if (x == 0) throw precondition_error("valuation of exact zero");
    mpz_class t = abs(x);
    unsigned v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        v++;
    }
    return v;
}

int legendre(const mpz_class& a, u64 p) {
    if (p < 3 || p % 2 == 0) throw domain_error("legendre: p must be an odd prime");
    mpz_class pp(static_cast<unsigned long>(p));
    return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

int legendre_u64(u64 a, u64 p) {
    // Euler's criterion; deliberately a different route than the GMP symbol so
    // the two implementations can cross-check each other.
    a %= p;
    if (a == 0) return 0;
    u64 e = powmod(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

std::optional<u64> sqrt_mod_p(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (legendre_u64(a, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks: p - 1 = q 2^s with q odd.
    u64 q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        s++;
    }
    u64 z = 2;
    while (legendre_u64(z, p) != -1) z++;
    u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        unsigned i = 0;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            i++;
        }
        u64 b = c;
        for (unsigned j = 0; j + i + 1 < m; j++) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

bool is_pth_power_unit_mod_p2(const mpz_class& u, u64 p) {
    if (p < 3 || p % 2 == 0) throw domain_error("p must be an odd prime");
    mpz_class p2(static_cast<unsigned long>(p));
    p2 *= static_cast<unsigned long>(p);
    mpz_class um = u % p2;
    if (um < 0) um += p2;
    if (mpz_divisible_ui_p(um.get_mpz_t(), p)) throw precondition_error("u must be a unit");
    mpz_class r;
    mpz_powm_ui(r.get_mpz_t(), um.get_mpz_t(), (unsigned long)(p - 1), p2.get_mpz_t());
    return r == 1;
}

// --------------------------------------------------------------------------
// Exact polynomials
// --------------------------------------------------------------------------

ZPoly zp_from(std::initializer_list<long> coeffs) {
    ZPoly f;
    for (long c : coeffs) f.c.emplace_back(c);
    return f;
}

mpz_class zp_eval(const ZPoly& f, const mpz_class& x) {
    mpz_class r = 0;
    for (size_t i = f.c.size(); i-- > 0;) r = r * x + f.c[i];
    return r;
}

ZPoly zp_derivative(const ZPoly& f) {
    ZPoly d;
    for (size_t i = 1; i < f.c.size(); i++) d.c.push_back(f.c[i] * (unsigned long)i);
    if (d.c.empty()) d.c.emplace_back(0);
    return d;
}

ZPoly zp_strip(const ZPoly& f) {
    ZPoly g = f;
    while (g.c.size() > 1 && g.c.back() == 0) g.c.pop_back();
    return g;
}

bool zp_is_zero(const ZPoly& f) {
    for (const auto& c : f.c)
        if (c != 0) return false;
    return true;
}

namespace {

using QPoly = std::vector<mpq_class>;

int qdeg(const QPoly& f) {
    for (size_t i = f.size(); i-- > 0;)
        if (f[i] != 0) return (int)i;
    return -1;
}

QPoly qmod(const QPoly& a, const QPoly& b) {
    QPoly r = a;
    int db = qdeg(b);
    while (qdeg(r) >= db && qdeg(r) >= 0) {
        int dr = qdeg(r);
        mpq_class q = r[dr] / b[db];
        for (int i = 0; i <= db; i++) r[dr - db + i] -= q * b[i];
        r[dr] = 0; // force exact cancellation of the leading term
    }
    return r;
}

// Resultant by the Euclidean remainder sequence over Q.
mpq_class qresultant(QPoly f, QPoly g) {
    mpq_class res = 1;
    int df = qdeg(f), dg = qdeg(g);
    if (df < 0 || dg < 0) return 0;
    if (df < dg) {
        std::swap(f, g);
        std::swap(df, dg);
        if ((df % 2) && (dg % 2)) res = -res;
    }
    while (true) {
        if (dg < 0) return 0;
        if (dg == 0) {
            mpq_class lc = g[0], acc = res;
            for (int i = 0; i < df; i++) acc *= lc;
            return acc;
        }
        QPoly r = qmod(f, g);
        int dr = qdeg(r);
        mpq_class lc = g[dg], pw = 1;
        for (int i = 0; i < df - (dr < 0 ? 0 : dr); i++) pw *= lc;
        if ((df % 2) && (dg % 2)) res = -res;
        res *= pw;
        f = g;
        df = dg;
        g = r;
        dg = dr;
    }
}

int val_q(const mpq_class& x, u64 p) {
    return (int)valuation_exact(mpz_class(x.get_num()), p) -
           (int)valuation_exact(mpz_class(x.get_den()), p);
}

} // namespace

std::optional<unsigned> disc_valuation(const ZPoly& f0, u64 p) {
    ZPoly f = zp_strip(f0);
    if (f.c.size() <= 1) return 0;
    ZPoly d = zp_derivative(f);
    QPoly qf(f.c.size()), qd(d.c.size());
    for (size_t i = 0; i < f.c.size(); i++) qf[i] = mpq_class(f.c[i]);
    for (size_t i = 0; i < d.c.size(); i++) qd[i] = mpq_class(d.c[i]);
    mpq_class res = qresultant(qf, qd);
    if (res == 0) return std::nullopt;
    // disc = +/- res(f, f') / lc(f); only the p-valuation is needed.
    int v = val_q(res, p) - (int)valuation_exact(f.c.back(), p);
    return (unsigned)std::max(0, v);
}

mpz_class hensel_lift_simple_root(const ZPoly& f, u64 p, const mpz_class& x0,
                                  unsigned target_k) {
    if (target_k == 0) throw domain_error("target_k must be >= 1");
    mpz_class pp(static_cast<unsigned long>(p));
    mpz_class fx = zp_eval(f, x0) % pp;
    if (fx < 0) fx += pp;
    if (fx != 0) throw precondition_error("hensel: f(x0) != 0 mod p");
    ZPoly d = zp_derivative(f);
    mpz_class dx = zp_eval(d, x0) % pp;
    if (dx == 0) throw precondition_error("hensel: f'(x0) == 0 mod p");

    mpz_class x = x0 % pp, mod = pp;
    if (x < 0) x += pp;
    unsigned cur = 1;
    while (cur < target_k) {
        cur = std::min(2 * cur, target_k);
        mpz_class m;
        mpz_pow_ui(m.get_mpz_t(), pp.get_mpz_t(), cur);
        mpz_class der = zp_eval(d, x) % m, inv;
        if (mpz_invert(inv.get_mpz_t(), der.get_mpz_t(), m.get_mpz_t()) == 0)
            throw precondition_error("hensel: derivative not invertible");
        x = (x - zp_eval(f, x) * inv) % m;
        if (x < 0) x += m;
        mod = m;
    }
    return x;
}

// --------------------------------------------------------------------------
// Exact root counting / listing
// --------------------------------------------------------------------------

namespace {

// f(x0 + p t) computed exactly: Taylor shift then scale.
ZPoly shift_scale_exact(const ZPoly& f, u64 x0, u64 p) {
    ZPoly g = f;
    size_t n = g.c.size();
    mpz_class s(static_cast<unsigned long>(x0));
    for (size_t i = 0; i + 1 < n; i++)
        for (size_t j = n - 1; j-- > i;) g.c[j] += s * g.c[j + 1];
    mpz_class pw = 1;
    for (size_t i = 1; i < n; i++) {
        pw *= static_cast<unsigned long>(p);
        g.c[i] *= pw;
    }
    return g;
}

void remove_content_exact(ZPoly& f, u64 p) {
    unsigned m = ~0u;
    for (const auto& c : f.c)
        if (c != 0) m = std::min(m, valuation_exact(c, p));
    if (m == ~0u || m == 0) return;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), p, m);
    for (auto& c : f.c)
        if (c != 0) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pw.get_mpz_t());
}

struct ExactEngine {
    u64 p;
    long budget;
    bool certain = true;
    unsigned goal_k = 1;
    std::vector<RootApprox>* out = nullptr; // non-null iff listing

    // Distinct roots of f in Z_p.  `depth` tracks digits already fixed so
    // emitted roots can be reported relative to the original variable; base
    // arithmetic is skipped entirely when only counting.
    unsigned count_zp(ZPoly f, u64 base, unsigned depth) {
        f = zp_strip(f);
        unsigned count = 0;
        size_t m = 0;
        while (m < f.c.size() && f.c[m] == 0) m++;
        if (m == f.c.size()) throw precondition_error("root counting on the zero polynomial");
        if (m > 0) {
            count++; // x = 0 is an exact root here; base is the root itself
            if (out) out->push_back({base, std::max(goal_k, std::max(depth, 1u))});
            f.c.erase(f.c.begin(), f.c.begin() + (std::ptrdiff_t)m);
        }
        if (f.c.size() <= 1) return count;
        remove_content_exact(f, p);
        ZPoly d = zp_derivative(f);
        std::vector<u64> fm(f.c.size()), dm(d.c.size());
        for (size_t i = 0; i < f.c.size(); i++)
            fm[i] = mpz_fdiv_ui(f.c[i].get_mpz_t(), p);
        for (size_t i = 0; i < d.c.size(); i++)
            dm[i] = mpz_fdiv_ui(d.c[i].get_mpz_t(), p);
        for (u64 x0 = 0; x0 < p; x0++) {
            u64 fx = 0;
            for (size_t i = fm.size(); i-- > 0;) fx = (mulmod(fx, x0, p) + fm[i]) % p;
            if (fx != 0) continue;
            u64 dx = 0;
            for (size_t i = dm.size(); i-- > 0;) dx = (mulmod(dx, x0, p) + dm[i]) % p;
            if (dx != 0) {
                count++;
                if (out) {
                    if (goal_k > depth) {
                        unsigned local = goal_k - depth;
                        mpz_class r =
                            hensel_lift_simple_root(f, p, mpz_class((unsigned long)x0), local);
                        // base < p^depth and r < p^local, so this fits p^goal_k.
                        out->push_back({base + pow_pk(p, depth) * mpz_get_ui(r.get_mpz_t()),
                                        goal_k});
                    } else {
                        out->push_back({base + pow_pk(p, depth) * x0, depth + 1});
                    }
                }
                continue;
            }
            if (budget <= 0) {
                certain = false;
                continue;
            }
            budget--;
            ZPoly g = shift_scale_exact(f, x0, p);
            count += count_zp(g, out ? base + pow_pk(p, depth) * x0 : 0, depth + 1);
        }
        return count;
    }

    // Distinct roots of f in p Z_p \ {0}, via w = p t.  Callers guarantee
    // f(0) != 0 exactly, so t = 0 is never miscounted as a root.
    unsigned count_pzp(ZPoly f) {
        f = zp_strip(f);
        if (f.c.size() <= 1) return 0;
        remove_content_exact(f, p);
        if (mpz_fdiv_ui(f.c[0].get_mpz_t(), p) != 0) return 0;
        if (budget <= 0) {
            certain = false;
            return 0;
        }
        budget--;
        ZPoly g = f;
        mpz_class pw = 1;
        for (size_t i = 1; i < g.c.size(); i++) {
            pw *= static_cast<unsigned long>(p);
            g.c[i] *= pw;
        }
        return count_zp(g, 0, 0);
    }
};

long default_budget(const ZPoly& f, u64 p, unsigned budget) {
    if (budget != 0) return (long)budget;
    auto dv = disc_valuation(f, p);
    if (!dv) return 64; // not squarefree: give up after a bounded effort
    return 4L * (1 + (long)*dv);
}

} // namespace

RootCount count_zp_roots(const ZPoly& f, u64 p, unsigned budget) {
    if (zp_is_zero(f)) throw precondition_error("root counting on the zero polynomial");
    check_pk(p, 1);
    ExactEngine e{p, default_budget(f, p, budget)};
    unsigned n = e.count_zp(f, 0, 0);
    return {n, e.certain};
}

RootCount count_qp_roots(const ZPoly& f, u64 p, unsigned budget) {
    if (zp_is_zero(f)) throw precondition_error("root counting on the zero polynomial");
    check_pk(p, 1);
    ExactEngine e{p, default_budget(f, p, budget)};
    unsigned n = e.count_zp(f, 0, 0);
    ZPoly s = zp_strip(f);
    if (s.c.size() > 1) {
        ZPoly rev;
        rev.c.assign(s.c.rbegin(), s.c.rend());
        n += e.count_pzp(rev);
    }
    return {n, e.certain};
}

RootList list_zp_roots(const ZPoly& f, u64 p, unsigned goal_k, unsigned budget) {
    if (zp_is_zero(f)) throw precondition_error("root counting on the zero polynomial");
    if (goal_k == 0) throw domain_error("goal_k must be >= 1");
    pow_pk(p, goal_k); // range guard
    ExactEngine e{p, default_budget(f, p, budget)};
    RootList out;
    e.goal_k = goal_k;
    e.out = &out.roots;
    e.count_zp(f, 0, 0);
    out.certain = e.certain;
    return out;
}

// --------------------------------------------------------------------------
// Residue-precision root counting / listing
// --------------------------------------------------------------------------

RPoly rp_make(u64 p, unsigned k, const std::vector<mpz_class>& coeffs) {
    check_pk(p, k);
    RPoly f;
    f.p = p;
    f.k = k;
    f.pk = pow_pk(p, k);
    f.c.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        mpz_class m = c % mpz_class(static_cast<unsigned long>(f.pk));
        if (m < 0) m += static_cast<unsigned long>(f.pk);
        f.c.push_back(mpz_get_ui(m.get_mpz_t()));
    }
    return f;
}

RPoly rp_from_zpoly(const ZPoly& f, u64 p, unsigned k) { return rp_make(p, k, f.c); }

u64 rp_eval(const RPoly& f, u64 x) {
    u64 r = 0;
    x %= f.pk;
    for (size_t i = f.c.size(); i-- > 0;) r = addmod(mulmod(r, x, f.pk), f.c[i], f.pk);
    return r;
}

namespace {

unsigned val_u64(u64 x, u64 p, unsigned k) {
    if (x == 0) return k;
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        v++;
    }
    return v;
}

// min valuation across coefficients; k when everything vanishes mod p^k.
unsigned rp_content(const RPoly& f) {
    unsigned m = f.k;
    for (u64 c : f.c) m = std::min(m, val_u64(c, f.p, f.k));
    return m;
}

void rp_shift_down(RPoly& f, unsigned m) {
    u64 pm = pow_pk(f.p, m);
    f.k -= m;
    f.pk /= pm;
    for (auto& c : f.c) c = (c / pm) % f.pk;
}

// f(x0 + p t) at the same nominal precision (the extra digits a true lift
// would carry are deliberately dropped; soundness only needs a lower bound).
RPoly rp_shift_scale(const RPoly& f, u64 x0) {
    RPoly g = f;
    size_t n = g.c.size();
    for (size_t i = 0; i + 1 < n; i++)
        for (size_t j = n - 1; j-- > i;)
            g.c[j] = addmod(g.c[j], mulmod(x0, g.c[j + 1], g.pk), g.pk);
    u64 pw = 1;
    for (size_t i = 1; i < n; i++) {
        pw = pw * f.p % g.pk;
        g.c[i] = mulmod(g.c[i], pw, g.pk);
    }
    return g;
}

struct ResidueEngine {
    long budget;
    bool exact = true;
    bool listing = false;
    std::vector<RootApprox>* out = nullptr;

    void emit(u64 value, unsigned prec) {
        if (out) out->push_back({value, prec});
    }

    // Newton refinement of a simple root x0 (f'(x0) a unit) to f.k digits.
    u64 refine(const RPoly& f, u64 x0) {
        RPoly d;
        d.p = f.p;
        d.k = f.k;
        d.pk = f.pk;
        for (size_t i = 1; i < f.c.size(); i++)
            d.c.push_back(mulmod(f.c[i], i % f.pk, f.pk));
        if (d.c.empty()) d.c.push_back(0);
        u64 x = x0 % f.pk;
        for (unsigned it = 0; it < f.k + 2; it++) {
            u64 fx = rp_eval(f, x);
            if (fx == 0) break;
            u64 dx = rp_eval(d, x);
            x = submod(x, mulmod(fx, inv_mod(dx, f.pk), f.pk), f.pk);
        }
        return x;
    }

    // Distinct Z_p roots certified across all integer lifts of f.
    // `zero_sensitive`: when true, a root indistinguishable from 0 at the
    // available precision must not be counted (pole-counting needs this,
    // because x = 0 on the reversed polynomial is not a pole of the input).
    unsigned count_zp(RPoly f, u64 base, unsigned depth, bool zero_path,
                      bool zero_sensitive) {
        unsigned m = rp_content(f);
        if (m >= f.k) {
            exact = false; // every coefficient vanished mod p^k
            return 0;
        }
        if (m > 0) rp_shift_down(f, m);
        u64 p = f.p;
        unsigned count = 0;
        std::vector<u64> fm(f.c.size()), dm;
        for (size_t i = 0; i < f.c.size(); i++) fm[i] = f.c[i] % p;
        for (size_t i = 1; i < f.c.size(); i++) dm.push_back(mulmod(f.c[i] % p, i % p, p));
        if (dm.empty()) dm.push_back(0);
        for (u64 x0 = 0; x0 < p; x0++) {
            u64 fx = 0;
            for (size_t i = fm.size(); i-- > 0;) fx = (mulmod(fx, x0, p) + fm[i]) % p;
            if (fx != 0) continue;
            u64 dx = 0;
            for (size_t i = dm.size(); i-- > 0;) dx = (mulmod(dx, x0, p) + dm[i]) % p;
            bool on_zero = zero_path && x0 == 0;
            if (dx != 0) {
                // One Hensel root per lift in this disc.  On the all-zero
                // path it is a genuine (nonzero) pole root only if the
                // constant term is known nonzero at this precision.
                if (zero_sensitive && on_zero) {
                    if (f.c[0] == 0) {
                        exact = false;
                        continue;
                    }
                }
                count++;
                if (listing) {
                    u64 r = refine(f, x0);
                    emit(base + pow_pk(p, depth) * (r % pow_pk(p, f.k)), depth + f.k);
                } else {
                    emit(base + pow_pk(p, depth) * x0, depth + 1);
                }
                continue;
            }
            if (f.k < 2 || budget <= 0) {
                exact = false;
                continue;
            }
            budget--;
            RPoly g = rp_shift_scale(f, x0);
            count += count_zp(g, base + pow_pk(p, depth) * x0, depth + 1, on_zero,
                              zero_sensitive);
        }
        return count;
    }
};

} // namespace

RRootCount r_count_zp_roots(const RPoly& f, unsigned budget) {
    if (f.c.empty()) throw precondition_error("root counting on the zero polynomial");
    ResidueEngine e{(long)budget};
    unsigned n = e.count_zp(f, 0, 0, false, false);
    return {n, e.exact};
}

RRootCount r_count_qp_roots(const RPoly& f, unsigned budget) {
    if (f.c.empty()) throw precondition_error("root counting on the zero polynomial");
    ResidueEngine e{(long)budget};
    unsigned n = e.count_zp(f, 0, 0, false, false);
    if (f.c.size() > 1) {
        RPoly rev = f;
        std::reverse(rev.c.begin(), rev.c.end());
        // Poles live in p Z_p \ {0} of the reversal: restrict to the x = 0
        // branch by one explicit scale step, tracking the all-zero path.
        unsigned m = rp_content(rev);
        if (m >= rev.k) {
            e.exact = false;
        } else {
            if (m > 0) rp_shift_down(rev, m);
            if (rev.c[0] % rev.p == 0) {
                if (rev.k < 2 || e.budget <= 0) {
                    e.exact = false;
                } else {
                    e.budget--;
                    RPoly g = rp_shift_scale(rev, 0);
                    n += e.count_zp(g, 0, 0, true, true);
                }
            }
        }
    }
    return {n, e.exact};
}

RootList r_list_zp_roots(const RPoly& f, unsigned budget) {
    if (f.c.empty()) throw precondition_error("root counting on the zero polynomial");
    ResidueEngine e{(long)budget};
    RootList out;
    e.listing = true;
    e.out = &out.roots;
    e.count_zp(f, 0, 0, false, false);
    out.certain = e.exact;
    return out;
}

} // namespace qpt::padic
