// test_padic.cpp: residue arithmetic and Q_p root counting.
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "padic.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

using namespace qpt;
using namespace qpt::padic;

// ---------------------------------------------------------------------------
// Independent oracle: certified-disc breadth-first search.
//
// Counts distinct Z_p (or pole) roots of an integer polynomial from first
// principles: take the squarefree part over Q, then refine residue discs
// x mod p^k, dropping discs with f(x) != 0 mod p^k and accepting a disc once
// the quantitative Hensel bound v(f(x)) > 2 v(f'(x)), k >= v(f'(x)) + 1
// certifies a unique root inside it.  For squarefree f the frontier is empty
// by level 2 v(disc) + 2, so the hard cap below is never the deciding factor.
// Shares no code with the engine under test.
// ---------------------------------------------------------------------------
namespace oracle {

using ZV = std::vector<mpz_class>;
using QV = std::vector<mpq_class>;

static int deg(const QV& f) {
    for (size_t i = f.size(); i-- > 0;)
        if (f[i] != 0) return (int)i;
    return -1;
}

static QV rem(QV a, const QV& b) {
    int db = deg(b);
    while (deg(a) >= db) {
        int da = deg(a);
        mpq_class q = a[da] / b[db];
        for (int i = 0; i <= db; i++) a[da - db + i] -= q * b[i];
        a[da] = 0;
    }
    return a;
}

static QV gcd(QV a, QV b) {
    while (deg(b) >= 0) {
        QV r = rem(a, b);
        a = b;
        b = r;
    }
    int d = deg(a);
    for (auto& c : a) c /= a[d]; // monic
    return a;
}

static QV div_exact(const QV& a, const QV& b) {
    QV q(a.size()), r = a;
    int db = deg(b);
    while (deg(r) >= db) {
        int dr = deg(r);
        mpq_class c = r[dr] / b[db];
        q[dr - db] = c;
        for (int i = 0; i <= db; i++) r[dr - db + i] -= c * b[i];
        r[dr] = 0;
    }
    REQUIRE(deg(r) < 0);
    return q;
}

static ZV clear_denominators(const QV& f) {
    mpz_class l = 1;
    for (const auto& c : f)
        if (c != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    ZV out;
    for (const auto& c : f) out.push_back(mpz_class(c * l));
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

static ZV squarefree_part(const ZV& f) {
    QV qf(f.size());
    for (size_t i = 0; i < f.size(); i++) qf[i] = mpq_class(f[i]);
    while (qf.size() > 1 && qf.back() == 0) qf.pop_back();
    if (deg(qf) <= 0) return clear_denominators(qf);
    QV qd(qf.size() - 1);
    for (size_t i = 1; i < qf.size(); i++) qd[i - 1] = qf[i] * (long)i;
    QV g = gcd(qf, qd);
    return clear_denominators(div_exact(qf, g));
}

static mpz_class eval(const ZV& f, const mpz_class& x) {
    mpz_class r = 0;
    for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

static int vp(const mpz_class& x, u64 p) {
    REQUIRE(x != 0);
    mpz_class t = abs(x);
    int v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        v++;
    }
    return v;
}

static unsigned bfs_count(const ZV& g, u64 p, bool poles_only) {
    if (g.size() <= 1) return 0;
    ZV gd(g.size() - 1);
    for (size_t i = 1; i < g.size(); i++) gd[i - 1] = g[i] * (unsigned long)i;
    std::vector<mpz_class> frontier;
    for (u64 x = 0; x < p; x++) {
        if (poles_only && x != 0) continue;
        if (mpz_divisible_ui_p(eval(g, x).get_mpz_t(), p)) frontier.emplace_back(x);
    }
    unsigned count = 0, k = 1;
    mpz_class pk(static_cast<unsigned long>(p));
    while (!frontier.empty()) {
        REQUIRE(k < 200); // squarefree input certifies long before this
        std::vector<mpz_class> next;
        for (const auto& x : frontier) {
            mpz_class gx = eval(g, x), gdx = eval(gd, x);
            if (gdx != 0) {
                int b = vp(gdx, p);
                if ((gx == 0 || vp(gx, p) > 2 * b) && (int)k >= b + 1) {
                    count++;
                    continue;
                }
            }
            mpz_class pk1 = pk * static_cast<unsigned long>(p);
            for (u64 d = 0; d < p; d++) {
                mpz_class y = x + pk * static_cast<unsigned long>(d);
                if (mpz_divisible_p(eval(g, y).get_mpz_t(), pk1.get_mpz_t()))
                    next.push_back(y);
            }
        }
        frontier = std::move(next);
        k++;
        pk *= static_cast<unsigned long>(p);
    }
    return count;
}

static unsigned count_zp(const ZV& f, u64 p) { return bfs_count(squarefree_part(f), p, false); }

static unsigned count_qp(const ZV& f, u64 p) {
    unsigned n = count_zp(f, p);
    ZV s = f;
    while (s.size() > 1 && s.back() == 0) s.pop_back();
    if (s.size() > 1) {
        ZV rev(s.rbegin(), s.rend());
        n += bfs_count(squarefree_part(rev), p, true);
    }
    return n;
}

} // namespace oracle

static oracle::ZV zv(const ZPoly& f) { return f.c; }

TEST_CASE("residue arithmetic and valuations") {
    ResidueInt a = make_residue_u64(3, 4, 45);
    Val v = valuation(a);
    CHECK(v.exact);
    CHECK(v.v == 2);

    // 45 = 0 mod 9: at precision 2 only v >= 2 is knowable.
    Val w = valuation(make_residue_u64(3, 2, 45));
    CHECK_FALSE(w.exact);
    CHECK(w.v == 2);

    ResidueInt b = make_residue_i64(3, 2, -1);
    CHECK(b.value == 8);
    ResidueInt s = radd(a, b);
    CHECK(s.k == 2);
    CHECK(s.value == (45 - 1) % 9);
    CHECK(rmul(a, b).value == (45 * 8) % 9);
    CHECK(rsub(b, b).value == 0);

    ResidueInt c = make_residue_u64(5, 4, 75);
    ResidueInt down = rshift_down(c, 2);
    CHECK(down.k == 2);
    CHECK(down.value == 3);
    CHECK_THROWS_AS(rshift_down(make_residue_u64(5, 4, 7), 1), precondition_error);
    CHECK_THROWS_AS(rdiv_unit(c, make_residue_u64(5, 4, 10)), precondition_error);
    CHECK(rdiv_unit(make_residue_u64(5, 3, 6), make_residue_u64(5, 3, 2)).value == 3);
    CHECK_THROWS_AS(make_residue_u64(4, 2, 1), domain_error);
    CHECK_THROWS_AS(make_residue_u64(5, 0, 1), domain_error);
}

TEST_CASE("legendre symbol: GMP route vs Euler route") {
    SplitMix64 rng{0x9d1c55a1u};
    const u64 ps[] = {3, 5, 7, 13, 101, 1009};
    for (u64 p : ps) {
        for (int i = 0; i < 200; i++) {
            u64 a = rng.next() % (4 * p);
            CHECK(legendre(mpz_class((unsigned long)a), p) == legendre_u64(a, p));
        }
        CHECK(legendre(mpz_class(-1), p) == legendre_u64(p - 1, p));
    }
}

TEST_CASE("sqrt_mod_p inverts squaring") {
    SplitMix64 rng{0x51ab3e0fu};
    const u64 ps[] = {3, 5, 7, 13, 17, 101, 257}; // includes p = 1 mod 4
    for (u64 p : ps) {
        for (int i = 0; i < 100; i++) {
            u64 a = rng.next() % p;
            auto r = sqrt_mod_p(a, p);
            if (legendre_u64(a, p) == -1) {
                CHECK_FALSE(r.has_value());
            } else {
                REQUIRE(r.has_value());
                CHECK(mulmod(*r, *r, p) == a % p);
            }
        }
    }
}

TEST_CASE("p-th power test mod p^2") {
    CHECK_FALSE(is_pth_power_unit_mod_p2(mpz_class(6), 5));  // 6^4 = 21 mod 25
    CHECK_FALSE(is_pth_power_unit_mod_p2(mpz_class(7), 3));  // 7^2 = 4 mod 9
    CHECK(is_pth_power_unit_mod_p2(mpz_class(1), 5));
    CHECK(is_pth_power_unit_mod_p2(mpz_class(7), 5));        // 7^4 = 1 mod 25
    CHECK(is_pth_power_unit_mod_p2(mpz_class(32), 5));       // 2^5 is a 5th power
    CHECK_THROWS_AS(is_pth_power_unit_mod_p2(mpz_class(10), 5), precondition_error);
    // u is a p-th power unit iff u^(p-1) = 1 mod p^2: cross-check by listing
    // the p-th powers of all units mod p^2 directly.
    for (u64 p : {3ull, 5ull, 7ull}) {
        u64 p2 = p * p;
        std::vector<char> is_power(p2, 0);
        for (u64 u = 1; u < p2; u++)
            if (u % p != 0) is_power[powmod(u, p, p2)] = 1;
        for (u64 u = 1; u < p2; u++)
            if (u % p != 0)
                CHECK(is_pth_power_unit_mod_p2(mpz_class((unsigned long)u), p) ==
                      (bool)is_power[u]);
    }
}

TEST_CASE("hensel lift of a simple root") {
    ZPoly f = zp_from({-2, 0, 1}); // x^2 - 2
    mpz_class r = hensel_lift_simple_root(f, 7, 3, 2);
    CHECK(r == 10);
    mpz_class deep = hensel_lift_simple_root(f, 7, 3, 12);
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), 7, 12);
    CHECK(zp_eval(f, deep) % mod == 0);
    CHECK(deep % 7 == 3);
    CHECK_THROWS_AS(hensel_lift_simple_root(f, 7, 1, 4), precondition_error);
    CHECK_THROWS_AS(hensel_lift_simple_root(zp_from({0, 0, 1}), 7, 0, 4),
                    precondition_error);
}

TEST_CASE("disc_valuation") {
    CHECK(disc_valuation(zp_from({-2, 0, 1}), 7) == 3u - 3u); // disc = 8, v_7 = 0
    CHECK(disc_valuation(zp_from({-2, 0, 1}), 2) == 3u);      // v_2(8)
    // (x - 1)^2 (x - 2) has vanishing discriminant.
    CHECK_FALSE(disc_valuation(zp_from({-2, 5, -4, 1}), 5).has_value());
    // x^2 - p^2: disc = 4 p^2.
    CHECK(disc_valuation(zp_from({-25, 0, 1}), 5) == 2u);
}

TEST_CASE("exact root counting: pinned cases") {
    // x^2 - 2: split at 7, inert at 5.
    CHECK(count_qp_roots(zp_from({-2, 0, 1}), 7).count == 2);
    CHECK(count_qp_roots(zp_from({-2, 0, 1}), 7).certain);
    CHECK(count_qp_roots(zp_from({-2, 0, 1}), 5).count == 0);
    // x^2 - 25: double residue root mod 5 that splits one level down.
    CHECK(count_zp_roots(zp_from({-25, 0, 1}), 5).count == 2);
    // (x - 1)^2 (x - 2): repeated factor, still terminates with the answer.
    auto rep = count_zp_roots(zp_from({-2, 5, -4, 1}), 5);
    CHECK(rep.count == 2);
    CHECK(rep.certain);
    // p x - 1: the root 1/p is a pole.
    CHECK(count_zp_roots(zp_from({-1, 5}), 5).count == 0);
    CHECK(count_qp_roots(zp_from({-1, 5}), 5).count == 1);
    // x^3 - p: fractional valuation, no Q_p root.
    CHECK(count_qp_roots(zp_from({-5, 0, 0, 1}), 5).count == 0);
    // x^4 - 1 over Q_5: 4 roots (mu_4 in F_5 lifts).
    CHECK(count_qp_roots(zp_from({-1, 0, 0, 0, 1}), 5).count == 4);
    CHECK(count_qp_roots(zp_from({-1, 0, 0, 0, 1}), 7).count == 2);
    CHECK_THROWS_AS(count_zp_roots(ZPoly{}, 5), precondition_error);
    CHECK_THROWS_AS(count_zp_roots(zp_from({0, 0}), 5), precondition_error);
}

TEST_CASE("exact root counting matches the certified-disc oracle") {
    SplitMix64 rng{0x7c3a9e21u};
    const u64 ps[] = {3, 5, 7, 13};
    for (int round = 0; round < 300; round++) {
        u64 p = ps[rng.below(4)];
        unsigned degree = 1 + (unsigned)rng.below(5);
        ZPoly f;
        for (unsigned i = 0; i <= degree; i++) {
            long c = (long)rng.below(2 * p * p + 9) - (long)(p * p + 4);
            // bias coefficients toward p-divisibility to exercise descents
            if (rng.below(3) == 0) c *= (long)p;
            f.c.emplace_back(c);
        }
        if (zp_is_zero(f)) f.c[0] = 1;
        auto zp = count_zp_roots(f, p, 200);
        auto qp = count_qp_roots(f, p, 200);
        unsigned ozp = oracle::count_zp(zv(f), p);
        unsigned oqp = oracle::count_qp(zv(f), p);
        if (zp.certain) {
            CHECK(zp.count == ozp);
        } else {
            CHECK(zp.count <= ozp);
        }
        if (qp.certain) {
            CHECK(qp.count == oqp);
        } else {
            CHECK(qp.count <= oqp);
        }
        CHECK(qp.count >= zp.count);
    }
}

TEST_CASE("division polynomial example: psi_3 of y^2 = x^3 + x + 1 at p = 7") {
    // psi_3 = 3 x^4 + 6 a x^2 + 12 b x - a^2 with a = b = 1.
    ZPoly psi3 = zp_from({-1, 12, 6, 0, 3});
    auto got = count_qp_roots(psi3, 7);
    REQUIRE(got.certain);
    CHECK(got.count == oracle::count_qp(zv(psi3), 7));
    // The 3-division polynomial of a curve has 0, 1, 2 or 4 Q_p roots.
    CHECK((got.count == 0 || got.count == 1 || got.count == 2 || got.count == 4));
}

TEST_CASE("root listing refines to the requested precision") {
    SplitMix64 rng{0x08d4f115u};
    const u64 ps[] = {3, 5, 7};
    for (int round = 0; round < 200; round++) {
        u64 p = ps[rng.below(3)];
        unsigned degree = 1 + (unsigned)rng.below(4);
        ZPoly f;
        for (unsigned i = 0; i <= degree; i++) {
            long c = (long)rng.below(4 * p + 9) - (long)(2 * p + 4);
            if (rng.below(4) == 0) c *= (long)p;
            f.c.emplace_back(c);
        }
        if (zp_is_zero(f)) f.c[0] = 1;
        unsigned goal = 3 + (unsigned)rng.below(4);
        auto lst = list_zp_roots(f, p, goal, 200);
        auto cnt = count_zp_roots(f, p, 200);
        CHECK(lst.certain == cnt.certain);
        CHECK(lst.roots.size() == cnt.count);
        for (const auto& r : lst.roots) {
            // f(value) = 0 mod p^prec
            mpz_class mod;
            mpz_ui_pow_ui(mod.get_mpz_t(), p, r.prec);
            CHECK(zp_eval(f, mpz_class((unsigned long)r.value)) % mod == 0);
        }
        // pairwise distinct as p-adic numbers
        for (size_t i = 0; i < lst.roots.size(); i++)
            for (size_t j = i + 1; j < lst.roots.size(); j++) {
                unsigned m = std::min(lst.roots[i].prec, lst.roots[j].prec);
                u64 pm = pow_pk(p, m);
                CHECK(lst.roots[i].value % pm != lst.roots[j].value % pm);
            }
    }
}

TEST_CASE("residue-precision counting is sound for every lift") {
    SplitMix64 rng{0x3d6f00b7u};
    const u64 ps[] = {3, 5, 7};
    for (int round = 0; round < 250; round++) {
        u64 p = ps[rng.below(3)];
        unsigned k = 3 + (unsigned)rng.below(5);
        unsigned degree = 1 + (unsigned)rng.below(4);
        ZPoly f;
        for (unsigned i = 0; i <= degree; i++) {
            long c = (long)rng.below(2 * p * p + 9) - (long)(p * p + 4);
            if (rng.below(3) == 0) c *= (long)p;
            f.c.emplace_back(c);
        }
        if (zp_is_zero(f)) f.c[0] = 1;
        RPoly rf = rp_from_zpoly(f, p, k);
        auto rz = r_count_zp_roots(rf, 50);
        auto rq = r_count_qp_roots(rf, 50);
        u64 pk = pow_pk(p, k);
        // Check against several explicit lifts of the residue input.
        for (int lift = 0; lift < 4; lift++) {
            ZPoly g = f;
            if (lift > 0)
                for (auto& c : g.c)
                    c += mpz_class((unsigned long)pk) * ((long)rng.below(7) - 3);
            if (zp_is_zero(g)) continue;
            unsigned oz = oracle::count_zp(zv(g), p);
            unsigned oq = oracle::count_qp(zv(g), p);
            if (rz.exact) {
                CHECK(rz.count == oz);
            } else {
                CHECK(rz.count <= oz);
            }
            if (rq.exact) {
                CHECK(rq.count == oq);
            } else {
                CHECK(rq.count <= oq);
            }
        }
    }
}

TEST_CASE("residue counting: poles indistinguishable from infinity stay undecided") {
    // f = 1 with formal degree 2: lifts 1 + p^k (b x + c x^2) may or may not
    // have poles depending on the unknown digits, so the engine must not
    // claim exactness.
    RPoly f = rp_make(5, 4, {mpz_class(1), mpz_class(0), mpz_class(0)});
    auto r = r_count_qp_roots(f, 50);
    CHECK(r.count == 0);
    CHECK_FALSE(r.exact);

    // x + p with formal degree 2: the finite root is certified, but a lift
    // with a genuine x^2 term gains a pole, so exactness again fails.
    RPoly g = rp_make(5, 4, {mpz_class(5), mpz_class(1), mpz_class(0)});
    auto rg = r_count_qp_roots(g, 50);
    CHECK(rg.count == 1);
    CHECK_FALSE(rg.exact);

    // x^2 + p x + 1: unit constant and unit leading coefficient; everything
    // is decidable at modest precision.
    RPoly h = rp_make(5, 4, {mpz_class(1), mpz_class(5), mpz_class(1)});
    auto rh = r_count_qp_roots(h, 50);
    CHECK(rh.exact);
    CHECK(rh.count == 2); // x^2 = -1 splits in Q_5
}

TEST_CASE("residue root listing agrees with residue counting") {
    SplitMix64 rng{0x5e11c0deu};
    for (int round = 0; round < 150; round++) {
        u64 p = (round % 2) ? 5 : 7;
        unsigned k = 3 + (unsigned)rng.below(4);
        unsigned degree = 1 + (unsigned)rng.below(4);
        std::vector<mpz_class> c;
        for (unsigned i = 0; i <= degree; i++)
            c.emplace_back((long)rng.below(2 * p * p) - (long)(p * p));
        RPoly f = rp_make(p, k, c);
        bool all_zero = true;
        for (u64 x : f.c) all_zero = all_zero && x == 0;
        if (all_zero) continue;
        auto cnt = r_count_zp_roots(f, 50);
        auto lst = r_list_zp_roots(f, 50);
        CHECK(lst.roots.size() == cnt.count);
        CHECK(lst.certain == cnt.exact);
        for (const auto& r : lst.roots) {
            u64 pm = pow_pk(p, std::min(r.prec, f.k));
            CHECK(rp_eval(f, r.value) % pm == 0);
        }
    }
}
