// padic.hpp: residues mod p^k, valuations, and root counting over Q_p.
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "common.hpp"

namespace qpt::padic {

// --------------------------------------------------------------------------
// Residues
// --------------------------------------------------------------------------

// An element of Z/p^k known exactly, standing for the set of its integer
// lifts.  p is an odd prime, k >= 1, and p^k < 2^62 so products fit in u128.
struct ResidueInt {
    u64 value = 0; // 0 <= value < pk
    u64 p = 0;
    unsigned k = 0;
    u64 pk = 0;
};

ResidueInt make_residue(u64 p, unsigned k, const mpz_class& value);
ResidueInt make_residue_u64(u64 p, unsigned k, u64 value);
ResidueInt make_residue_i64(u64 p, unsigned k, i64 value);

// Arithmetic truncates to min(k) of the operands.
ResidueInt radd(const ResidueInt& a, const ResidueInt& b);
ResidueInt rsub(const ResidueInt& a, const ResidueInt& b);
ResidueInt rmul(const ResidueInt& a, const ResidueInt& b);
ResidueInt rmul_i(const ResidueInt& a, i64 c);
// Division by a unit (v_p(b) = 0 required).
ResidueInt rdiv_unit(const ResidueInt& a, const ResidueInt& b);
// Exact division by p^j: requires p^j | value; drops j digits of precision.
ResidueInt rshift_down(const ResidueInt& a, unsigned j);
// Reinterpret at lower precision.
ResidueInt rtrunc(const ResidueInt& a, unsigned k);

/// A p-adic valuation that may be unresolved: exact == true means v_p(x) == v;
// exact == false means only v_p(x) >= v is known (v equals the precision).
struct Val {
    unsigned v = 0;
    bool exact = true;
};

Val valuation(const ResidueInt& x);
unsigned valuation_exact(const mpz_class& x, u64 p); // x != 0 required

// Legendre symbol (a|p) in {-1, 0, +1}; p an odd prime.
int legendre(const mpz_class& a, u64 p);
int legendre_u64(u64 a, u64 p); // a reduced or not; Euler's criterion

// Square root mod an odd prime via Tonelli-Shanks; nullopt for non-residues.
std::optional<u64> sqrt_mod_p(u64 a, u64 p);

// True iff the unit u is a p-th power in Z_p^*, decided mod p^2 through the
// criterion u^(p-1) = 1 (mod p^2).  Requires p odd and v_p(u) = 0.
bool is_pth_power_unit_mod_p2(const mpz_class& u, u64 p);

// --------------------------------------------------------------------------
// Polynomials with exact integer coefficients
// --------------------------------------------------------------------------

// Coefficients ascending; the formal degree is c.size() - 1 and exact zero
// leading coefficients are legal (callers that need the actual degree strip).
struct ZPoly {
    std::vector<mpz_class> c;
};

ZPoly zp_from(std::initializer_list<long> coeffs);
mpz_class zp_eval(const ZPoly& f, const mpz_class& x);
ZPoly zp_derivative(const ZPoly& f);
ZPoly zp_strip(const ZPoly& f); // drop exact zero leading coefficients
bool zp_is_zero(const ZPoly& f);

// v_p of the discriminant of f (actual degree), or nullopt when disc(f) = 0,
// i.e. f is not squarefree.  Used to size default root-counting budgets.
std::optional<unsigned> disc_valuation(const ZPoly& f, u64 p);

/// Simple-root Hensel lift: given f(x0) = 0 (mod p) and f'(x0) != 0 (mod p),
// returns the unique root of f mod p^target_k congruent to x0 mod p.  A
// violated hypothesis raises precondition_error.
mpz_class hensel_lift_simple_root(const ZPoly& f, u64 p, const mpz_class& x0,
                                  unsigned target_k);

struct RootCount {
    unsigned count = 0;  // distinct roots certified
    bool certain = true; // false iff some branch exhausted the budget
};

// Number of distinct roots of f in Z_p (resp. Q_p).  budget = 0 selects the
// default 4 * (1 + v_p(disc f)) recursion descents (64 when disc f = 0).
// When certain == false, count is a lower bound and never an overcount.
RootCount count_zp_roots(const ZPoly& f, u64 p, unsigned budget = 0);
RootCount count_qp_roots(const ZPoly& f, u64 p, unsigned budget = 0);

// A certified Z_p root: some root x of f satisfies x == value (mod p^prec).
// Entries of a RootList are pairwise distinct p-adic numbers, and when the
// list is certain, every Z_p root of f appears exactly once.
struct RootApprox {
    u64 value = 0;
    unsigned prec = 0;
};

struct RootList {
    std::vector<RootApprox> roots;
    bool certain = true;
};

// Distinct Z_p roots of f, each refined to min(goal_k, certification depth +
// available Newton precision) digits.  Same budget semantics as counting.
RootList list_zp_roots(const ZPoly& f, u64 p, unsigned goal_k,
                       unsigned budget = 0);

// --------------------------------------------------------------------------
// Polynomials with residue coefficients (decision-procedure layer)
// --------------------------------------------------------------------------

// Coefficients known mod p^k only.  Counting treats the input as the set of
// all integer-coefficient lifts and certifies a root (or its absence) only
// when the verdict is constant across that set; otherwise exact == false.
struct RPoly {
    std::vector<u64> c; // ascending, each reduced mod pk
    u64 p = 0;
    unsigned k = 0;
    u64 pk = 0;
};

RPoly rp_make(u64 p, unsigned k, const std::vector<mpz_class>& coeffs);
RPoly rp_from_zpoly(const ZPoly& f, u64 p, unsigned k);
u64 rp_eval(const RPoly& f, u64 x);

struct RRootCount {
    unsigned count = 0; // roots certified across every lift
    bool exact = true;  // true iff no branch was left unresolved
};

RRootCount r_count_zp_roots(const RPoly& f, unsigned budget);
RRootCount r_count_qp_roots(const RPoly& f, unsigned budget);
RootList r_list_zp_roots(const RPoly& f, unsigned budget);

} // namespace qpt::padic
