// common.hpp: shared integer helpers and error types.
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpt {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Argument outside an operation's documented domain (e.g. p = 2).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Documented precondition violated; kept distinct from domain_error so callers
// can tell unsupported inputs from plain misuse.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : m - (b - a); }

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Inverse of a unit mod m by extended Euclid.
inline u64 inv_mod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = (i64)m, nr = (i64)(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw precondition_error("inverse of a non-unit");
    return (u64)(t < 0 ? t + (i64)m : t);
}

// Deterministic primality by trial division; cheap for the small residue
// characteristics this library works with.
inline bool is_prime_u64(u64 n) {
    if (n < 4) return n >= 2;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (u64 f = 5; f * f <= n; f += 6)
        if (n % f == 0 || n % (f + 2) == 0) return false;
    return true;
}

// p^k, guarded so that every residue ring we touch fits in 63 bits.
inline u64 pow_pk(u64 p, unsigned k) {
    u64 r = 1;
    for (unsigned i = 0; i < k; i++) {
        if (r > (u64(1) << 62) / p) throw domain_error("p^k exceeds 2^62");
        r *= p;
    }
    return r;
}

// SplitMix64. All randomized sampling derives from (seed, index) through this,
// so runs are reproducible and independent of thread scheduling.
struct SplitMix64 {
    u64 s;
    explicit SplitMix64(u64 seed) : s(seed) {}
    u64 next() {
        u64 z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Unbiased draw from [0, n) by rejection.
    u64 below(u64 n) {
        u64 lim = ~u64(0) - ~u64(0) % n;
        u64 x;
        do { x = next(); } while (x >= lim);
        return x % n;
    }
};

} // namespace qpt
