// verify.hpp: named self-check registry.
//
// Each check re-derives one quantity two independent ways (closed form
// vs. brute force, identity vs. components, bracket vs. target) and
// reports pass/fail.  Checks that would exceed a desk-scale budget are
// reported as skipped rather than failed, so a verification run is
// always cheap and a failure always means a genuine disagreement.
//
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "common.hpp"

#include <string>
#include <vector>

namespace qpt::verify {

struct Check {
    std::string name;
    std::string detail; // optional "lhs == rhs" style explanation
    bool pass = false;
    bool skipped = false; // budget exceeded; does not count as a failure
};

struct Report {
    std::string suite;
    u64 p = 0;
    std::vector<Check> checks;

    // True when no executed check failed (skipped checks are neutral).
    bool pass() const;
};

// Runs one of the suites {formulas, counts, estimator, all} at prime p.
// k, samples and seed parametrize the estimator checks; pass 0 to use
// the defaults (k = 4, samples = 20000, seed = 1).  Throws domain_error
// for an unknown suite name or an invalid prime.
Report run(const std::string& suite, u64 p, unsigned k = 0, u64 samples = 0,
           u64 seed = 1);

// One line per check ("name: detail PASS|FAIL|SKIP (reason)") plus a
// summary line.
std::string to_text(const Report& r);

// Machine-readable report; deterministic field order.
std::string to_json(const Report& r);

} // namespace qpt::verify
