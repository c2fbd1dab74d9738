// test_capi.cpp: the shared-library ABI, exercised exactly as an
// external consumer would: through qptors.h only, with every returned
// string freed and every status checked.
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "qptors.h"

#include <doctest.h>
#include <json.hpp>

#include <cstring>
#include <string>

namespace {

using nlohmann::json;

// Scoped handle + string helpers so a failing CHECK cannot leak.
struct Ctx {
    qpt_ctx* h = qpt_ctx_new();
    ~Ctx() { qpt_ctx_free(h); }
};

std::string take(char*& s) {
    std::string out = s ? s : "";
    qpt_string_free(s);
    s = nullptr;
    return out;
}

std::string last(const Ctx& c) { return qpt_last_error(c.h); }

} // namespace

TEST_CASE("version and schema identify the artifact") {
    CHECK(std::string(qpt_version()) == "1.0.0");
    CHECK(qpt_schema_version() == 1);
}

TEST_CASE("null handles and null strings are inert") {
    qpt_ctx_free(nullptr);
    qpt_string_free(nullptr);
    CHECK(std::string(qpt_last_error(nullptr)) == "");
    char* out = nullptr;
    CHECK(qpt_density(nullptr, "tors", 5, &out) == QPT_EINVAL);
    CHECK(out == nullptr);
}

TEST_CASE("density: values, domain errors, error-state discipline") {
    Ctx c;
    char* out = nullptr;
    REQUIRE(qpt_density(c.h, "tors", 5, &out) == QPT_OK);
    CHECK(take(out) == "25/62");
    REQUIRE(qpt_density(c.h, "tors", 3, &out) == QPT_OK);
    CHECK(take(out) == "3/26");
    REQUIRE(qpt_density(c.h, "iso", 7, &out) == QPT_OK);
    CHECK(take(out) == "2108/2801");

    CHECK(qpt_density(c.h, "tors", 2, &out) == QPT_EDOMAIN);
    CHECK(last(c).find("p = 2") != std::string::npos);
    CHECK(qpt_density(c.h, "nope", 5, &out) == QPT_EINVAL);
    CHECK(qpt_density(c.h, nullptr, 5, &out) == QPT_EINVAL);
    CHECK(qpt_density(c.h, "tors", 5, nullptr) == QPT_EINVAL);

    // A subsequent success clears the stored message.
    REQUIRE(qpt_density(c.h, "tors", 5, &out) == QPT_OK);
    take(out);
    CHECK(last(c).empty());
}

TEST_CASE("component tables parse and carry the pinned entries") {
    Ctx c;
    char* out = nullptr;
    REQUIRE(qpt_density_components(c.h, 7, &out) == QPT_OK);
    json t = json::parse(take(out));
    CHECK(t["good"] == "15/49");
    CHECK(t["total"] == "17302831/47079208");

    REQUIRE(qpt_density_p3_components(c.h, &out) == QPT_OK);
    json t3 = json::parse(take(out));
    CHECK(t3["good"] == "2/27");
    CHECK(t3.contains("split_mult_singular"));

    CHECK(qpt_density_components(c.h, 3, &out) == QPT_EDOMAIN);
}

TEST_CASE("scalar formula wrappers") {
    Ctx c;
    char* out = nullptr;
    REQUIRE(qpt_w3p(c.h, 13, &out) == QPT_OK);
    CHECK(take(out) == "57");

    uint64_t g = 0;
    REQUIRE(qpt_gamma(c.h, 3, 2, 0, &g) == QPT_OK);
    CHECK(g == 12);

    REQUIRE(qpt_asymptotic_density(c.h, 3, 1, &out) == QPT_OK);
    CHECK(take(out) == "3/8");
    REQUIRE(qpt_asymptotic_density(c.h, 3, 2, &out) == QPT_OK);
    CHECK(take(out) == "1/2");

    REQUIRE(qpt_twist_probability(c.h, "isogenies", 3, 2, 0, &out) == QPT_OK);
    CHECK(take(out) == "1/2");
    REQUIRE(qpt_twist_probability(c.h, "isogenies", 3, 4, 1, &out) == QPT_OK);
    CHECK(take(out) == "1/4");
    CHECK(qpt_twist_probability(c.h, "isogenies", 3, 4, 0, &out) != QPT_OK);

    REQUIRE(qpt_igusa_closed_form(c.h, 5, 0, 2, 0, 0, &out) == QPT_OK);
    CHECK(take(out) == "25/31");
    REQUIRE(qpt_igusa_closed_form(c.h, 5, 0, 0, 0, 0, &out) == QPT_OK);
    CHECK(take(out) == "1/1");
}

TEST_CASE("rational-to-decimal rendering") {
    Ctx c;
    char* out = nullptr;
    REQUIRE(qpt_rational_decimal(c.h, "25/62", 12, &out) == QPT_OK);
    CHECK(take(out) == "0.403225806452");
    REQUIRE(qpt_rational_decimal(c.h, "-3/2", 2, &out) == QPT_OK);
    CHECK(take(out) == "-1.50");
    REQUIRE(qpt_rational_decimal(c.h, "7", 0, &out) == QPT_OK);
    CHECK(take(out) == "7");
    REQUIRE(qpt_rational_decimal(c.h, "2/4", 1, &out) == QPT_OK);
    CHECK(take(out) == "0.5");
    // Half-way cases round away from zero at the last digit.
    REQUIRE(qpt_rational_decimal(c.h, "1/8", 2, &out) == QPT_OK);
    CHECK(take(out) == "0.13");
    REQUIRE(qpt_rational_decimal(c.h, "-1/8", 2, &out) == QPT_OK);
    CHECK(take(out) == "-0.13");

    CHECK(qpt_rational_decimal(c.h, "zebra", 2, &out) == QPT_EINVAL);
    CHECK(qpt_rational_decimal(c.h, "1/0", 2, &out) == QPT_EINVAL);
    CHECK(qpt_rational_decimal(c.h, nullptr, 2, &out) == QPT_EINVAL);
}

TEST_CASE("decide: pairs, triples, and the isogeny count") {
    Ctx c;
    char* out = nullptr;
    REQUIRE(qpt_decide_pair(c.h, "tors3", 5, 6, 0, "0", "16", &out) == QPT_OK);
    json d = json::parse(take(out));
    CHECK(d["answer"] == "yes");
    CHECK(d["reason"] == "none");

    REQUIRE(qpt_decide_pair(c.h, "iso3", 7, 6, 0, "0", "16", &out) == QPT_OK);
    json i = json::parse(take(out));
    CHECK(i["answer"] == "yes");
    CHECK(i["count"] == 4);
    CHECK(i["count_exact"] == true);

    // y^2 = x^3 + a6 with a6 = 1 (mod 3^6): psi_3 has the root x = 0 and
    // y^2 = a6 is a 3-adic square for every lift, so the whole box is "yes".
    REQUIRE(qpt_decide_triple(c.h, 6, "0", "0", "1", &out) == QPT_OK);
    json t = json::parse(take(out));
    CHECK(t["answer"] == "yes");

    // Negative coefficients travel as decimal strings.
    REQUIRE(qpt_decide_pair(c.h, "tors3", 5, 6, 0, "-1", "-1", &out) == QPT_OK);
    json n = json::parse(take(out));
    CHECK((n["answer"] == "yes" || n["answer"] == "no" ||
           n["answer"] == "undecided"));

    CHECK(qpt_decide_pair(c.h, "tors3", 5, 0, 0, "0", "16", &out) ==
          QPT_EINVAL);
    CHECK(qpt_decide_pair(c.h, "sextic", 5, 6, 0, "0", "16", &out) ==
          QPT_EINVAL);
    CHECK(qpt_decide_pair(c.h, "tors3", 5, 6, 0, "po/tato", "16", &out) ==
          QPT_EINVAL);
}

TEST_CASE("estimate: determinism, strata, and validation") {
    Ctx c;
    qpt_estimate_params p{};
    p.p = 5;
    p.k = 2;
    p.predicate = "tors3";

    char* out = nullptr;
    REQUIRE(qpt_estimate(c.h, &p, &out) == QPT_OK);
    std::string first = take(out);
    REQUIRE(qpt_estimate(c.h, &p, &out) == QPT_OK);
    CHECK(first == take(out)); // byte-identical rerun

    json e = json::parse(first);
    CHECK(e["mode"] == "exhaustive");
    CHECK(e["total"] == 625);
    CHECK(e["yes"].get<uint64_t>() + e["no"].get<uint64_t>() +
              e["undecided"].get<uint64_t>() ==
          625);
    CHECK(e["lower"].get<std::string>().find('/') != std::string::npos);

    p.stratum = "good";
    REQUIRE(qpt_estimate(c.h, &p, &out) == QPT_OK);
    json g = json::parse(take(out));
    CHECK(g["stratum"] == "good");
    CHECK(g.contains("unclassified"));

    p.stratum = "swamp";
    CHECK(qpt_estimate(c.h, &p, &out) == QPT_EINVAL);
    p.stratum = "good";
    p.monte_carlo = 1;
    p.samples = 100;
    CHECK(qpt_estimate(c.h, &p, &out) == QPT_EINVAL);

    p.stratum = nullptr;
    p.seed = 11;
    REQUIRE(qpt_estimate(c.h, &p, &out) == QPT_OK);
    json m = json::parse(take(out));
    CHECK(m["mode"] == "monte_carlo");
    CHECK(m["seed"] == 11);
    CHECK(m["generator"] == "splitmix64");

    qpt_estimate_params bad{};
    bad.p = 3;
    bad.k = 2;
    bad.predicate = "iso3";
    CHECK(qpt_estimate(c.h, &bad, &out) == QPT_EINVAL);
    bad.p = 4;
    bad.predicate = "tors3";
    CHECK(qpt_estimate(c.h, &bad, &out) == QPT_EDOMAIN);
    CHECK(qpt_estimate(c.h, nullptr, &out) == QPT_EINVAL);
}

TEST_CASE("igusa numerics across the ABI") {
    Ctx c;
    char* out = nullptr;
    // f = v^2 at p = 5, K = 3: value 1 - 604/3125 with mu_j = 5^{-ceil(j/2)}.
    int64_t coeff = 1;
    unsigned du = 0, dv = 2;
    REQUIRE(qpt_igusa_numeric(c.h, 5, &coeff, &du, &dv, 1, 3, &out) == QPT_OK);
    json ig = json::parse(take(out));
    CHECK(ig["value"] == "2521/3125");
    CHECK(ig["tail"] == "1/3125");
    CHECK(ig["boundary"] == 625);

    REQUIRE(qpt_igusa_numeric_vs_closed(c.h, 5, &coeff, &du, &dv, 1, 4, 0, 2,
                                        0, 0, &out) == QPT_OK);
    json vs = json::parse(take(out));
    CHECK(vs["closed"] == "25/31");
    CHECK(vs["within_tail"] == true);

    int64_t zero = 0;
    CHECK(qpt_igusa_numeric(c.h, 5, &zero, &du, &dv, 1, 3, &out) ==
          QPT_EDOMAIN);
    CHECK(qpt_igusa_numeric(c.h, 5, nullptr, &du, &dv, 1, 3, &out) ==
          QPT_EINVAL);
}

TEST_CASE("verify reports travel as text, json, and a pass flag") {
    Ctx c;
    char* js = nullptr;
    char* tx = nullptr;
    int pass = -1;
    REQUIRE(qpt_verify(c.h, "formulas", 5, 0, 0, 1, &js, &tx, &pass) ==
            QPT_OK);
    CHECK(pass == 1);
    std::string text = take(tx);
    CHECK(text.find("components_sum_identity: PASS") != std::string::npos);
    json rep = json::parse(take(js));
    CHECK(rep["suite"] == "formulas");
    CHECK(rep["pass"] == true);
    CHECK(rep["checks"].size() >= 4);

    CHECK(qpt_verify(c.h, "daydream", 5, 0, 0, 1, &js, &tx, &pass) ==
          QPT_EINVAL);
    CHECK(qpt_verify(c.h, "formulas", 2, 0, 0, 1, &js, &tx, &pass) ==
          QPT_EDOMAIN);
    CHECK(qpt_verify(c.h, nullptr, 5, 0, 0, 1, &js, &tx, &pass) ==
          QPT_EINVAL);
}
