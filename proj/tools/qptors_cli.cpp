// qptors_cli.cpp: command-line front end over the public C API.
//
// Each subcommand is a thin, reproducible wrapper around one or two
// library calls: flags in, one table/record out, nothing read from the
// environment.  Identical invocations (including --seed) therefore
// produce byte-identical output in every format.
//
// Exit codes: 0 success, 1 verification failure (a check or comparison
// came out false), 2 usage or domain error.
//
// (C) 2026 the qptors authors
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "qptors.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

// Owns a string allocated by the library.
struct OwnedStr {
    char* p = nullptr;
    ~OwnedStr() { qpt_string_free(p); }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

// Owns the library handle for the lifetime of the run.
struct Session {
    qpt_ctx* ctx = qpt_ctx_new();
    Session() {
        if (!ctx) {
            std::fprintf(stderr, "error: out of memory\n");
            std::exit(2);
        }
    }
    ~Session() { qpt_ctx_free(ctx); }
    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;
};

// Any library failure at this layer is a bad request: report the
// library's own message (it explains, e.g., why p = 2 is out of scope)
// and exit 2.
void require_ok(qpt_ctx* ctx, qpt_status s) {
    if (s == QPT_OK) return;
    const char* msg = qpt_last_error(ctx);
    std::fprintf(stderr, "error: %s\n",
                 (msg && *msg) ? msg : "unspecified library error");
    std::exit(2);
}

[[noreturn]] void usage_error(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    std::exit(2);
}

std::string decimal12(qpt_ctx* ctx, const std::string& rational) {
    OwnedStr d;
    require_ok(ctx, qpt_rational_decimal(ctx, rational.c_str(), 12, &d.p));
    return d.str();
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

void emit(const std::string& out_path, const std::string& body) {
    if (out_path.empty()) {
        std::fputs(body.c_str(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) usage_error("cannot open \"" + out_path + "\" for writing");
    f << body;
}

// Envelope shared by every JSON output: schema + artifact version first,
// then the command name, then the command-specific record.
std::string wrap_json(const std::string& command, ordered_json result) {
    ordered_json j;
    j["schema"] = qpt_schema_version();
    j["version"] = qpt_version();
    j["command"] = command;
    j["result"] = std::move(result);
    return j.dump() + "\n";
}

// RFC 4180 quoting: quote when a field contains a comma, quote, or line
// break; double embedded quotes.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); i++) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

struct DensityOpts {
    uint64_t p = 0;
    std::string mode = "tors";
    std::string format = "text";
    std::string out;
};

int cmd_density(Session& s, const DensityOpts& o) {
    if (o.mode != "p3" && o.p == 0)
        usage_error("--p is required for --mode " + o.mode);
    if (o.mode == "tors" || o.mode == "iso") {
        OwnedStr v;
        require_ok(s.ctx, qpt_density(s.ctx, o.mode.c_str(), o.p, &v.p));
        std::string dec = decimal12(s.ctx, v.str());
        if (o.format == "json") {
            ordered_json r;
            r["p"] = o.p;
            r["mode"] = o.mode;
            r["value"] = v.str();
            r["decimal"] = dec;
            emit(o.out, wrap_json("density", r));
        } else if (o.format == "csv") {
            std::string body = csv_row({"p", "mode", "value", "decimal"});
            body += csv_row({std::to_string(o.p), o.mode, v.str(), dec});
            emit(o.out, body);
        } else {
            emit(o.out, v.str() + " = " + dec + "\n");
        }
        return 0;
    }

    // components / p3: a table of named strata.
    OwnedStr table;
    uint64_t p = o.p;
    if (o.mode == "p3") {
        if (p != 0 && p != 3) usage_error("--mode p3 fixes p = 3");
        p = 3;
        require_ok(s.ctx, qpt_density_p3_components(s.ctx, &table.p));
    } else {
        require_ok(s.ctx, qpt_density_components(s.ctx, p, &table.p));
    }
    ordered_json comp = ordered_json::parse(table.str());

    if (o.format == "json") {
        ordered_json r;
        r["p"] = p;
        r["mode"] = o.mode;
        r["components"] = comp;
        emit(o.out, wrap_json("density", r));
    } else if (o.format == "csv") {
        std::string body = csv_row({"p", "stratum", "value", "decimal"});
        for (const auto& [name, val] : comp.items())
            body += csv_row({std::to_string(p), name, val.get<std::string>(),
                             decimal12(s.ctx, val.get<std::string>())});
        emit(o.out, body);
    } else {
        std::ostringstream t;
        for (const auto& [name, val] : comp.items())
            t << std::left << std::setw(22) << name
              << val.get<std::string>() << " = "
              << decimal12(s.ctx, val.get<std::string>()) << "\n";
        emit(o.out, t.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOpts {
    uint64_t p = 0;
    std::string suite = "all";
    unsigned k = 0;
    uint64_t samples = 0;
    uint64_t seed = 1;
    std::string format = "text";
    std::string out;
};

int cmd_verify(Session& s, const VerifyOpts& o) {
    OwnedStr json, text;
    int pass = 0;
    require_ok(s.ctx, qpt_verify(s.ctx, o.suite.c_str(), o.p, o.k, o.samples,
                                 o.seed, &json.p, &text.p, &pass));
    if (o.format == "json") {
        emit(o.out, wrap_json("verify", ordered_json::parse(json.str())));
    } else if (o.format == "csv") {
        ordered_json rep = ordered_json::parse(json.str());
        std::string body = csv_row({"suite", "p", "check", "detail", "status"});
        for (const auto& c : rep["checks"])
            body += csv_row({o.suite, std::to_string(o.p),
                             c["name"].get<std::string>(),
                             c["detail"].get<std::string>(),
                             c["skipped"].get<bool>()  ? "SKIP"
                             : c["pass"].get<bool>()   ? "PASS"
                                                       : "FAIL"});
        emit(o.out, body);
    } else {
        emit(o.out, text.str());
    }
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gl2
// ---------------------------------------------------------------------------

struct Gl2Opts {
    uint64_t ell = 3;
    std::string format = "text";
    std::string out;
};

int cmd_gl2(Session& s, const Gl2Opts& o) {
    // gamma_{s,t} for det class s in 1..ell-1 and trace t in 0..ell-1;
    // each row sums to ell^3 - ell.
    std::vector<std::vector<uint64_t>> rows;
    std::vector<uint64_t> sums;
    for (uint64_t det = 1; det < o.ell; det++) {
        std::vector<uint64_t> row;
        uint64_t sum = 0;
        for (uint64_t tr = 0; tr < o.ell; tr++) {
            uint64_t g = 0;
            require_ok(s.ctx, qpt_gamma(s.ctx, o.ell, det, tr, &g));
            row.push_back(g);
            sum += g;
        }
        rows.push_back(std::move(row));
        sums.push_back(sum);
    }

    if (o.format == "json") {
        ordered_json r;
        r["ell"] = o.ell;
        ordered_json table = ordered_json::array();
        for (size_t i = 0; i < rows.size(); i++) {
            ordered_json row;
            row["s"] = i + 1;
            row["gamma"] = rows[i];
            row["sum"] = sums[i];
            table.push_back(std::move(row));
        }
        r["rows"] = std::move(table);
        emit(o.out, wrap_json("gl2", r));
    } else if (o.format == "csv") {
        std::vector<std::string> header{"s"};
        for (uint64_t tr = 0; tr < o.ell; tr++)
            header.push_back("t" + std::to_string(tr));
        header.push_back("sum");
        std::string body = csv_row(header);
        for (size_t i = 0; i < rows.size(); i++) {
            std::vector<std::string> fields{std::to_string(i + 1)};
            for (uint64_t g : rows[i]) fields.push_back(std::to_string(g));
            fields.push_back(std::to_string(sums[i]));
            body += csv_row(fields);
        }
        emit(o.out, body);
    } else {
        std::ostringstream t;
        t << "gamma_{s,t} for ell = " << o.ell << "\n";
        t << std::setw(6) << "s\\t";
        for (uint64_t tr = 0; tr < o.ell; tr++)
            t << std::setw(8) << tr;
        t << " |" << std::setw(8) << "sum" << "\n";
        for (size_t i = 0; i < rows.size(); i++) {
            t << std::setw(6) << (i + 1);
            for (uint64_t g : rows[i]) t << std::setw(8) << g;
            t << " |" << std::setw(8) << sums[i] << "\n";
        }
        emit(o.out, t.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// twist
// ---------------------------------------------------------------------------

struct TwistOpts {
    uint64_t n = 0;
    std::string mode = "isogenies";
    uint64_t ell = 3;
    bool p1 = false;
    std::string format = "text";
    std::string out;
};

int cmd_twist(Session& s, const TwistOpts& o) {
    OwnedStr v;
    require_ok(s.ctx, qpt_twist_probability(s.ctx, o.mode.c_str(), o.ell, o.n,
                                            o.p1 ? 1 : 0, &v.p));
    std::string dec = decimal12(s.ctx, v.str());
    if (o.format == "json") {
        ordered_json r;
        r["ell"] = o.ell;
        r["mode"] = o.mode;
        r["count"] = o.n;
        r["p_is_1_mod_ell"] = o.p1;
        r["value"] = v.str();
        r["decimal"] = dec;
        emit(o.out, wrap_json("twist", r));
    } else if (o.format == "csv") {
        std::string body =
            csv_row({"ell", "mode", "count", "p_is_1_mod_ell", "value",
                     "decimal"});
        body += csv_row({std::to_string(o.ell), o.mode, std::to_string(o.n),
                         o.p1 ? "true" : "false", v.str(), dec});
        emit(o.out, body);
    } else {
        emit(o.out, v.str() + " = " + dec + "\n");
    }
    return 0;
}

// ---------------------------------------------------------------------------
// decide
// ---------------------------------------------------------------------------

struct DecideOpts {
    uint64_t p = 0;
    unsigned k = 8;
    std::string pred = "tors3";
    uint64_t ell = 5;
    std::string a = "0", b = "0";
    std::string a2 = "0", a4 = "0", a6 = "0";
    std::string format = "text";
    std::string out;
};

int cmd_decide(Session& s, const DecideOpts& o) {
    OwnedStr rec;
    ordered_json inputs;
    inputs["p"] = o.p;
    inputs["k"] = o.k;
    inputs["predicate"] = o.pred;
    if (o.p == 3) {
        if (o.pred != "tors3")
            usage_error("p = 3 supports the \"tors3\" predicate only");
        require_ok(s.ctx, qpt_decide_triple(s.ctx, o.k, o.a2.c_str(),
                                            o.a4.c_str(), o.a6.c_str(),
                                            &rec.p));
        inputs["a2"] = o.a2;
        inputs["a4"] = o.a4;
        inputs["a6"] = o.a6;
    } else {
        require_ok(s.ctx, qpt_decide_pair(s.ctx, o.pred.c_str(), o.p, o.k,
                                          o.ell, o.a.c_str(), o.b.c_str(),
                                          &rec.p));
        if (o.pred == "ell") inputs["ell"] = o.ell;
        inputs["a"] = o.a;
        inputs["b"] = o.b;
    }
    ordered_json answer = ordered_json::parse(rec.str());

    if (o.format == "json") {
        for (const auto& [key, val] : answer.items()) inputs[key] = val;
        emit(o.out, wrap_json("decide", inputs));
    } else if (o.format == "csv") {
        std::vector<std::string> header, fields;
        for (const auto& [key, val] : inputs.items()) {
            header.push_back(key);
            fields.push_back(val.is_string() ? val.get<std::string>()
                                             : val.dump());
        }
        for (const auto& [key, val] : answer.items()) {
            header.push_back(key);
            fields.push_back(val.is_string() ? val.get<std::string>()
                                             : val.dump());
        }
        emit(o.out, csv_row(header) + csv_row(fields));
    } else {
        std::ostringstream t;
        t << answer["answer"].get<std::string>();
        std::string reason = answer["reason"].get<std::string>();
        if (reason != "none") t << " (" << reason << ")";
        t << "\n";
        if (answer.contains("count")) {
            t << "count: " << (answer["count_exact"].get<bool>() ? "" : ">= ")
              << answer["count"].get<uint64_t>() << "\n";
        }
        emit(o.out, t.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

struct EstimateOpts {
    uint64_t p = 0;
    unsigned k = 3;
    std::string pred = "tors3";
    uint64_t ell = 5;
    bool monte_carlo = false;
    uint64_t samples = 100000;
    uint64_t seed = 1;
    std::string stratum = "all";
    uint64_t budget = 0;
    unsigned jobs = 1;
    std::string format = "json";
    std::string out;
};

int cmd_estimate(Session& s, const EstimateOpts& o) {
    qpt_estimate_params params{};
    params.p = o.p;
    params.k = o.k;
    params.predicate = o.pred.c_str();
    params.ell = o.ell;
    params.monte_carlo = o.monte_carlo ? 1 : 0;
    params.samples = o.samples;
    params.seed = o.seed;
    params.stratum = o.stratum.c_str();
    params.budget = o.budget;
    params.jobs = o.jobs;

    OwnedStr rec;
    require_ok(s.ctx, qpt_estimate(s.ctx, &params, &rec.p));
    ordered_json r = ordered_json::parse(rec.str());
    r["predicate"] = o.pred;

    if (o.format == "json") {
        emit(o.out, wrap_json("estimate", r));
    } else if (o.format == "csv") {
        std::vector<std::string> header, fields;
        for (const auto& [key, val] : r.items()) {
            header.push_back(key);
            fields.push_back(val.is_string() ? val.get<std::string>()
                                             : val.dump());
        }
        emit(o.out, csv_row(header) + csv_row(fields));
    } else {
        std::ostringstream t;
        t << r["mode"].get<std::string>() << " p=" << o.p << " k=" << o.k
          << " predicate=" << o.pred << " stratum="
          << r["stratum"].get<std::string>() << "\n";
        t << "yes " << r["yes"] << ", no " << r["no"] << ", undecided "
          << r["undecided"] << " of " << r["total"];
        if (r.contains("unclassified"))
            t << " (unclassified " << r["unclassified"] << ")";
        t << "\n";
        std::string lo = r["lower"].get<std::string>();
        std::string hi = r["upper"].get<std::string>();
        t << "lower " << lo << " = " << decimal12(s.ctx, lo) << "\n";
        t << "upper " << hi << " = " << decimal12(s.ctx, hi) << "\n";
        emit(o.out, t.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// igusa
// ---------------------------------------------------------------------------

struct IgusaOpts {
    uint64_t p = 0;
    unsigned K = 4;
    std::vector<std::string> terms;
    std::string closed;  // "k:m:n:d", empty = no comparison
    std::string format = "text";
    std::string out;
};

// Parse n colon-separated integers; exits with a usage error otherwise.
std::vector<long long> split_ints(const std::string& spec, size_t n,
                                  const std::string& what) {
    std::vector<long long> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) {
        try {
            size_t used = 0;
            out.push_back(std::stoll(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            usage_error("malformed " + what + " \"" + spec + "\"");
        }
    }
    if (out.size() != n)
        usage_error(what + " \"" + spec + "\" needs " + std::to_string(n) +
                    " colon-separated integers");
    return out;
}

int cmd_igusa(Session& s, const IgusaOpts& o) {
    std::vector<int64_t> coeffs;
    std::vector<unsigned> du, dv;
    for (const auto& term : o.terms) {
        auto v = split_ints(term, 3, "--term");
        if (v[1] < 0 || v[2] < 0) usage_error("degrees must be nonnegative");
        coeffs.push_back(v[0]);
        du.push_back(static_cast<unsigned>(v[1]));
        dv.push_back(static_cast<unsigned>(v[2]));
    }

    OwnedStr rec;
    if (o.closed.empty()) {
        require_ok(s.ctx, qpt_igusa_numeric(s.ctx, o.p, coeffs.data(),
                                            du.data(), dv.data(),
                                            static_cast<unsigned>(coeffs.size()),
                                            o.K, &rec.p));
    } else {
        auto c = split_ints(o.closed, 4, "--closed");
        for (long long x : c)
            if (x < 0) usage_error("--closed parameters must be nonnegative");
        require_ok(s.ctx,
                   qpt_igusa_numeric_vs_closed(
                       s.ctx, o.p, coeffs.data(), du.data(), dv.data(),
                       static_cast<unsigned>(coeffs.size()), o.K,
                       static_cast<unsigned>(c[0]), static_cast<unsigned>(c[1]),
                       static_cast<unsigned>(c[2]), static_cast<unsigned>(c[3]),
                       &rec.p));
    }
    ordered_json r = ordered_json::parse(rec.str());
    bool compared = r.contains("within_tail");
    bool within = compared && r["within_tail"].get<bool>();

    if (o.format == "json") {
        ordered_json full;
        full["p"] = o.p;
        full["K"] = o.K;
        full["terms"] = o.terms;
        for (const auto& [key, val] : r.items()) full[key] = val;
        emit(o.out, wrap_json("igusa", full));
    } else if (o.format == "csv") {
        std::vector<std::string> header{"p", "K", "value", "tail", "boundary"};
        std::vector<std::string> fields{std::to_string(o.p),
                                        std::to_string(o.K),
                                        r["value"].get<std::string>(),
                                        r["tail"].get<std::string>(),
                                        r["boundary"].dump()};
        if (compared) {
            header.insert(header.end(), {"closed", "within_tail"});
            fields.push_back(r["closed"].get<std::string>());
            fields.push_back(within ? "true" : "false");
        }
        emit(o.out, csv_row(header) + csv_row(fields));
    } else {
        std::ostringstream t;
        std::string val = r["value"].get<std::string>();
        t << "value " << val << " = " << decimal12(s.ctx, val) << "\n";
        t << "tail " << r["tail"].get<std::string>() << ", boundary "
          << r["boundary"] << "\n";
        if (compared) {
            std::string closed = r["closed"].get<std::string>();
            t << "closed " << closed << " = " << decimal12(s.ctx, closed)
              << "; within_tail " << (within ? "yes" : "no") << "\n";
        }
        emit(o.out, t.str());
    }
    return compared && !within ? 1 : 0;
}

void add_format(CLI::App* sub, std::string& format, std::string& out) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", out, "write output to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"densities of 3-torsion and 3-isogeny conditions on "
                 "elliptic curves over Q_p"};
    app.require_subcommand(1);

    DensityOpts dn;
    auto* density = app.add_subcommand(
        "density", "exact closed-form densities");
    density->add_option("--p", dn.p, "odd prime p");
    density->add_option("--mode", dn.mode, "tors|iso|components|p3")
        ->check(CLI::IsMember({"tors", "iso", "components", "p3"}));
    add_format(density, dn.format, dn.out);

    VerifyOpts vf;
    auto* verify = app.add_subcommand(
        "verify", "cross-check suites (formulas, counts, estimator)");
    verify->add_option("--p", vf.p, "odd prime p")->required();
    verify->add_option("--suite", vf.suite, "formulas|counts|estimator|all")
        ->check(CLI::IsMember({"formulas", "counts", "estimator", "all"}));
    verify->add_option("--k", vf.k, "estimator precision (default 4)");
    verify->add_option("--samples", vf.samples, "Monte-Carlo sample count");
    verify->add_option("--seed", vf.seed, "Monte-Carlo seed");
    add_format(verify, vf.format, vf.out);

    Gl2Opts gl;
    auto* gl2 = app.add_subcommand(
        "gl2", "gamma_{s,t} matrix-count table over F_ell");
    gl2->add_option("--ell", gl.ell, "odd prime ell")->required();
    add_format(gl2, gl.format, gl.out);

    TwistOpts tw;
    auto* twist = app.add_subcommand(
        "twist", "probability that a random twist keeps n roots/isogenies");
    twist->add_option("--n", tw.n, "root or isogeny count")->required();
    twist->add_option("--mode", tw.mode, "roots|isogenies")
        ->check(CLI::IsMember({"roots", "isogenies"}));
    twist->add_option("--ell", tw.ell, "odd prime ell");
    twist->add_flag("--p1", tw.p1, "condition on p = 1 (mod ell)");
    add_format(twist, tw.format, tw.out);

    DecideOpts dc;
    auto* decide = app.add_subcommand(
        "decide", "tri-state predicate on one curve from residue data");
    decide->add_option("--p", dc.p, "odd prime p")->required();
    decide->add_option("--k", dc.k, "residue precision");
    decide->add_option("--pred", dc.pred, "tors3|iso3|ell|ptors")
        ->check(CLI::IsMember({"tors3", "iso3", "ell", "ptors"}));
    decide->add_option("--ell", dc.ell, "torsion order for --pred ell");
    decide->add_option("--a", dc.a, "short Weierstrass a (p >= 5)");
    decide->add_option("--b", dc.b, "short Weierstrass b (p >= 5)");
    decide->add_option("--a2", dc.a2, "medium Weierstrass a2 (p = 3)");
    decide->add_option("--a4", dc.a4, "medium Weierstrass a4 (p = 3)");
    decide->add_option("--a6", dc.a6, "medium Weierstrass a6 (p = 3)");
    add_format(decide, dc.format, dc.out);

    EstimateOpts es;
    auto* estimate = app.add_subcommand(
        "estimate", "density bracket by enumeration or Monte-Carlo");
    estimate->add_option("--p", es.p, "odd prime p")->required();
    estimate->add_option("--k", es.k, "residue precision");
    estimate->add_option("--pred", es.pred, "tors3|iso3|ell|ptors")
        ->check(CLI::IsMember({"tors3", "iso3", "ell", "ptors"}));
    estimate->add_option("--ell", es.ell, "torsion order for --pred ell");
    estimate->add_flag("--mc", es.monte_carlo, "Monte-Carlo instead of "
                       "exhaustive enumeration");
    estimate->add_option("--samples", es.samples, "Monte-Carlo sample count");
    estimate->add_option("--seed", es.seed, "Monte-Carlo seed");
    estimate->add_option("--stratum", es.stratum,
                         "all|good|split_mult|nonsplit_mult|additive")
        ->check(CLI::IsMember({"all", "good", "split_mult", "nonsplit_mult",
                               "additive"}));
    estimate->add_option("--budget", es.budget,
                         "max residues enumerated (0 = library default)");
    estimate->add_option("--jobs", es.jobs, "worker threads");
    add_format(estimate, es.format, es.out);

    IgusaOpts ig;
    auto* igusa = app.add_subcommand(
        "igusa", "truncated local integral of |f(u,v)|_p over Z_p^2");
    igusa->add_option("--p", ig.p, "prime p")->required();
    igusa->add_option("--K", ig.K, "truncation level");
    igusa->add_option("--term", ig.terms, "monomial c:du:dv (repeatable)")
        ->required();
    igusa->add_option("--closed", ig.closed,
                      "compare against closed form k:m:n:d");
    add_format(igusa, ig.format, ig.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Session s;
    if (density->parsed()) return cmd_density(s, dn);
    if (verify->parsed()) return cmd_verify(s, vf);
    if (gl2->parsed()) return cmd_gl2(s, gl);
    if (twist->parsed()) return cmd_twist(s, tw);
    if (decide->parsed()) return cmd_decide(s, dc);
    if (estimate->parsed()) return cmd_estimate(s, es);
    if (igusa->parsed()) return cmd_igusa(s, ig);
    return 2;
}
