#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "quadtor/verify.hpp"

namespace quadtor {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

enum class OutputFormat { text, json, csv };

struct RunConfig {
    std::uint64_t seed = 0;
    std::string strictness = "both";  // narrow | wide | both
    OutputFormat format = OutputFormat::text;
    unsigned jobs = 1;
    std::string out_path;  // empty = stdout
    int verbosity = 0;
};

// Deterministic key order matters: scans must be byte-identical across runs.
using Json = nlohmann::ordered_json;

inline std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::text: return "text";
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
    }
    return "?";
}

inline Json config_to_json(const RunConfig& cfg) {
    Json j;
    j["seed"] = std::to_string(cfg.seed);
    j["strictness"] = cfg.strictness;
    j["format"] = format_name(cfg.format);
    j["jobs"] = cfg.jobs;
    j["out"] = cfg.out_path;
    j["verbosity"] = cfg.verbosity;
    return j;
}

inline RunConfig config_from_json(const Json& j) {
    RunConfig cfg;
    cfg.seed = std::stoull(j.at("seed").get<std::string>());
    cfg.strictness = j.at("strictness").get<std::string>();
    std::string f = j.at("format").get<std::string>();
    cfg.format = f == "json" ? OutputFormat::json : f == "csv" ? OutputFormat::csv : OutputFormat::text;
    cfg.jobs = j.at("jobs").get<unsigned>();
    cfg.out_path = j.at("out").get<std::string>();
    cfg.verbosity = j.at("verbosity").get<int>();
    return cfg;
}

namespace detail {

inline Json form_json(const QForm& f) { return Json::array({dec(f.a), dec(f.b), dec(f.c)}); }

inline Json quadint_json(const QuadInt& q) {
    Json j;
    j["x"] = dec(q.x);
    j["y"] = dec(q.y);
    return j;
}

inline Json ideal_json(const IdealNF& ideal) {
    Json j;
    j["content"] = dec(ideal.content);
    j["a"] = dec(ideal.a);
    j["l"] = dec(ideal.l);
    j["norm"] = dec(ideal.norm());
    return j;
}

inline Json record_json(const IdealRecord& r, const std::string& strictness) {
    Json j;
    j["ideal"] = ideal_json(r.ideal);
    j["form"] = form_json(r.form);
    if (strictness != "wide") j["label_narrow"] = form_json(r.label_narrow.form);
    if (strictness != "narrow") j["label_wide"] = form_json(r.label_wide.form);
    j["principal"] = r.principal_wide;
    return j;
}

}  // namespace detail

// Machine formats intentionally omit timings: two runs with equal seed and
// version must serialize to identical bytes.
inline Json report_to_json(const Report& rep, const RunConfig& cfg) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["seed"] = std::to_string(cfg.seed);
    j["m"] = dec(rep.m);
    j["valid"] = rep.valid;
    if (!rep.valid) {
        j["invalid_reasons"] = rep.invalid_reasons;
        return j;
    }
    Json factors = Json::array();
    for (const auto& pp : rep.factorization.factors) {
        Json f;
        f["p"] = dec(pp.p);
        f["exp"] = pp.exp;
        factors.push_back(f);
    }
    j["factors"] = factors;
    j["t"] = rep.factorization.t();

    Json unit;
    unit["eps"] = detail::quadint_json(rep.unit->eps);
    unit["norm"] = rep.unit->norm;
    unit["cf_period"] = rep.unit->cycle.period();
    j["unit"] = unit;

    Json reps = Json::array();
    for (const auto& r : rep.reps) {
        Json rr;
        rr["a"] = dec(r.a);
        rr["b"] = dec(r.b);
        reps.push_back(rr);
    }
    j["reps"] = reps;

    Json a_ideals = Json::array();
    for (const auto& rec : rep.a_ideals) a_ideals.push_back(detail::record_json(rec, cfg.strictness));
    j["a_ideals"] = a_ideals;

    Json b_ideals = Json::array();
    for (const auto& [e, rec] : rep.b_ideals) {
        Json br = detail::record_json(rec, cfg.strictness);
        br["e"] = e;
        b_ideals.push_back(br);
    }
    j["b_ideals"] = b_ideals;

    Json cg;
    cg["narrow_classes"] = rep.narrow_class_count;
    cg["wide_classes"] = rep.wide_class_count;
    Json tors = Json::array();
    for (const auto& f : rep.two_torsion_labels) tors.push_back(detail::form_json(f));
    cg["two_torsion"] = tors;
    cg["two_torsion_size"] = rep.two_torsion_labels.size();
    Json amb = Json::array();
    for (const auto& f : rep.ambiguous_labels) amb.push_back(detail::form_json(f));
    cg["ambiguous"] = amb;
    cg["ambiguous_size"] = rep.ambiguous_labels.size();
    cg["ambiguous_index"] = rep.ambiguous_index;
    cg["two_torsion_narrow_size"] = rep.two_torsion_narrow_size;
    cg["ambiguous_narrow_size"] = rep.ambiguous_narrow_size;
    j["class_group"] = cg;

    j["branch"] = std::string(1, rep.branch);
    if (rep.branch == 'a') {
        Json ba;
        ba["principal_rep_index"] = rep.branch_a.principal_rep_index;
        if (rep.branch_a.alpha) ba["alpha"] = detail::quadint_json(*rep.branch_a.alpha);
        if (rep.branch_a.eta) {
            ba["eta"] = detail::quadint_json(*rep.branch_a.eta);
            ba["eta_norm"] = dec(rep.branch_a.eta_norm);
            ba["eta_sign"] = rep.branch_a.eta_sign;
            ba["eta_exponent"] = rep.branch_a.eta_exponent;
        }
        j["branch_a"] = ba;
    } else {
        Json bb;
        Json pairs = Json::array();
        for (const auto& [x, y] : rep.branch_b.pairs) pairs.push_back(Json::array({x, y}));
        bb["pairs"] = pairs;
        if (rep.branch_b.relation_e) {
            Json rel;
            rel["e"] = *rep.branch_b.relation_e;
            rel["alpha"] = detail::quadint_json(*rep.branch_b.relation_alpha);
            bb["ramified_relation"] = rel;
        }
        j["branch_b"] = bb;
    }

    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["failures"] = rep.failures();
    return j;
}

inline std::string csv_header() {
    return "schema_version,m,t,factors,unit_x,unit_y,unit_norm,cf_period,branch,reps,"
           "two_torsion_size,ambiguous_size,ambiguous_index,pairs,relation_e,failures";
}

inline std::string report_to_csv_row(const Report& rep) {
    std::ostringstream os;
    os << kSchemaVersion << ',' << dec(rep.m) << ',' << rep.factorization.t() << ',';
    for (size_t i = 0; i < rep.factorization.factors.size(); ++i)
        os << (i ? "*" : "") << dec(rep.factorization.factors[i].p);
    os << ',' << dec(rep.unit->eps.x) << ',' << dec(rep.unit->eps.y) << ',' << rep.unit->norm << ','
       << rep.unit->cycle.period() << ',' << rep.branch << ',';
    for (size_t i = 0; i < rep.reps.size(); ++i)
        os << (i ? ";" : "") << dec(rep.reps[i].a) << ':' << dec(rep.reps[i].b);
    os << ',' << rep.two_torsion_labels.size() << ',' << rep.ambiguous_labels.size() << ','
       << rep.ambiguous_index << ',';
    for (size_t i = 0; i < rep.branch_b.pairs.size(); ++i)
        os << (i ? ";" : "") << rep.branch_b.pairs[i].first << '-' << rep.branch_b.pairs[i].second;
    os << ',';
    if (rep.branch_b.relation_e)
        for (int bit : *rep.branch_b.relation_e) os << bit;
    os << ',' << rep.failures();
    return os.str();
}

inline std::string report_to_text(const Report& rep) {
    std::ostringstream os;
    os << "m = " << dec(rep.m);
    if (!rep.valid) {
        os << "  INVALID\n";
        for (const auto& r : rep.invalid_reasons) os << "  - " << r << "\n";
        return os.str();
    }
    os << " = ";
    for (size_t i = 0; i < rep.factorization.factors.size(); ++i)
        os << (i ? " * " : "") << dec(rep.factorization.factors[i].p);
    os << "   (t = " << rep.factorization.t() << ")\n";
    os << "unit: eps = " << rep.unit->eps.str() << ", norm " << (rep.unit->norm > 0 ? "+1" : "-1")
       << ", cf period " << rep.unit->cycle.period() << "\n";
    os << "representations m = a^2 + 4b^2:\n";
    for (size_t i = 0; i < rep.reps.size(); ++i)
        os << "  a[" << i << "]: (a, b) = (" << dec(rep.reps[i].a) << ", " << dec(rep.reps[i].b)
           << ")\n";
    os << "ideals a_j:\n";
    for (size_t i = 0; i < rep.a_ideals.size(); ++i) {
        const auto& r = rep.a_ideals[i];
        os << "  a[" << i << "] = " << r.ideal.str() << "  form " << r.form.str() << "  class "
           << r.label_wide.form.str() << (r.principal_wide ? "  (principal)" : "") << "\n";
    }
    os << "ramified ideals b_e:\n";
    for (const auto& [e, r] : rep.b_ideals) {
        os << "  e = ";
        for (int bit : e) os << bit;
        os << "  " << r.ideal.str() << "  class " << r.label_wide.form.str()
           << (r.principal_wide ? "  (principal)" : "") << "\n";
    }
    os << "class group: " << rep.narrow_class_count << " narrow / " << rep.wide_class_count
       << " wide classes, |Cl[2]| = " << rep.two_torsion_labels.size()
       << ", |C| = " << rep.ambiguous_labels.size() << " (index " << rep.ambiguous_index << ")\n";
    os << "branch " << rep.branch << "\n";
    if (rep.branch == 'a') {
        if (rep.branch_a.alpha)
            os << "  principal a[" << rep.branch_a.principal_rep_index
               << "], alpha = " << rep.branch_a.alpha->str()
               << ", eta = " << rep.branch_a.eta->str() << " (norm " << dec(rep.branch_a.eta_norm)
               << ", " << (rep.branch_a.eta_sign < 0 ? "-" : "+") << "eps^"
               << rep.branch_a.eta_exponent << ")\n";
    } else {
        os << "  pairs:";
        for (const auto& [x, y] : rep.branch_b.pairs) os << " {a[" << x << "], a[" << y << "]}";
        os << "\n";
        if (rep.branch_b.relation_e) {
            os << "  ramified relation: e = ";
            for (int bit : *rep.branch_b.relation_e) os << bit;
            os << ", alpha = " << rep.branch_b.relation_alpha->str() << "\n";
        }
    }
    os << "checks:\n";
    for (const auto& c : rep.checks)
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name
           << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    os << "failures: " << rep.failures() << "   (" << rep.elapsed_ms << " ms)\n";
    return os.str();
}

inline Json summary_to_json(const ScanSummary& s) {
    Json j;
    Json inner;
    inner["schema_version"] = kSchemaVersion;
    inner["m_min"] = dec(s.m_min);
    inner["m_max"] = dec(s.m_max);
    inner["scanned"] = s.scanned;
    inner["valid"] = s.valid;
    inner["reported"] = s.reported;
    inner["branch_a"] = s.branch_a;
    inner["branch_b"] = s.branch_b;
    inner["failed_checks"] = s.failed_checks;
    inner["failed_m"] = s.failed_m;
    j["summary"] = inner;
    return j;
}

}  // namespace quadtor
