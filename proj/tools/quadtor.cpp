// Command-line front end: one subcommand per pipeline stage, JSON/CSV/text
// output, reproducible across runs with equal arguments and seed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "quadtor/serialize.hpp"

namespace {

using namespace quadtor;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;      // argument or input errors
constexpr int kExitInternal = 3;   // invariant violations

struct OutputSink {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file.good()) throw std::invalid_argument("cannot open output file: " + path);
            stream = &file;
        }
    }
    std::ostream& out() { return *stream; }
};

Factorization validated_factorization(const Int& m) {
    if (m < 1) throw std::invalid_argument("m must be a positive integer");
    Factorization f = factor(m);
    auto reasons = validate_m(f);
    if (!reasons.empty()) {
        std::string msg = "m = " + dec(m) + " is not a squarefree product of primes = 1 mod 4:";
        for (const auto& r : reasons) msg += "\n  - " + r;
        throw std::invalid_argument(msg);
    }
    return f;
}

int cmd_reps(const Int& m, const RunConfig& cfg) {
    Factorization f = validated_factorization(m);
    auto reps = enumerate_reps(f);
    OutputSink sink(cfg.out_path);
    if (cfg.format == OutputFormat::json) {
        Json j = Json::array();
        for (const auto& r : reps) {
            Json rr;
            rr["a"] = dec(r.a);
            rr["b"] = dec(r.b);
            j.push_back(rr);
        }
        sink.out() << j.dump() << "\n";
    } else if (cfg.format == OutputFormat::csv) {
        sink.out() << "a,b\n";
        for (const auto& r : reps) sink.out() << dec(r.a) << ',' << dec(r.b) << "\n";
    } else {
        sink.out() << dec(m) << " = a^2 + 4b^2 in " << reps.size() << " ways:\n";
        for (const auto& r : reps) sink.out() << "  (" << dec(r.a) << ", " << dec(r.b) << ")\n";
    }
    return kExitOk;
}

int cmd_unit(const Int& m, const RunConfig& cfg) {
    validated_factorization(m);
    FundamentalUnit fu = fundamental_unit(m);
    OutputSink sink(cfg.out_path);
    if (cfg.format == OutputFormat::json) {
        Json j;
        j["m"] = dec(m);
        j["eps"]["x"] = dec(fu.eps.x);
        j["eps"]["y"] = dec(fu.eps.y);
        j["norm"] = fu.norm;
        j["cf_period"] = fu.cycle.period();
        Json q = Json::array();
        for (const auto& a : fu.cycle.quotients) q.push_back(dec(a));
        j["cf_quotients"] = q;
        sink.out() << j.dump() << "\n";
    } else {
        sink.out() << "eps = " << fu.eps.str() << ", norm " << (fu.norm > 0 ? "+1" : "-1")
                   << ", continued-fraction period " << fu.cycle.period() << "\n";
    }
    return kExitOk;
}

int cmd_classgroup(const Int& m, const RunConfig& cfg) {
    Factorization f = validated_factorization(m);
    ClassData cd(m);
    OutputSink sink(cfg.out_path);
    auto tors = cd.two_torsion_wide();
    std::vector<int> gens;
    for (const auto& pp : f.factors)
        gens.push_back(cd.wide_index_of(cd.narrow_class_of(to_form(ramified_prime(m, pp.p)))));
    auto amb = cd.wide_subgroup(gens);
    if (cfg.format == OutputFormat::json) {
        Json j;
        j["m"] = dec(m);
        j["narrow_classes"] = cd.narrow_class_count();
        j["wide_classes"] = cd.wide_class_count();
        Json tj = Json::array();
        for (int i : tors) tj.push_back(detail::form_json(cd.wide_label(i)));
        j["two_torsion"] = tj;
        Json aj = Json::array();
        for (int i : amb) aj.push_back(detail::form_json(cd.wide_label(i)));
        j["ambiguous"] = aj;
        sink.out() << j.dump() << "\n";
    } else {
        sink.out() << "m = " << dec(m) << ": " << cd.narrow_class_count() << " narrow classes, "
                   << cd.wide_class_count() << " wide classes\n";
        sink.out() << "two-torsion (wide):";
        for (int i : tors) sink.out() << "  " << cd.wide_label(i).str();
        sink.out() << "\nambiguous subgroup:";
        for (int i : amb) sink.out() << "  " << cd.wide_label(i).str();
        sink.out() << "\n";
        if (cfg.strictness != "wide") {
            sink.out() << "narrow two-torsion count: " << cd.two_torsion_narrow().size() << "\n";
        }
    }
    return kExitOk;
}

int cmd_ideals(const Int& m, const RunConfig& cfg) {
    Factorization f = validated_factorization(m);
    Report r = classify(m);
    OutputSink sink(cfg.out_path);
    if (cfg.format == OutputFormat::json) {
        Json j;
        j["m"] = dec(m);
        Json a = Json::array();
        for (const auto& rec : r.a_ideals) a.push_back(detail::record_json(rec, cfg.strictness));
        j["a_ideals"] = a;
        Json b = Json::array();
        for (const auto& [e, rec] : r.b_ideals) {
            Json rj = detail::record_json(rec, cfg.strictness);
            rj["e"] = e;
            b.push_back(rj);
        }
        j["b_ideals"] = b;
        sink.out() << j.dump() << "\n";
    } else {
        sink.out() << "ideals a_j for m = " << dec(m) << " (t = " << f.t() << "):\n";
        for (size_t i = 0; i < r.a_ideals.size(); ++i)
            sink.out() << "  rep (" << dec(r.reps[i].a) << ", " << dec(r.reps[i].b)
                       << "): " << r.a_ideals[i].ideal.str()
                       << (r.a_ideals[i].principal_wide ? "  principal" : "") << "\n";
        sink.out() << "ramified products b_e:\n";
        for (const auto& [e, rec] : r.b_ideals) {
            sink.out() << "  e = ";
            for (int bit : e) sink.out() << bit;
            sink.out() << ": " << rec.ideal.str() << (rec.principal_wide ? "  principal" : "")
                       << "\n";
        }
    }
    return kExitOk;
}

int cmd_quartic(const Int& m, const RunConfig& cfg) {
    Factorization f = validated_factorization(m);
    auto reps = enumerate_reps(f);
    auto chars = enumerate_quartic_characters(f.t());
    OutputSink sink(cfg.out_path);
    if (cfg.format == OutputFormat::json) {
        Json j;
        j["m"] = dec(m);
        j["character_pairs"] = chars.size();
        Json fields = Json::array();
        for (const auto& rep : reps) {
            QuarticPoly poly = min_poly(m, rep);
            Json fj;
            fj["a"] = dec(rep.a);
            fj["b"] = dec(rep.b);
            fj["min_poly_p"] = dec(poly.p());
            fj["min_poly_q"] = dec(poly.q());
            fj["irreducible"] = quartic_irreducible(poly);
            fj["disc_check"] = disc_check(poly, m);
            fj["same_field_check"] = same_field_check(m, rep);
            fields.push_back(fj);
        }
        j["fields"] = fields;
        sink.out() << j.dump() << "\n";
    } else {
        sink.out() << "cyclic quartic extensions for m = " << dec(m) << ": " << chars.size()
                   << " character pairs\n";
        for (const auto& rep : reps) {
            QuarticPoly poly = min_poly(m, rep);
            sink.out() << "  sqrt(m + " << dec(2 * rep.b) << "*sqrt(m)): " << poly.str()
                       << "  irreducible=" << (quartic_irreducible(poly) ? "yes" : "no")
                       << "  disc=m^3*square: " << (disc_check(poly, m) ? "yes" : "no")
                       << "  same-field: " << (same_field_check(m, rep) ? "yes" : "no") << "\n";
        }
    }
    return kExitOk;
}

int cmd_verify(const Int& m, const RunConfig& cfg) {
    validated_factorization(m);
    Report r = classify(m);
    OutputSink sink(cfg.out_path);
    if (cfg.format == OutputFormat::json)
        sink.out() << report_to_json(r, cfg).dump() << "\n";
    else if (cfg.format == OutputFormat::csv)
        sink.out() << csv_header() << "\n" << report_to_csv_row(r) << "\n";
    else
        sink.out() << report_to_text(r);
    return r.failures() == 0 ? kExitOk : kExitInternal;
}

int cmd_scan(const Int& lo, const Int& hi, const RunConfig& cfg, const ScanFilter& filter) {
    if (lo > hi) throw std::invalid_argument("scan: min must not exceed max");
    OutputSink sink(cfg.out_path);
    if (cfg.format == OutputFormat::csv) sink.out() << csv_header() << "\n";
    ScanSummary summary = scan(
        lo, hi, filter,
        [&](const Report& r) {
            if (cfg.format == OutputFormat::json)
                sink.out() << report_to_json(r, cfg).dump() << "\n";
            else if (cfg.format == OutputFormat::csv)
                sink.out() << report_to_csv_row(r) << "\n";
            else if (cfg.verbosity > 0)
                sink.out() << report_to_text(r) << "\n";
            else
                sink.out() << "m=" << dec(r.m) << " branch=" << r.branch
                           << " failures=" << r.failures() << "\n";
        },
        cfg.jobs);
    if (cfg.format == OutputFormat::json)
        sink.out() << summary_to_json(summary).dump() << "\n";
    else
        sink.out() << "# scanned " << summary.scanned << " integers, " << summary.reported
                   << " reports (branch a: " << summary.branch_a << ", branch b: "
                   << summary.branch_b << "), failed checks: " << summary.failed_checks << "\n";
    return summary.failed_checks == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-torsion of real quadratic class groups via sums of two squares"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_version_flag("--version", quadtor::kToolVersion);

    RunConfig cfg;
    std::string format = "text", strictness = "both";
    app.add_option("--seed", cfg.seed, "global RNG seed recorded in reports")
        ->envname("QUADTOR_SEED")
        ->capture_default_str();
    app.add_option("--strictness", strictness, "equivalence strictness: narrow|wide|both")
        ->check(CLI::IsMember({"narrow", "wide", "both"}))
        ->envname("QUADTOR_STRICTNESS")
        ->capture_default_str();
    app.add_option("--format", format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->envname("QUADTOR_FORMAT")
        ->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "worker threads for scan")
        ->check(CLI::PositiveNumber)
        ->envname("QUADTOR_JOBS")
        ->capture_default_str();
    app.add_option("--out", cfg.out_path, "write output to a file instead of stdout")
        ->envname("QUADTOR_OUT");
    app.add_flag("-v,--verbose", cfg.verbosity, "verbose output");

    std::string m_str, lo_str, hi_str;
    auto* sub_reps = app.add_subcommand("reps", "representations m = a^2 + 4b^2");
    sub_reps->add_option("m", m_str, "field parameter")->required();
    auto* sub_unit = app.add_subcommand("unit", "fundamental unit via continued fractions");
    sub_unit->add_option("m", m_str)->required();
    auto* sub_cg = app.add_subcommand("classgroup", "form class group, two-torsion, ambiguous classes");
    sub_cg->add_option("m", m_str)->required();
    auto* sub_ideals = app.add_subcommand("ideals", "the ideals a_j and b_e in normal form");
    sub_ideals->add_option("m", m_str)->required();
    auto* sub_quartic = app.add_subcommand("quartic", "cyclic quartic extensions layer");
    sub_quartic->add_option("m", m_str)->required();
    auto* sub_verify = app.add_subcommand("verify", "full verification report");
    sub_verify->add_option("m", m_str)->required();
    auto* sub_scan = app.add_subcommand("scan", "verify every valid m in a range");
    sub_scan->add_option("min", lo_str)->required();
    sub_scan->add_option("max", hi_str)->required();
    std::string branch_filter;
    unsigned t_filter = 0;
    sub_scan->add_option("--branch", branch_filter, "report only branch a or b")
        ->check(CLI::IsMember({"a", "b"}));
    sub_scan->add_option("--t", t_filter, "report only m with exactly t prime factors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    quadtor::set_global_seed(cfg.seed);
    cfg.strictness = strictness;
    cfg.format = format == "json"  ? OutputFormat::json
                 : format == "csv" ? OutputFormat::csv
                                   : OutputFormat::text;

    try {
        auto parse_int = [](const std::string& s) {
            try {
                return Int(s);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("not an integer: " + s);
            }
        };
        if (*sub_reps) return cmd_reps(parse_int(m_str), cfg);
        if (*sub_unit) return cmd_unit(parse_int(m_str), cfg);
        if (*sub_cg) return cmd_classgroup(parse_int(m_str), cfg);
        if (*sub_ideals) return cmd_ideals(parse_int(m_str), cfg);
        if (*sub_quartic) return cmd_quartic(parse_int(m_str), cfg);
        if (*sub_verify) return cmd_verify(parse_int(m_str), cfg);
        if (*sub_scan) {
            ScanFilter filter;
            if (!branch_filter.empty()) filter.branch = branch_filter[0];
            if (t_filter > 0) filter.exact_t = t_filter;
            return cmd_scan(parse_int(lo_str), parse_int(hi_str), cfg, filter);
        }
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const quadtor::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitInternal;
    }
}
