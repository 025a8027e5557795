#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "quadtor/classgroup.hpp"
#include "quadtor/contfrac.hpp"
#include "quadtor/ideal.hpp"
#include "quadtor/quartic.hpp"
#include "quadtor/reps.hpp"

namespace quadtor {

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

struct IdealRecord {
    IdealNF ideal;
    QForm form;
    ClassLabel label_narrow;
    ClassLabel label_wide;
    int narrow_idx;
    int wide_idx;
    bool principal_wide;

    IdealRecord(IdealNF i, QForm f, ClassLabel ln, ClassLabel lw, int ni, int wi, bool pr)
        : ideal(std::move(i)), form(std::move(f)), label_narrow(std::move(ln)),
          label_wide(std::move(lw)), narrow_idx(ni), wide_idx(wi), principal_wide(pr) {}
};

struct BranchA {
    int principal_rep_index = -1;
    std::optional<QuadInt> alpha;
    std::optional<QuadInt> eta;
    Int eta_norm = 0;
    int eta_sign = 0;
    long eta_exponent = 0;
};

struct BranchB {
    std::vector<std::pair<int, int>> pairs;  // indices into reps, each rep in one pair
    std::optional<std::vector<int>> relation_e;
    std::optional<QuadInt> relation_alpha;
};

// Everything classify establishes for one m.  Failed assertions are data in
// `checks`, never exceptions: a scan is an instrument and must finish.
struct Report {
    Int m;
    Factorization factorization;
    bool valid = false;
    std::vector<std::string> invalid_reasons;

    std::optional<FundamentalUnit> unit;
    std::vector<TwoSquares> reps;
    std::vector<IdealRecord> a_ideals;
    std::vector<std::pair<std::vector<int>, IdealRecord>> b_ideals;  // (e, record)

    int narrow_class_count = 0;
    int wide_class_count = 0;
    std::vector<QForm> two_torsion_labels;      // wide sense
    std::vector<QForm> ambiguous_labels;        // wide sense
    int two_torsion_narrow_size = 0;
    int ambiguous_narrow_size = 0;
    int ambiguous_index = 0;  // [Cl(K)[2] : C]

    char branch = '?';
    BranchA branch_a;
    BranchB branch_b;

    std::vector<Check> checks;
    double elapsed_ms = 0.0;

    int failures() const {
        int n = 0;
        for (const auto& c : checks)
            if (!c.pass) ++n;
        return n;
    }
};

// (2b + sqrt(m)) / alpha^2; exact by construction when (alpha) = ideal_a(rep).
inline QuadInt eta_unit(const TwoSquares& rep, const QuadInt& alpha) {
    QuadInt numerator(4 * rep.b, 2, rep.m);
    auto eta = exact_div(numerator, alpha.mul(alpha));
    if (!eta) throw internal_error("eta_unit: (2b + sqrt(m)) not divisible by alpha^2");
    if (!eta->is_unit()) throw internal_error("eta_unit: quotient is not a unit");
    return *eta;
}

// Nontrivial principal product of ramified primes, with generator; exists
// iff the fundamental unit has norm +1.  Vectors are scanned in binary
// counting order, so the returned relation is deterministic.
inline std::optional<std::pair<std::vector<int>, QuadInt>> find_ramified_relation(
    const Factorization& f, const ClassData& cd) {
    const unsigned t = f.t();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << t); ++mask) {
        std::vector<int> e(t);
        for (unsigned j = 0; j < t; ++j) e[j] = (mask >> j) & 1;
        IdealNF b = ideal_b(f, e);
        if (!cd.wide_trivial(cd.narrow_class_of(to_form(b)))) continue;
        auto alpha = principal_generator(to_form(b));
        if (!alpha) throw internal_error("find_ramified_relation: class trivial but no generator");
        return std::make_pair(e, *alpha);
    }
    return std::nullopt;
}

inline std::optional<std::pair<std::vector<int>, QuadInt>> find_ramified_relation(const Int& m) {
    Factorization f = factor(m);
    if (!is_valid_m(f)) throw std::invalid_argument("find_ramified_relation: invalid m");
    ClassData cd(m);
    return find_ramified_relation(f, cd);
}

namespace detail {

inline void record(Report& rep, const std::string& name, bool pass, const std::string& detail = "") {
    rep.checks.push_back({name, pass, detail});
}

inline IdealRecord make_record(const IdealNF& ideal, const ClassData& cd) {
    QForm form = to_form(ideal);
    int ni = cd.narrow_class_of(form);
    int wi = cd.wide_index_of(ni);
    return IdealRecord(ideal, form, cd.label(ni, Strictness::narrow),
                       cd.label(ni, Strictness::wide), ni, wi, cd.wide_trivial(ni));
}

}  // namespace detail

// Verification harness for a single m: build the unit, the representations, the
// ideals and their classes, then run the branch checks dictated by the sign
// of the unit norm.
inline Report classify(const Int& m) {
    auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.m = m;
    if (m >= 1) rep.factorization = factor(m);
    rep.invalid_reasons = m >= 1 ? validate_m(rep.factorization)
                                 : std::vector<std::string>{"m must be positive"};
    rep.valid = rep.invalid_reasons.empty();
    if (!rep.valid) return rep;

    const Factorization& f = rep.factorization;
    const unsigned t = f.t();

    rep.unit = fundamental_unit(m);
    const int norm_eps = rep.unit->norm;
    rep.branch = norm_eps < 0 ? 'a' : 'b';

    rep.reps = enumerate_reps(f);
    detail::record(rep, "reps_count_is_2^(t-1)",
                   rep.reps.size() == (std::size_t(1) << (t - 1)),
                   std::to_string(rep.reps.size()) + " representations");

    ClassData cd(m);
    rep.narrow_class_count = cd.narrow_class_count();
    rep.wide_class_count = cd.wide_class_count();

    // ideals a_j and the squares (2b_j + sqrt(m))
    bool squares_ok = true;
    for (const auto& r : rep.reps) {
        rep.a_ideals.push_back(detail::make_record(ideal_a(r), cd));
        squares_ok = squares_ok && verify_square_principal(r);
    }
    detail::record(rep, "a_ideal_squares_principal", squares_ok);

    // ideals b_e over all 2^t exponent vectors
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << t); ++mask) {
        std::vector<int> e(t);
        for (unsigned j = 0; j < t; ++j) e[j] = (mask >> j) & 1;
        rep.b_ideals.emplace_back(e, detail::make_record(ideal_b(f, e), cd));
    }

    // two-torsion and the ambiguous subgroup, wide sense
    std::vector<int> tors = cd.two_torsion_wide();
    for (int idx : tors) rep.two_torsion_labels.push_back(cd.wide_label(idx));
    std::vector<int> ramified_reps;
    for (const auto& pp : f.factors)
        ramified_reps.push_back(cd.wide_index_of(cd.narrow_class_of(to_form(ramified_prime(m, pp.p)))));
    std::vector<int> amb = cd.wide_subgroup(ramified_reps);
    for (int idx : amb) rep.ambiguous_labels.push_back(cd.wide_label(idx));
    rep.two_torsion_narrow_size = static_cast<int>(cd.two_torsion_narrow().size());
    // narrow ambiguous subgroup size, for the dual record
    {
        int count = 0;
        std::vector<bool> seen(cd.narrow_class_count(), false);
        std::vector<int> frontier{cd.principal_index()};
        seen[cd.principal_index()] = true;
        count = 1;
        std::vector<int> narrow_gens;
        for (const auto& pp : f.factors)
            narrow_gens.push_back(cd.narrow_class_of(to_form(ramified_prime(m, pp.p))));
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int x : frontier)
                for (int g : narrow_gens) {
                    int prod = cd.compose_narrow(x, g);
                    if (!seen[prod]) {
                        seen[prod] = true;
                        ++count;
                        next.push_back(prod);
                    }
                }
            frontier = std::move(next);
        }
        rep.ambiguous_narrow_size = count;
    }

    detail::record(rep, "two_torsion_size_is_2^(t-1)",
                   tors.size() == (std::size_t(1) << (t - 1)),
                   std::to_string(tors.size()) + " classes");
    bool amb_in_tors = true;
    for (int idx : amb) {
        bool found = false;
        for (int x : tors)
            if (cd.wide_index_of(x) == idx) found = true;
        amb_in_tors = amb_in_tors && found;
    }
    detail::record(rep, "ambiguous_subgroup_inside_two_torsion", amb_in_tors);
    rep.ambiguous_index = amb.empty() ? 0 : static_cast<int>(tors.size() / amb.size());

    // a nontrivial ramified relation exists iff norm(eps) = +1
    auto relation = find_ramified_relation(f, cd);
    detail::record(rep, "relation_exists_iff_norm_plus_one",
                   relation.has_value() == (norm_eps > 0));
    if (relation) {
        rep.branch_b.relation_e = relation->first;
        rep.branch_b.relation_alpha = relation->second;
        // alpha^2 / prod(p^e) must be a unit of norm +1
        Int m1 = 1;
        for (unsigned j = 0; j < t; ++j)
            if (relation->first[j]) m1 *= f.factors[j].p;
        auto unit = exact_div(relation->second.mul(relation->second), QuadInt::integer(m1, m));
        bool ok = unit.has_value() && unit->is_unit() && unit->norm() == 1;
        detail::record(rep, "relation_alpha_squared_over_product_is_norm_one_unit", ok);
    }

    // classes hit by the ramified ideals, counted as complement pairs
    // ({e, complement(e)} always lands in one class since prod(p_j) = (sqrt(m)))
    std::vector<int> b_class_of(rep.b_ideals.size());
    for (size_t i = 0; i < rep.b_ideals.size(); ++i) b_class_of[i] = rep.b_ideals[i].second.wide_idx;
    {
        bool complement_pairs_agree = true;
        for (size_t i = 0; i < rep.b_ideals.size(); ++i) {
            size_t comp = rep.b_ideals.size() - 1 - i;  // bitwise complement in counting order
            complement_pairs_agree =
                complement_pairs_agree && b_class_of[i] == b_class_of[comp];
        }
        detail::record(rep, "b_complement_pairs_equivalent", complement_pairs_agree);
    }

    auto count_pairs_hitting = [&](int wide_idx) {
        int n = 0;
        for (size_t i = 0; i < rep.b_ideals.size(); ++i)
            if (b_class_of[i] == wide_idx) ++n;
        return n / 2;  // vectors come in complement pairs
    };

    if (rep.branch == 'a') {
        // [a_j] pairwise distinct and bijective onto the two-torsion classes
        bool distinct = true;
        for (size_t i = 0; i < rep.a_ideals.size(); ++i)
            for (size_t j = i + 1; j < rep.a_ideals.size(); ++j)
                if (rep.a_ideals[i].wide_idx == rep.a_ideals[j].wide_idx) distinct = false;
        detail::record(rep, "a_classes_pairwise_distinct", distinct);

        bool biject = rep.a_ideals.size() == tors.size();
        for (int x : tors) {
            int hits = 0;
            for (const auto& a : rep.a_ideals)
                if (a.wide_idx == cd.wide_index_of(x)) ++hits;
            if (hits != 1) biject = false;
        }
        detail::record(rep, "a_classes_biject_onto_two_torsion", biject);

        detail::record(rep, "ambiguous_equals_two_torsion", amb.size() == tors.size());

        // each a_j equivalent to exactly one complement pair of ramified ideals
        bool unique_b = true;
        for (const auto& a : rep.a_ideals)
            if (count_pairs_hitting(a.wide_idx) != 1) unique_b = false;
        detail::record(rep, "each_a_matches_one_ramified_pair", unique_b);

        int principal_count = 0;
        for (size_t i = 0; i < rep.a_ideals.size(); ++i)
            if (rep.a_ideals[i].principal_wide) {
                ++principal_count;
                rep.branch_a.principal_rep_index = static_cast<int>(i);
            }
        detail::record(rep, "exactly_one_a_principal", principal_count == 1,
                       std::to_string(principal_count) + " principal");

        if (principal_count == 1) {
            const auto& r = rep.reps[rep.branch_a.principal_rep_index];
            auto alpha = principal_generator(rep.a_ideals[rep.branch_a.principal_rep_index].form);
            if (!alpha) {
                detail::record(rep, "eta_norm_minus_one", false, "generator extraction failed");
            } else {
                rep.branch_a.alpha = *alpha;
                QuadInt eta = eta_unit(r, *alpha);
                rep.branch_a.eta = eta;
                rep.branch_a.eta_norm = eta.norm();
                detail::record(rep, "eta_norm_minus_one", eta.norm() == -1);
                auto power = solve_unit_equation(eta, *rep.unit);
                bool odd_power = power.has_value() && power->second % 2 != 0;
                if (power) {
                    rep.branch_a.eta_sign = power->first;
                    rep.branch_a.eta_exponent = power->second;
                }
                detail::record(rep, "eta_is_odd_power_of_eps", odd_power);
            }
        }
    } else {
        // no a_j equivalent to any ramified ideal
        bool disjoint = true;
        for (const auto& a : rep.a_ideals)
            for (int bc : b_class_of)
                if (a.wide_idx == bc) disjoint = false;
        detail::record(rep, "a_classes_disjoint_from_ramified_classes", disjoint);

        detail::record(rep, "t_at_least_2_in_branch_b", t >= 2,
                       "norm +1 cannot occur for prime m");

        // a_j classes pair up: 2^(t-2) classes, each hit exactly twice
        std::vector<int> hit_counts;
        bool double_cover = true;
        for (size_t i = 0; i < rep.a_ideals.size(); ++i) {
            int hits = 0;
            for (size_t j = 0; j < rep.a_ideals.size(); ++j)
                if (rep.a_ideals[i].wide_idx == rep.a_ideals[j].wide_idx) ++hits;
            if (hits != 2) double_cover = false;
            for (size_t j = i + 1; j < rep.a_ideals.size(); ++j)
                if (rep.a_ideals[i].wide_idx == rep.a_ideals[j].wide_idx)
                    rep.branch_b.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
        detail::record(rep, "a_classes_paired_twice_each", double_cover);

        detail::record(rep, "ambiguous_index_two", !amb.empty() && tors.size() == 2 * amb.size(),
                       "index " + std::to_string(rep.ambiguous_index));

        // each class of C is hit by exactly two complement pairs of b_e
        bool c_cover = true;
        for (int idx : amb)
            if (count_pairs_hitting(idx) != 2) c_cover = false;
        detail::record(rep, "each_C_class_hit_by_two_ramified_pairs", c_cover);

        // the a_j cover Cl[2] \ C exactly (surjectivity is checked, not assumed)
        bool complement_covered = true;
        for (int x : tors) {
            int widx = cd.wide_index_of(x);
            bool in_c = false;
            for (int cidx : amb)
                if (cidx == widx) in_c = true;
            int hits = 0;
            for (const auto& a : rep.a_ideals)
                if (a.wide_idx == widx) ++hits;
            if (in_c && hits != 0) complement_covered = false;
            if (!in_c && hits != 2) complement_covered = false;
        }
        detail::record(rep, "a_classes_cover_two_torsion_minus_C", complement_covered);

        detail::record(rep, "ramified_relation_found", relation.has_value());
    }

    // the branch itself re-verifies against the unit norm parity invariant
    detail::record(rep, "unit_norm_matches_cf_period_parity",
                   (rep.unit->cycle.period() % 2 == 0) == (norm_eps > 0));

    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rep;
}

struct ScanFilter {
    std::optional<char> branch;        // only reports whose branch matches
    std::optional<unsigned> exact_t;   // only m with this number of prime factors
};

struct ScanSummary {
    Int m_min = 0, m_max = 0;
    long scanned = 0;       // integers inspected
    long valid = 0;         // valid m encountered (before filters)
    long reported = 0;      // reports emitted
    long branch_a = 0;
    long branch_b = 0;
    long failed_checks = 0;
    long failed_m = 0;      // m with at least one failed check
};

// Classify every valid m in [m_min, m_max] in ascending order.  `jobs > 1`
// evaluates distinct m on worker threads; emission order stays ascending and
// results are identical to a single-threaded run.
inline ScanSummary scan(const Int& m_min, const Int& m_max, const ScanFilter& filter,
                        const std::function<void(const Report&)>& emit, unsigned jobs = 1) {
    if (m_min > m_max) throw std::invalid_argument("scan: empty range");
    ScanSummary summary;
    summary.m_min = m_min;
    summary.m_max = m_max;

    std::vector<Int> targets;
    for (Int m = m_min; m <= m_max; ++m) {
        ++summary.scanned;
        if (m < 5 || mod_euclid(m, 4) != 1) continue;
        Factorization f = factor(m);
        if (!is_valid_m(f)) continue;
        ++summary.valid;
        if (filter.exact_t && f.t() != *filter.exact_t) continue;
        targets.push_back(m);
    }

    std::vector<Report> results(targets.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < targets.size(); ++i) results[i] = classify(targets[i]);
    } else {
        std::atomic<size_t> cursor{0};
        auto worker = [&] {
            for (;;) {
                size_t i = cursor.fetch_add(1);
                if (i >= targets.size()) break;
                results[i] = classify(targets[i]);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& r : results) {
        if (filter.branch && r.branch != *filter.branch) continue;
        ++summary.reported;
        if (r.branch == 'a') ++summary.branch_a;
        if (r.branch == 'b') ++summary.branch_b;
        int fails = r.failures();
        summary.failed_checks += fails;
        if (fails > 0) ++summary.failed_m;
        emit(r);
    }
    return summary;
}

}  // namespace quadtor
