#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "quadtor/verify.hpp"

using namespace quadtor;

TEST_CASE("classify m = 5: branch a, eta = 2 + sqrt(5) = eps^3") {
    Report r = classify(5);
    REQUIRE(r.valid);
    CHECK(r.branch == 'a');
    CHECK(r.failures() == 0);
    CHECK(r.unit->norm == -1);
    REQUIRE(r.branch_a.eta.has_value());
    CHECK(*r.branch_a.eta == QuadInt(4, 2, 5));
    CHECK(r.branch_a.eta_norm == -1);
    CHECK(r.branch_a.eta_sign == 1);
    CHECK(r.branch_a.eta_exponent == 3);
    CHECK(abs(r.branch_a.alpha->norm()) == 1);
}

TEST_CASE("classify m = 13: branch a through the full pipeline") {
    Report r = classify(13);
    REQUIRE(r.valid);
    CHECK(r.branch == 'a');
    CHECK(r.failures() == 0);
    REQUIRE(r.branch_a.eta.has_value());
    CHECK(r.branch_a.eta->norm() == -1);
}

TEST_CASE("classify m = 65: rep (1,4) principal, rep (7,2) the nontrivial class") {
    Report r = classify(65);
    REQUIRE(r.valid);
    CHECK(r.branch == 'a');
    CHECK(r.failures() == 0);
    CHECK(r.branch_a.principal_rep_index == 0);  // rep (1, 4)
    CHECK(r.reps[0].a == 1);
    CHECK(r.a_ideals[0].principal_wide);
    CHECK_FALSE(r.a_ideals[1].principal_wide);
    CHECK(r.two_torsion_labels.size() == 2);
    REQUIRE(r.branch_a.eta.has_value());
    CHECK(*r.branch_a.eta == QuadInt(16, 2, 65));  // eta = eps = 8 + sqrt(65)
    CHECK(r.branch_a.eta_exponent == 1);
}

TEST_CASE("classify m = 1885: full branch-b record") {
    Report r = classify(1885);
    REQUIRE(r.valid);
    CHECK(r.branch == 'b');
    CHECK(r.failures() == 0);
    CHECK(r.unit->norm == 1);
    CHECK(r.unit->eps == QuadInt(1042, 24, 1885));

    // pairs {a(11,21), a(21,19)} and {a(27,17), a(43,3)}
    REQUIRE(r.branch_b.pairs.size() == 2);
    CHECK(r.branch_b.pairs[0] == std::make_pair(0, 1));
    CHECK(r.branch_b.pairs[1] == std::make_pair(2, 3));

    // no a_j principal; p29 principal, p5 and p13 not
    for (const auto& a : r.a_ideals) CHECK_FALSE(a.principal_wide);
    for (const auto& [e, rec] : r.b_ideals) {
        int weight = e[0] + e[1] + e[2];
        bool expect_principal = (weight == 0) || (weight == 3) ||
                                (e == std::vector<int>{0, 0, 1}) ||
                                (e == std::vector<int>{1, 1, 0});
        CHECK(rec.principal_wide == expect_principal);
    }

    CHECK(r.two_torsion_labels.size() == 4);
    CHECK(r.ambiguous_labels.size() == 2);
    CHECK(r.ambiguous_index == 2);

    REQUIRE(r.branch_b.relation_e.has_value());
    // binary counting order finds {5,13} before {29}; both are genuine relations
    CHECK(*r.branch_b.relation_e == std::vector<int>{1, 1, 0});
    CHECK(abs(r.branch_b.relation_alpha->norm()) == 65);
}

TEST_CASE("classify rejects invalid m as data") {
    Report r = classify(21);
    CHECK_FALSE(r.valid);
    CHECK(r.invalid_reasons.size() == 2);
    Report r4 = classify(4);
    CHECK_FALSE(r4.valid);
}

TEST_CASE("eta_unit example m = 65 with alpha = 1") {
    QuadInt eta = eta_unit({1, 4, 65}, QuadInt::integer(1, 65));
    CHECK(eta == QuadInt(16, 2, 65));
    CHECK(eta.norm() == -1);
    // division must be exact or the input was not a generator
    CHECK_THROWS_AS(eta_unit({7, 2, 65}, QuadInt::integer(2, 65)), internal_error);
}

TEST_CASE("find_ramified_relation") {
    CHECK_FALSE(find_ramified_relation(5).has_value());
    auto rel = find_ramified_relation(1885);
    REQUIRE(rel.has_value());
    CHECK(rel->first == std::vector<int>{1, 1, 0});

    // m = 205 = 5 * 41: presence of a relation must match the unit norm sign
    auto rel205 = find_ramified_relation(205);
    CHECK(rel205.has_value() == (fundamental_unit(205).norm == 1));

    CHECK_THROWS_AS(find_ramified_relation(21), std::invalid_argument);
}

TEST_CASE("scan: single m and frozen valid list up to 100") {
    std::vector<Report> reports;
    ScanSummary s = scan(5, 5, {}, [&](const Report& r) { reports.push_back(r); });
    CHECK(s.reported == 1);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].m == 5);

    std::vector<Int> ms;
    scan(1, 100, {}, [&](const Report& r) { ms.push_back(r.m); });
    CHECK(ms == std::vector<Int>{5, 13, 17, 29, 37, 41, 53, 61, 65, 73, 85, 89, 97});
}

TEST_CASE("scan: zero failures below 2000, branch matches unit norm, t=1 is branch a") {
    ScanSummary s = scan(1, 2000, {}, [&](const Report& r) {
        CHECK(r.failures() == 0);
        CHECK((r.branch == 'a') == (r.unit->norm == -1));
        if (r.factorization.t() == 1) CHECK(r.branch == 'a');
        bool relation = r.branch_b.relation_e.has_value();
        CHECK(relation == (r.unit->norm == 1));
        // genus theory: the narrow two-torsion and the narrow ambiguous
        // subgroup both have order 2^(t-1), whatever the unit norm
        int expected = 1 << (r.factorization.t() - 1);
        CHECK(r.two_torsion_narrow_size == expected);
        CHECK(r.ambiguous_narrow_size == expected);
        // wide classes fold narrow ones in pairs exactly when norm(eps) = +1
        if (r.unit->norm == 1)
            CHECK(r.narrow_class_count == 2 * r.wide_class_count);
        else
            CHECK(r.narrow_class_count == r.wide_class_count);
    });
    CHECK(s.failed_checks == 0);
    CHECK(s.branch_a + s.branch_b == s.reported);
    CHECK(s.branch_b > 0);
}

TEST_CASE("scan: filters") {
    ScanSummary s = scan(1, 500, {.branch = 'b', .exact_t = {}},
                         [&](const Report& r) { CHECK(r.branch == 'b'); });
    CHECK(s.reported == s.branch_b);
    ScanSummary s2 = scan(1, 500, {.branch = {}, .exact_t = 2},
                          [&](const Report& r) { CHECK(r.factorization.t() == 2); });
    CHECK(s2.reported > 0);
    CHECK_THROWS_AS(scan(10, 5, {}, [](const Report&) {}), std::invalid_argument);
}

TEST_CASE("classify scales past the sweep range") {
    // first parameter with five prime factors
    Report r5 = classify(1185665);
    REQUIRE(r5.valid);
    CHECK(r5.factorization.t() == 5);
    CHECK(r5.branch == 'a');
    CHECK(r5.failures() == 0);
    CHECK(r5.reps.size() == 16);
    CHECK(r5.two_torsion_labels.size() == 16);
    CHECK(r5.ambiguous_labels.size() == 16);

    // two primes whose relation generator runs to ~80 digits
    Report r2 = classify(1185445);
    REQUIRE(r2.valid);
    CHECK(r2.factorization.t() == 2);
    CHECK(r2.branch == 'b');
    CHECK(r2.failures() == 0);
    REQUIRE(r2.branch_b.relation_alpha.has_value());
    CHECK(dec(abs(r2.branch_b.relation_alpha->x)).size() > 70);
}

TEST_CASE("scan: parallel evaluation emits identical reports in order") {
    std::vector<std::string> serial, parallel;
    scan(1, 600, {}, [&](const Report& r) { serial.push_back(dec(r.m)); });
    scan(1, 600, {}, [&](const Report& r) { parallel.push_back(dec(r.m)); }, 4);
    CHECK(serial == parallel);
}
