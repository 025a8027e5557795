#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "quadtor/quartic.hpp"

using namespace quadtor;

TEST_CASE("enumerate_quartic_characters") {
    auto t1 = enumerate_quartic_characters(1);
    REQUIRE(t1.size() == 1);
    CHECK(t1[0].first == CharVector{1});
    CHECK(t1[0].second == CharVector{3});

    auto t2 = enumerate_quartic_characters(2);
    REQUIRE(t2.size() == 2);
    CHECK(t2[0].first == CharVector{1, 1});
    CHECK(t2[0].second == CharVector{3, 3});
    CHECK(t2[1].first == CharVector{1, 3});
    CHECK(t2[1].second == CharVector{3, 1});

    CHECK(enumerate_quartic_characters(3).size() == 4);
    for (unsigned t = 1; t <= 10; ++t) {
        auto pairs = enumerate_quartic_characters(t);
        CHECK(pairs.size() == (std::size_t(1) << (t - 1)));
        for (const auto& [e, e3] : pairs) {
            CHECK(character_order(e) == 4);
            CHECK(character_order(e3) == 4);
            for (unsigned j = 0; j < t; ++j) {
                CHECK(e[j] % 2 == 1);
                CHECK((e[j] + e3[j]) % 4 == 0);
            }
        }
    }
    CHECK_THROWS_AS(enumerate_quartic_characters(0), std::invalid_argument);
}

TEST_CASE("min_poly: substitution values") {
    QuarticPoly p5 = min_poly(5, {1, 1, 5});
    CHECK(p5.p() == -10);
    CHECK(p5.q() == 5);

    QuarticPoly p1885 = min_poly(1885, {43, 3, 1885});
    CHECK(p1885.p() == -3770);
    CHECK(p1885.q() == Int(1849) * 1885);

    CHECK_THROWS_AS(min_poly(5, {1, 1, 13}), std::invalid_argument);
    CHECK_THROWS_AS(min_poly(65, {3, 3, 65}), std::invalid_argument);
}

TEST_CASE("irreducibility for all reps of valid m < 3000") {
    for (const Int& m : oracle::valid_m_in(5, 3000))
        for (const auto& rep : enumerate_reps(factor(m)))
            CHECK(quartic_irreducible(min_poly(m, rep)));
}

TEST_CASE("resultant engine vs closed-form discriminant") {
    // disc(x^4 + p x^2 + q) = 16 q (p^2 - 4q)^2
    SplitMix64 rng(global_seed() ^ 0x39);
    for (int i = 0; i < 300; ++i) {
        Int p = Int(std::int64_t(rng.below(4001)) - 2000);
        Int q = Int(std::int64_t(rng.below(4001)) - 2000);
        CHECK(quartic_poly_discriminant(p, q) == 16 * q * (p * p - 4 * q) * (p * p - 4 * q));
    }
    // and for genuine minimal polynomials: disc = m^3 * (64 a b^2)^2
    for (const Int& m : oracle::valid_m_in(5, 500)) {
        for (const auto& rep : enumerate_reps(factor(m))) {
            QuarticPoly poly = min_poly(m, rep);
            Int expected = m * m * m * 4096 * rep.a * rep.a * rep.b * rep.b * rep.b * rep.b;
            CHECK(quartic_poly_discriminant(poly.p(), poly.q()) == expected);
        }
    }
}

TEST_CASE("resultant basics") {
    // res(x^2 - 1, x - 2) = f(2) = 3 for monic f with deg g = 1
    CHECK(resultant({1, 0, -1}, {1, -2}) == 3);
    // common root makes the resultant vanish
    CHECK(resultant({1, 0, -1}, {1, -1}) == 0);
}

TEST_CASE("disc_check") {
    CHECK(disc_check(min_poly(5, {1, 1, 5}), 5));
    CHECK(disc_check(min_poly(65, {7, 2, 65}), 65));
    for (const Int& m : oracle::valid_m_in(5, 1000))
        for (const auto& rep : enumerate_reps(factor(m)))
            CHECK(disc_check(min_poly(m, rep), m));

    // negative control: x^4 - 2mx^2 + 2m has discriminant 2 * m^3 * square,
    // which fails the m^3-times-square criterion
    for (const Int& m : {Int(5), Int(13), Int(65)})
        CHECK_FALSE(disc_is_m3_times_square(quartic_poly_discriminant(-2 * m, 2 * m), m));
    // degenerate: zero discriminant
    CHECK_FALSE(disc_is_m3_times_square(0, 5));
}

TEST_CASE("legendre identity: specializations and random satisfying tuples") {
    // the paper's specialization (A,B,C,x,y,z) = (m, 1, 1, 1, a, 2b)
    for (const Int& m : oracle::valid_m_in(5, 500))
        for (const auto& rep : enumerate_reps(factor(m)))
            CHECK(legendre_identity_check(m, 1, 1, 1, rep.a, 2 * rep.b) == IdentityResult::holds);

    CHECK(legendre_identity_check(1, 1, 0, 1, 1, 0) == IdentityResult::holds);

    // violated constraint reported distinctly
    CHECK(legendre_identity_check(5, 1, 1, 1, 1, 1) == IdentityResult::constraint_unsatisfied);
    CHECK(legendre_identity_check(-1, 1, 1, 1, 1, 0) == IdentityResult::constraint_unsatisfied);

    // random satisfying tuples via A = B y^2 + C z^2, x = 1
    SplitMix64 rng(global_seed() ^ 0x4a);
    for (int i = 0; i < 300; ++i) {
        Int B = Int(rng.below(50)), C = Int(rng.below(50));
        Int y = Int(rng.below(30)), z = Int(rng.below(30));
        Int A = B * y * y + C * z * z;
        CHECK(legendre_identity_check(A, B, C, 1, y, z) == IdentityResult::holds);
    }
}

TEST_CASE("same_field_check") {
    // m = 5, rep (1,1): 2(sqrt5+1)(sqrt5+2) = 14 + 6 sqrt5 = (sqrt5+3)^2
    CHECK(same_field_check(5, {1, 1, 5}));
    for (const auto& rep : enumerate_reps(factor(1885))) CHECK(same_field_check(1885, rep));
    SplitMix64 rng(global_seed() ^ 0x5b);
    auto pool = oracle::valid_m_in(5, 100000);
    for (int i = 0; i < 50; ++i) {
        const Int& m = pool[rng.below(pool.size())];
        for (const auto& rep : enumerate_reps(factor(m))) CHECK(same_field_check(m, rep));
    }
    CHECK_THROWS_AS(same_field_check(5, {1, 1, 13}), std::invalid_argument);
}

TEST_CASE("RadExpr multiplication reduces radicals correctly") {
    // (sqrt A)^2 = A, cross terms land on the right basis element
    Int A = 7, B = 3, C = 2;
    RadExpr a = RadExpr::term(A, B, C, 0b001, 1);
    RadExpr prod = a.mul(a);
    CHECK(prod.coeff[0] == 7);
    for (int i = 1; i < 8; ++i) CHECK(prod.coeff[i] == 0);
    RadExpr ab = RadExpr::term(A, B, C, 0b001, 2).mul(RadExpr::term(A, B, C, 0b010, 3));
    CHECK(ab.coeff[0b011] == 6);
}
