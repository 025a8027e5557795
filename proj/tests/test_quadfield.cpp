#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "quadtor/contfrac.hpp"
#include "quadtor/quadint.hpp"

using namespace quadtor;

TEST_CASE("QuadInt basics") {
    QuadInt one = QuadInt::integer(1, 5);
    CHECK(one.mul(one) == one);
    CHECK(QuadInt(1, 1, 5).norm() == -1);  // (1+sqrt(5))/2
    CHECK(QuadInt(1042, 24, 1885).norm() == 1);
    CHECK(QuadInt(4, 2, 5).norm() == -1);  // 2 + sqrt(5)
    CHECK_THROWS_AS(QuadInt(1, 0, 5), std::invalid_argument);  // parity
    CHECK_THROWS_AS(QuadInt(2, 0, 7), std::invalid_argument);  // 7 != 1 mod 4
    CHECK_THROWS_AS(QuadInt(2, 0, 5).mul(QuadInt(2, 0, 13)), std::invalid_argument);
}

TEST_CASE("QuadInt ring properties, random") {
    SplitMix64 rng(global_seed() ^ 0xc3);
    const Int m = 1885;
    auto rnd = [&] {
        Int x = Int(std::int64_t(rng.below(400)) - 200);
        Int y = Int(std::int64_t(rng.below(400)) - 200);
        if (mod_euclid(x - y, 2) != 0) x += 1;
        return QuadInt(x, y, m);
    };
    for (int i = 0; i < 500; ++i) {
        QuadInt a = rnd(), b = rnd();
        CHECK(a.mul(b) == b.mul(a));
        CHECK(a.mul(b).norm() == a.norm() * b.norm());
        CHECK(a.conj().conj() == a);
        // norm equals alpha * conj(alpha), projected to the rational part
        QuadInt prod = a.mul(a.conj());
        CHECK(prod.y == 0);
        CHECK(prod.x == 2 * a.norm());
        if (!b.is_zero()) {
            auto q = exact_div(a.mul(b), b);
            REQUIRE(q.has_value());
            CHECK(*q == a);
        }
    }
}

TEST_CASE("QuadInt exact sign and comparison") {
    QuadInt sqrt5 = QuadInt::sqrt_m(5);
    CHECK(sqrt5.sign() > 0);
    CHECK(QuadInt(4, -2, 5).sign() < 0);   // 2 - sqrt(5)
    CHECK(QuadInt(6, -2, 5).sign() > 0);   // 3 - sqrt(5)
    CHECK(QuadInt(-6, 2, 5).sign() < 0);
    CHECK(QuadInt(0, 0, 5).sign() == 0);
    CHECK(QuadInt(1, 1, 5).cmp(QuadInt::integer(1, 5)) > 0);   // golden ratio > 1
    CHECK(QuadInt(1, 1, 5).cmp(QuadInt::integer(2, 5)) < 0);
}

TEST_CASE("fundamental_unit: frozen values") {
    FundamentalUnit u5 = fundamental_unit(5);
    CHECK(u5.eps == QuadInt(1, 1, 5));
    CHECK(u5.norm == -1);
    CHECK(u5.cycle.period() == 1);

    FundamentalUnit u13 = fundamental_unit(13);
    CHECK(u13.eps == QuadInt(3, 1, 13));
    CHECK(u13.norm == -1);

    FundamentalUnit u65 = fundamental_unit(65);
    CHECK(u65.eps == QuadInt(16, 2, 65));  // 8 + sqrt(65)
    CHECK(u65.norm == -1);

    // squaring 2*sqrt(65) + 3*sqrt(29) gives 521 + 12*sqrt(1885)
    FundamentalUnit u1885 = fundamental_unit(1885);
    CHECK(u1885.eps == QuadInt(1042, 24, 1885));
    CHECK(u1885.norm == 1);

    CHECK_THROWS_AS(fundamental_unit(7), std::invalid_argument);
    CHECK_THROWS_AS(fundamental_unit(9), std::invalid_argument);
}

TEST_CASE("fundamental_unit: brute-force oracle for valid m < 200") {
    for (const Int& m : oracle::valid_m_in(5, 200)) {
        FundamentalUnit fu = fundamental_unit(m);
        auto sol = oracle::oracle_min_unit((std::uint32_t)m.get_ui());
        REQUIRE(sol.has_value());
        CHECK(fu.eps.x == Int(sol->x));
        CHECK(fu.eps.y == Int(sol->y));
        CHECK(fu.norm == sol->norm_sign);
        CHECK(fu.norm == (fu.cycle.period() % 2 == 0 ? 1 : -1));
        CHECK(abs(fu.eps.norm()) == 1);
    }
}

TEST_CASE("solve_unit_equation") {
    FundamentalUnit fu = fundamental_unit(5);
    QuadInt one = QuadInt::integer(1, 5);
    auto r = solve_unit_equation(one, fu);
    REQUIRE(r.has_value());
    CHECK(r->first == 1);
    CHECK(r->second == 0);

    auto r2 = solve_unit_equation(fu.eps.mul(fu.eps), fu);
    REQUIRE(r2.has_value());
    CHECK(r2->first == 1);
    CHECK(r2->second == 2);

    // ((1+sqrt(5))/2)^3 = 2 + sqrt(5)
    auto r3 = solve_unit_equation(QuadInt(4, 2, 5), fu);
    REQUIRE(r3.has_value());
    CHECK(r3->first == 1);
    CHECK(r3->second == 3);

    CHECK_FALSE(solve_unit_equation(QuadInt(4, 0, 5), fu).has_value());  // 2 is not a unit
}

TEST_CASE("solve_unit_equation: random signed powers") {
    SplitMix64 rng(global_seed() ^ 0xd4);
    for (const Int& m : {Int(5), Int(13), Int(65), Int(1885)}) {
        FundamentalUnit fu = fundamental_unit(m);
        for (int i = 0; i < 20; ++i) {
            long k = long(rng.below(9)) - 4;
            int sign = rng.below(2) ? 1 : -1;
            QuadInt u = fu.eps.pow(std::abs(k));
            if (k < 0) {
                QuadInt inv = fu.eps.conj();  // 1/eps = conj(eps)/norm(eps)
                if (fu.eps.norm() < 0) inv = inv.neg();
                u = inv.pow(std::abs(k));
            }
            if (sign < 0) u = u.neg();
            auto r = solve_unit_equation(u, fu);
            REQUIRE(r.has_value());
            CHECK(r->first == sign);
            CHECK(r->second == k);
        }
    }
}

TEST_CASE("no unit strictly between 1 and eps for m < 200") {
    // equivalent to minimality of the oracle solution: any smaller unit would
    // be a smaller solution of x^2 - m y^2 = +-4
    for (const Int& m : oracle::valid_m_in(5, 200)) {
        FundamentalUnit fu = fundamental_unit(m);
        for (Int y = 1; y < fu.eps.y; ++y) {
            for (int sgn : {-1, 1}) {
                Int x2 = m * y * y + 4 * sgn;
                auto x = is_perfect_square(x2);
                if (x) {
                    QuadInt candidate(*x, y, m);
                    CHECK(candidate.cmp(fu.eps) > 0);
                }
            }
        }
    }
}
