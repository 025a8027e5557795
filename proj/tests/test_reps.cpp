#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "quadtor/reps.hpp"

using namespace quadtor;

TEST_CASE("GaussInt ring laws") {
    SplitMix64 rng(global_seed() ^ 0xb2);
    auto rnd = [&] {
        return GaussInt{Int(std::int64_t(rng.below(2001)) - 1000),
                        Int(std::int64_t(rng.below(2001)) - 1000)};
    };
    for (int i = 0; i < 500; ++i) {
        GaussInt a = rnd(), b = rnd(), c = rnd();
        CHECK(a.mul(b) == b.mul(a));
        CHECK(a.mul(b.mul(c)) == a.mul(b).mul(c));
        CHECK(a.mul(b).norm() == a.norm() * b.norm());
        CHECK(a.conj().conj() == a);
    }
}

TEST_CASE("enumerate_reps: m = 1885") {
    auto reps = enumerate_reps(factor(1885));
    REQUIRE(reps.size() == 4);
    // 1885 = 6^2+43^2 = 11^2+42^2 = 21^2+38^2 = 27^2+34^2; normalizing so
    // the odd member is a gives the (a, b) pairs below
    CHECK(reps[0].a == 11);
    CHECK(reps[0].b == 21);
    CHECK(reps[1].a == 21);
    CHECK(reps[1].b == 19);
    CHECK(reps[2].a == 27);
    CHECK(reps[2].b == 17);
    CHECK(reps[3].a == 43);
    CHECK(reps[3].b == 3);
}

TEST_CASE("enumerate_reps: small cases") {
    auto r5 = enumerate_reps(factor(5));
    REQUIRE(r5.size() == 1);
    CHECK(r5[0].a == 1);
    CHECK(r5[0].b == 1);

    auto r65 = enumerate_reps(factor(65));
    REQUIRE(r65.size() == 2);
    CHECK(r65[0].a == 1);
    CHECK(r65[0].b == 4);
    CHECK(r65[1].a == 7);
    CHECK(r65[1].b == 2);

    CHECK_THROWS_AS(enumerate_reps(factor(21)), std::invalid_argument);
}

TEST_CASE("enumerate_reps: count and oracle equivalence for valid m < 20000") {
    for (const Int& m : oracle::valid_m_in(5, 20000)) {
        Factorization f = factor(m);
        auto reps = enumerate_reps(f);
        CHECK(reps.size() == (std::size_t(1) << (f.t() - 1)));
        auto expected = oracle::exhaustive_two_squares(m);
        REQUIRE(reps.size() == expected.size());
        for (size_t i = 0; i < reps.size(); ++i) {
            CHECK(reps[i].a == expected[i].first);
            CHECK(reps[i].b == expected[i].second);
            CHECK(gcd(reps[i].a, reps[i].b) == 1);
        }
        for (size_t i = 0; i + 1 < reps.size(); ++i) CHECK(reps[i].a < reps[i + 1].a);
    }
}
