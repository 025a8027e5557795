#pragma once

#include <algorithm>
#include <vector>

#include "quadtor/arith.hpp"
#include "quadtor/integer.hpp"

namespace quadtor {

struct GaussInt {
    Int re, im;

    GaussInt mul(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussInt conj() const { return {re, -im}; }
    Int norm() const { return re * re + im * im; }

    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
};

// One representation m = a^2 + 4b^2 with a odd, a,b > 0.
struct TwoSquares {
    Int a, b, m;

    bool operator==(const TwoSquares& o) const { return a == o.a && b == o.b && m == o.m; }
};

// All essentially different representations m = a^2 + 4b^2, built by
// multiplying the Gaussian factors c_j + 2d_j*i of each prime under every
// conjugation pattern.  The first factor stays unconjugated, which quotients
// out global conjugation and leaves exactly 2^(t-1) products.
inline std::vector<TwoSquares> enumerate_reps(const Factorization& f) {
    auto reasons = validate_m(f);
    if (!reasons.empty()) throw std::invalid_argument("enumerate_reps: " + reasons.front());
    const Int m = f.n;
    const unsigned t = f.t();

    std::vector<GaussInt> pi;
    pi.reserve(t);
    for (const auto& pp : f.factors) {
        auto [c, d] = cornacchia_two_squares(pp.p);
        pi.push_back({c, 2 * d});
    }

    std::vector<TwoSquares> out;
    const std::uint64_t patterns = std::uint64_t(1) << (t - 1);
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        GaussInt mu = pi[0];
        for (unsigned j = 1; j < t; ++j)
            mu = mu.mul((mask >> (j - 1)) & 1 ? pi[j].conj() : pi[j]);
        if (mu.norm() != m) throw internal_error("enumerate_reps: Gaussian norm mismatch");
        Int a = abs(mu.re), b2 = abs(mu.im);
        if (mod_euclid(a, 2) == 0) std::swap(a, b2);
        if (mod_euclid(a, 2) == 0 || mod_euclid(b2, 2) != 0 || a == 0 || b2 == 0)
            throw internal_error("enumerate_reps: parity of Gaussian product violated");
        out.push_back({a, b2 / 2, m});
    }

    std::sort(out.begin(), out.end(),
              [](const TwoSquares& x, const TwoSquares& y) { return x.a < y.a; });
    for (size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].a == out[i + 1].a && out[i].b == out[i + 1].b)
            throw internal_error("enumerate_reps: duplicate representation");
    for (const auto& r : out) {
        if (r.a * r.a + 4 * r.b * r.b != m) throw internal_error("enumerate_reps: a^2 + 4b^2 != m");
        if (gcd(r.a, r.b) != 1) throw internal_error("enumerate_reps: gcd(a, b) != 1");
    }
    return out;
}

}  // namespace quadtor
