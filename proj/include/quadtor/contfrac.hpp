#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quadtor/arith.hpp"
#include "quadtor/quadint.hpp"

namespace quadtor {

// One period of the continued fraction of (1+sqrt(m))/2.  The complete
// quotients are (P_k + sqrt(m))/Q_k; the tail starting at k = 1 is purely
// periodic because alpha_1 is reduced for every m >= 5.
struct CFCycle {
    Int m;
    Int a0;                      // integer part of (1+sqrt(m))/2
    Int seed_p, seed_q;          // (P_1, Q_1), start of the periodic tail
    std::vector<Int> quotients;  // partial quotients a_1 .. a_l of one period

    size_t period() const { return quotients.size(); }
};

struct FundamentalUnit {
    QuadInt eps;  // smallest unit > 1 of the maximal order
    int norm;     // +1 or -1, equal to (-1)^period
    CFCycle cycle;
};

namespace detail {

inline void check_unit_field_parameter(const Int& m) {
    if (m <= 1 || mod_euclid(m, 4) != 1)
        throw std::invalid_argument("fundamental_unit: m must exceed 1 and be 1 mod 4");
    if (is_perfect_square(m))
        throw std::invalid_argument("fundamental_unit: m must not be a square");
}

}  // namespace detail

// Expand (1+sqrt(m))/2, detect the period of the tail, and recover the unit
// from the convergents: the period matrix fixes omega, and its bottom row
// (C, D) gives eps = C*omega + D with norm (-1)^period.
inline FundamentalUnit fundamental_unit(const Int& m) {
    detail::check_unit_field_parameter(m);
    const Int s0 = isqrt(m);

    CFCycle cyc;
    cyc.m = m;

    Int p = 1, q = 2;  // (P_0, Q_0) for (1+sqrt(m))/2; note 2 | m - 1
    Int a = (p + s0) / q;
    cyc.a0 = a;
    const Int a0 = a;

    // convergents p_k/q_k; index -1 seeds
    Int pk1 = 1, pk = a, qk1 = 0, qk = 1;

    Int seed_p, seed_q;
    bool have_seed = false;
    for (unsigned long steps = 0;; ++steps) {
        if (steps > 100'000'000UL) throw internal_error("fundamental_unit: period not found");
        p = a * q - p;
        q = divexact_checked(m - p * p, q, "fundamental_unit: Q step");
        if (have_seed && p == seed_p && q == seed_q) break;
        if (!have_seed) {
            seed_p = p;
            seed_q = q;
            have_seed = true;
        }
        a = (p + s0) / q;
        cyc.quotients.push_back(a);
        Int np = a * pk + pk1, nq = a * qk + qk1;
        pk1 = pk;
        pk = np;
        qk1 = qk;
        qk = nq;
    }
    cyc.seed_p = seed_p;
    cyc.seed_q = seed_q;

    // The repeat happens at alpha_j with j = period + 1, and the convergents
    // accumulated so far are p_{j-1}/q_{j-1}.  The matrix fixing omega has
    // bottom row (C, D) = (q_{j-2}, q_{j-1} - a0 * q_{j-2}).
    Int c = qk1, d = qk - a0 * qk1;
    QuadInt eps(c + 2 * d, c, m);

    Int n = eps.norm();
    if (abs(n) != 1) throw internal_error("fundamental_unit: period matrix is not unimodular");
    // normalize into the unique associate > 1
    if (eps.sign() < 0) eps = eps.neg();
    QuadInt one = QuadInt::integer(1, m);
    if (eps.cmp(one) < 0) {
        QuadInt inv = eps.conj();
        if (n < 0) inv = inv.neg();
        eps = inv.sign() > 0 ? inv : inv.neg();
    }
    if (eps.cmp(one) <= 0) throw internal_error("fundamental_unit: normalization failed");
    if (eps.norm() != n) throw internal_error("fundamental_unit: norm changed in normalization");

    int expected = cyc.period() % 2 == 0 ? 1 : -1;
    if ((n > 0 ? 1 : -1) != expected)
        throw internal_error("fundamental_unit: norm does not match period parity");

    FundamentalUnit fu{eps, n > 0 ? 1 : -1, std::move(cyc)};
    return fu;
}

// Writes a unit as sign * eps^k; empty when the argument is not a unit.
inline std::optional<std::pair<int, long>> solve_unit_equation(const QuadInt& candidate,
                                                               const FundamentalUnit& fu) {
    if (candidate.m != fu.eps.m)
        throw std::invalid_argument("solve_unit_equation: mixed field parameters");
    if (candidate.is_zero() || abs(candidate.norm()) != 1) return std::nullopt;

    QuadInt u = candidate;
    int sign = 1;
    if (u.sign() < 0) {
        sign = -1;
        u = u.neg();
    }

    const QuadInt one = QuadInt::integer(1, u.m);
    long k = 0;
    for (long guard = 0; u.cmp(one) > 0; ++guard) {
        if (guard > 1'000'000) throw internal_error("solve_unit_equation: runaway exponent");
        auto q = exact_div(u, fu.eps);
        if (!q) throw internal_error("solve_unit_equation: unit not divisible by eps");
        u = *q;
        ++k;
    }
    for (long guard = 0; u.cmp(one) < 0; ++guard) {
        if (guard > 1'000'000) throw internal_error("solve_unit_equation: runaway exponent");
        u = u.mul(fu.eps);
        --k;
    }
    if (!(u == one)) return std::nullopt;
    return std::make_pair(sign, k);
}

}  // namespace quadtor
