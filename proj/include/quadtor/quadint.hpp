#pragma once

#include <optional>
#include <string>

#include "quadtor/integer.hpp"

namespace quadtor {

// Element (x + y*sqrt(m))/2 of the maximal order Z[(1+sqrt(m))/2], m = 1 mod 4.
// The doubled coordinates keep all arithmetic integral; x = y (mod 2) is the
// membership condition and is enforced on construction.
struct QuadInt {
    Int x, y, m;

    QuadInt(Int x_, Int y_, Int m_) : x(std::move(x_)), y(std::move(y_)), m(std::move(m_)) {
        if (m < 1 || mod_euclid(m, 4) != 1)
            throw std::invalid_argument("QuadInt: m must be positive and 1 mod 4");
        if (mod_euclid(x - y, 2) != 0)
            throw std::invalid_argument("QuadInt: x and y must have equal parity");
    }

    static QuadInt integer(const Int& n, const Int& m) { return {2 * n, 0, m}; }
    static QuadInt omega(const Int& m) { return {1, 1, m}; }    // (1+sqrt(m))/2
    static QuadInt sqrt_m(const Int& m) { return {0, 2, m}; }

    bool operator==(const QuadInt& o) const { return x == o.x && y == o.y && m == o.m; }

    bool same_field(const QuadInt& o) const { return m == o.m; }

    void require_same_field(const QuadInt& o, const char* op) const {
        if (!same_field(o)) throw std::invalid_argument(std::string(op) + ": mixed field parameters");
    }

    QuadInt add(const QuadInt& o) const {
        require_same_field(o, "QuadInt::add");
        return {x + o.x, y + o.y, m};
    }

    QuadInt sub(const QuadInt& o) const {
        require_same_field(o, "QuadInt::sub");
        return {x - o.x, y - o.y, m};
    }

    QuadInt neg() const { return {-x, -y, m}; }

    QuadInt mul(const QuadInt& o) const {
        require_same_field(o, "QuadInt::mul");
        Int nx = divexact_checked(x * o.x + m * y * o.y, 2, "QuadInt::mul");
        Int ny = divexact_checked(x * o.y + y * o.x, 2, "QuadInt::mul");
        return {nx, ny, m};
    }

    QuadInt conj() const { return {x, -y, m}; }

    Int norm() const { return divexact_checked(x * x - m * y * y, 4, "QuadInt::norm"); }

    Int trace() const { return x; }

    bool is_zero() const { return x == 0 && y == 0; }

    bool is_unit() const { return !is_zero() && abs(norm()) == 1; }

    // sign of the real number (x + y*sqrt(m))/2; exact, no floating point
    int sign() const {
        if (x == 0 && y == 0) return 0;
        if (x >= 0 && y >= 0) return 1;
        if (x <= 0 && y <= 0) return -1;
        Int d = x * x - m * y * y;  // nonzero: m is not a square
        int s = d > 0 ? 1 : -1;
        return x > 0 ? s : -s;
    }

    bool totally_positive() const { return sign() > 0 && conj().sign() > 0; }

    // exact comparison of real values
    int cmp(const QuadInt& o) const {
        require_same_field(o, "QuadInt::cmp");
        return sub(o).sign();
    }

    QuadInt pow(unsigned long e) const {
        QuadInt result = integer(1, m), base = *this;
        while (e) {
            if (e & 1) result = result.mul(base);
            base = base.mul(base);
            e >>= 1;
        }
        return result;
    }

    std::string str() const {
        if (mod_euclid(x, 2) == 0 && mod_euclid(y, 2) == 0)
            return dec(x / 2) + " + " + dec(y / 2) + "*sqrt(" + dec(m) + ")";
        return "(" + dec(x) + " + " + dec(y) + "*sqrt(" + dec(m) + "))/2";
    }
};

// alpha/beta when the quotient lies in the order, empty otherwise
inline std::optional<QuadInt> exact_div(const QuadInt& alpha, const QuadInt& beta) {
    alpha.require_same_field(beta, "exact_div");
    if (beta.is_zero()) return std::nullopt;
    Int nb = beta.norm();
    QuadInt num = alpha.mul(beta.conj());
    if (!divides(nb, num.x) || !divides(nb, num.y)) return std::nullopt;
    Int nx = num.x / nb, ny = num.y / nb;
    if (mod_euclid(nx - ny, 2) != 0) return std::nullopt;
    return QuadInt(nx, ny, alpha.m);
}

}  // namespace quadtor
