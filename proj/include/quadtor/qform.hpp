#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quadtor/arith.hpp"
#include "quadtor/integer.hpp"

namespace quadtor {

// Primitive integral binary quadratic form a*x^2 + b*xy + c*y^2 of positive
// nonsquare discriminant D = b^2 - 4ac.
struct QForm {
    Int a, b, c, D;

    QForm(Int a_, Int b_, Int c_, Int D_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), D(std::move(D_)) {
        if (a == 0) throw std::invalid_argument("QForm: leading coefficient must be nonzero");
        if (b * b - 4 * a * c != D) throw std::invalid_argument("QForm: discriminant mismatch");
        if (D <= 0 || is_perfect_square(D))
            throw std::invalid_argument("QForm: discriminant must be positive and nonsquare");
        if (gcd(a, gcd(b, c)) != 1) throw std::invalid_argument("QForm: form not primitive");
    }

    static QForm principal(const Int& m) { return {1, 1, (1 - m) / 4, m}; }

    // class of principal ideals with negative-norm generators
    static QForm principal_negative(const Int& m) { return {-1, 1, (m - 1) / 4, m}; }

    // class of the ideal generated by sqrt(m)
    static QForm sqrtm_form(const Int& m) { return {m, m, (m - 1) / 4, m}; }

    Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }

    QForm flip() const { return {a, -b, c, D}; }

    // 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, checked with
    // integer bounds (sqrt(D) is irrational, so floor comparisons are exact)
    bool is_reduced() const {
        Int s0 = isqrt(D);
        if (b <= 0 || b > s0) return false;
        Int aa = 2 * abs(a);
        return aa > s0 - b && aa <= s0 + b;
    }

    bool operator==(const QForm& o) const { return a == o.a && b == o.b && c == o.c && D == o.D; }

    bool lex_less(const QForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }

    std::string key() const { return dec(a) + "|" + dec(b) + "|" + dec(c); }

    std::string str() const { return "(" + dec(a) + ", " + dec(b) + ", " + dec(c) + ")"; }
};

struct Mat2 {
    Int e[2][2];

    static Mat2 identity() { return {{{1, 0}, {0, 1}}}; }

    Mat2 mul(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = e[i][0] * o.e[0][j] + e[i][1] * o.e[1][j];
        return r;
    }

    Int det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }

    Mat2 inverse_unimodular() const {
        Int d = det();
        if (abs(d) != 1) throw internal_error("Mat2: inverse of non-unimodular matrix");
        Mat2 r{{{e[1][1], -e[0][1]}, {-e[1][0], e[0][0]}}};
        if (d == -1)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) r.e[i][j] = -r.e[i][j];
        return r;
    }
};

// F(U*(x,y)): substitute x -> u00*x + u01*y, y -> u10*x + u11*y
inline QForm apply(const QForm& f, const Mat2& u) {
    Int na = f.eval(u.e[0][0], u.e[1][0]);
    Int nc = f.eval(u.e[0][1], u.e[1][1]);
    Int nb = 2 * f.a * u.e[0][0] * u.e[0][1] + f.b * (u.e[0][0] * u.e[1][1] + u.e[0][1] * u.e[1][0]) +
             2 * f.c * u.e[1][0] * u.e[1][1];
    return {na, nb, nc, f.D};
}

namespace detail {

// residue of v mod 2w (w > 0) in the window (lo, lo + 2w]
inline Int residue_above(const Int& v, const Int& w, const Int& lo) {
    Int r = mod_euclid(v - lo - 1, 2 * w) + lo + 1;
    return r;
}

}  // namespace detail

// Right-neighbor step.  The new middle coefficient r = -b (mod 2|c|) sits in
// (-|c|, |c|] while |c| >= sqrt(D) and in (sqrt(D) - 2|c|, sqrt(D)) once
// |c| < sqrt(D); iterating from any primitive form reaches a reduced one,
// and on reduced forms rho walks their cycle.
inline std::pair<QForm, Mat2> rho_with_transform(const QForm& f) {
    if (f.c == 0) throw internal_error("rho: degenerate form");
    Int s0 = isqrt(f.D);
    Int ac = abs(f.c);
    Int r = ac > s0 ? detail::residue_above(-f.b, ac, -ac) : detail::residue_above(-f.b, ac, s0 - 2 * ac);
    Int nc = divexact_checked(r * r - f.D, 4 * f.c, "rho");
    Int s = divexact_checked(r + f.b, 2 * f.c, "rho transform");
    Mat2 mstep{{{0, -1}, {1, s}}};
    return {QForm(f.c, r, nc, f.D), mstep};
}

inline QForm rho(const QForm& f) { return rho_with_transform(f).first; }

inline std::pair<QForm, Mat2> reduce(const QForm& f) {
    QForm g = f;
    Mat2 u = Mat2::identity();
    for (unsigned long guard = 0; !g.is_reduced(); ++guard) {
        if (guard > 10'000'000UL) throw internal_error("reduce: no termination");
        auto [ng, mstep] = rho_with_transform(g);
        g = ng;
        u = u.mul(mstep);
    }
    return {g, u};
}

// Full rho-cycle of a reduced form, starting at f and closing on it.
inline std::vector<QForm> cycle(const QForm& f) {
    if (!f.is_reduced()) throw std::invalid_argument("cycle: form not reduced");
    std::vector<QForm> out{f};
    QForm g = rho(f);
    while (!(g == f)) {
        if (out.size() > 10'000'000UL) throw internal_error("cycle: no closure");
        out.push_back(g);
        g = rho(g);
    }
    return out;
}

namespace detail {

// SL2-equivalent form with positive leading coefficient.  Reduced forms have
// ac < 0, so at most one extra rho step is needed after reduction.
inline QForm positive_leading(const QForm& f) {
    if (f.a > 0) return f;
    QForm g = reduce(f).first;
    if (g.a < 0) g = rho(g);
    if (g.a < 0) throw internal_error("positive_leading: sign did not flip");
    return g;
}

}  // namespace detail

// Gauss composition (Dirichlet form, general case with d1 = gcd(a1, a2, s)).
// The composite's class is the product of the input classes.
inline QForm compose(const QForm& f1in, const QForm& f2in) {
    if (f1in.D != f2in.D) throw std::invalid_argument("compose: discriminant mismatch");
    const Int D = f1in.D;
    QForm f1 = detail::positive_leading(f1in);
    QForm f2 = detail::positive_leading(f2in);
    if (f1.a > f2.a) std::swap(f1, f2);

    Int s = divexact_checked(f1.b + f2.b, 2, "compose: parity");
    Int n = f2.b - s;  // (b2 - b1)/2

    Int y1, d;
    if (divides(f1.a, f2.a)) {
        y1 = 0;
        d = f1.a;
    } else {
        Int u, v;
        d = xgcd(f2.a, f1.a, u, v);
        y1 = u;
    }

    Int x2, y2, d1;
    if (divides(d, s)) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        Int u, v;
        d1 = xgcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }

    Int v1 = divexact_checked(f1.a, d1, "compose: v1");
    Int v2 = divexact_checked(f2.a, d1, "compose: v2");
    Int r = mod_euclid(y1 * y2 * n - x2 * f2.c, v1);

    Int a3 = v1 * v2;
    Int b3 = f2.b + 2 * v2 * r;
    b3 = mod_window(b3, a3);
    Int c3 = divexact_checked(b3 * b3 - D, 4 * a3, "compose: c3");
    return {a3, b3, c3, D};
}

inline QForm square(const QForm& f) { return compose(f, f); }

inline QForm inverse(const QForm& f) { return f.flip(); }

enum class Strictness { narrow, wide };

// Narrow (proper/SL2) equivalence: reduced forms of one class form a single
// rho-cycle.  Wide equivalence is narrow equivalence up to the class of the
// ideal (sqrt(m)); that is exactly ordinary ideal equivalence in Cl(K).
inline bool equivalent(const QForm& f, const QForm& g, Strictness s) {
    if (f.D != g.D) throw std::invalid_argument("equivalent: discriminant mismatch");
    QForm rf = reduce(f).first;
    QForm rg = reduce(g).first;
    auto in_cycle = [](const QForm& start, const QForm& target) {
        QForm h = start;
        do {
            if (h == target) return true;
            h = rho(h);
        } while (!(h == start));
        return false;
    };
    if (in_cycle(rf, rg)) return true;
    if (s == Strictness::narrow) return false;
    QForm shifted = reduce(compose(g, QForm::sqrtm_form(f.D))).first;
    return in_cycle(rf, shifted);
}

}  // namespace quadtor
