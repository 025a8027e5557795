#pragma once

#include <array>
#include <utility>
#include <vector>

#include "quadtor/arith.hpp"
#include "quadtor/reps.hpp"

namespace quadtor {

// Exponent vector of a product of quartic characters, entries in Z/4.
using CharVector = std::vector<int>;

inline int character_order(const CharVector& e) {
    int order = 1;
    for (int v : e) {
        int o = (v % 4 == 0) ? 1 : (v % 2 == 0 ? 2 : 4);
        order = std::max(order, o);
    }
    return order;
}

// Character vectors with every entry odd, i.e. entries in {1, 3}, grouped
// into the pairs {e, 3e} that generate one quartic subgroup each.  There are
// exactly 2^(t-1) pairs; the first entry of the representative is fixed to 1.
inline std::vector<std::pair<CharVector, CharVector>> enumerate_quartic_characters(unsigned t) {
    if (t < 1) throw std::invalid_argument("enumerate_quartic_characters: t must be >= 1");
    if (t > 62) throw std::invalid_argument("enumerate_quartic_characters: t out of range");
    std::vector<std::pair<CharVector, CharVector>> out;
    const std::uint64_t count = std::uint64_t(1) << (t - 1);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        CharVector e(t), e3(t);
        e[0] = 1;
        e3[0] = 3;
        for (unsigned j = 1; j < t; ++j) {
            e[j] = (mask >> (j - 1)) & 1 ? 3 : 1;
            e3[j] = 4 - e[j];
        }
        out.emplace_back(std::move(e), std::move(e3));
    }
    return out;
}

// x^4 + p*x^2 + q with p = -2m, q = a^2 m: the minimal polynomial of
// sqrt(m + 2b*sqrt(m)).
struct QuarticPoly {
    Int m, a, b;

    Int p() const { return -2 * m; }
    Int q() const { return a * a * m; }

    std::string str() const {
        return "x^4 - " + dec(2 * m) + "*x^2 + " + dec(a * a * m);
    }
};

inline QuarticPoly min_poly(const Int& m, const TwoSquares& rep) {
    if (rep.m != m || rep.a * rep.a + 4 * rep.b * rep.b != m)
        throw std::invalid_argument("min_poly: representation does not match m");
    return {m, rep.a, rep.b};
}

// Irreducibility of x^4 + p x^2 + q over Q.  With no cubic or linear term a
// factorization is either (x^2-u)(x^2-v), needing p^2 - 4q square, or
// (x^2+ux+v)(x^2-ux+v), needing q square and 2*sqrt(q) - p square.
inline bool quartic_irreducible(const QuarticPoly& poly) {
    Int p = poly.p(), q = poly.q();
    if (is_perfect_square(p * p - 4 * q)) return false;
    if (auto v = is_perfect_square(q)) {
        if (is_perfect_square(2 * *v - p)) return false;
        if (is_perfect_square(-2 * *v - p)) return false;
    }
    return true;
}

// Determinant by fraction-free (Bareiss) elimination; exact over Z.
inline Int bareiss_determinant(std::vector<std::vector<Int>> mat) {
    const size_t n = mat.size();
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (mat[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && mat[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(mat[k], mat[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                mat[i][j] =
                    divexact_checked(mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j], prev, "bareiss");
        prev = mat[k][k];
    }
    return sign * mat[n - 1][n - 1];
}

// Res(f, g) via the Sylvester matrix.  Coefficients are given highest degree
// first; leading coefficients must be nonzero.
inline Int resultant(const std::vector<Int>& f, const std::vector<Int>& g) {
    const size_t df = f.size() - 1, dg = g.size() - 1;
    if (f.front() == 0 || g.front() == 0) throw std::invalid_argument("resultant: zero leading coefficient");
    const size_t n = df + dg;
    std::vector<std::vector<Int>> syl(n, std::vector<Int>(n, Int(0)));
    for (size_t row = 0; row < dg; ++row)
        for (size_t j = 0; j <= df; ++j) syl[row][row + j] = f[j];
    for (size_t row = 0; row < df; ++row)
        for (size_t j = 0; j <= dg; ++j) syl[dg + row][row + j] = g[j];
    return bareiss_determinant(std::move(syl));
}

// disc(x^4 + p x^2 + q) = Res(f, f') for monic quartics.
inline Int quartic_poly_discriminant(const Int& p, const Int& q) {
    std::vector<Int> f{1, 0, p, 0, q};
    std::vector<Int> fp{4, 0, 2 * p, 0};
    return resultant(f, fp);
}

// Necessary condition for field discriminant m^3: the polynomial
// discriminant equals m^3 times a nonzero square (index squares absorb the
// rest).  Exact field discriminants are out of scope by design.
inline bool disc_is_m3_times_square(const Int& disc, const Int& m) {
    if (disc == 0) return false;
    Int m3 = m * m * m;
    if (!divides(m3, disc)) return false;
    Int quotient = disc / m3;
    return quotient > 0 && is_perfect_square(quotient).has_value();
}

inline bool disc_check(const QuarticPoly& poly, const Int& m) {
    return disc_is_m3_times_square(quartic_poly_discriminant(poly.p(), poly.q()), m);
}

// Element of Z[sqrt(A), sqrt(B), sqrt(C)]: integer coordinates over the basis
// {1, sqrt(A), sqrt(B), sqrt(C), sqrt(AB), sqrt(AC), sqrt(BC), sqrt(ABC)},
// indexed by bitmask over {A, B, C}.  Multiplication reduces sqrt(X)^2 -> X.
struct RadExpr {
    std::array<Int, 8> coeff{};
    Int radicand[3];

    RadExpr(const Int& A, const Int& B, const Int& C) : radicand{A, B, C} {
        coeff.fill(Int(0));
    }

    static RadExpr term(const Int& A, const Int& B, const Int& C, int mask, const Int& value) {
        RadExpr r(A, B, C);
        r.coeff[mask] = value;
        return r;
    }

    RadExpr mul(const RadExpr& o) const {
        RadExpr r(radicand[0], radicand[1], radicand[2]);
        for (int s = 0; s < 8; ++s) {
            if (coeff[s] == 0) continue;
            for (int t = 0; t < 8; ++t) {
                if (o.coeff[t] == 0) continue;
                Int v = coeff[s] * o.coeff[t];
                int common = s & t;
                for (int bit = 0; bit < 3; ++bit)
                    if (common & (1 << bit)) v *= radicand[bit];
                r.coeff[s ^ t] += v;
            }
        }
        return r;
    }

    RadExpr scaled(const Int& k) const {
        RadExpr r = *this;
        for (auto& v : r.coeff) v *= k;
        return r;
    }

    RadExpr add(const RadExpr& o) const {
        RadExpr r = *this;
        for (int i = 0; i < 8; ++i) r.coeff[i] += o.coeff[i];
        return r;
    }

    bool operator==(const RadExpr& o) const { return coeff == o.coeff; }
};

enum class IdentityResult { holds, fails, constraint_unsatisfied };

// Checks 2(x sqrt(A) + y sqrt(B))(x sqrt(A) + z sqrt(C)) =
// (x sqrt(A) + y sqrt(B) + z sqrt(C))^2 by exact expansion over the radical
// basis.  Requires A x^2 - B y^2 - C z^2 = 0; a violated constraint is
// reported distinctly from a failing identity.
inline IdentityResult legendre_identity_check(const Int& A, const Int& B, const Int& C, const Int& x,
                                              const Int& y, const Int& z) {
    if (A < 0 || B < 0 || C < 0) return IdentityResult::constraint_unsatisfied;
    if (A * x * x - B * y * y - C * z * z != 0) return IdentityResult::constraint_unsatisfied;
    RadExpr xa = RadExpr::term(A, B, C, 0b001, x);
    RadExpr yb = RadExpr::term(A, B, C, 0b010, y);
    RadExpr zc = RadExpr::term(A, B, C, 0b100, z);
    RadExpr lhs = xa.add(yb).mul(xa.add(zc)).scaled(2);
    RadExpr sum = xa.add(yb).add(zc);
    RadExpr rhs = sum.mul(sum);
    return lhs == rhs ? IdentityResult::holds : IdentityResult::fails;
}

// Specialization certifying that sqrt(m + 2b sqrt(m)) and sqrt(2m + 2a sqrt(m))
// generate the same extension: 2(sqrt(m)+a)(sqrt(m)+2b) must be the exact
// square of sqrt(m) + a + 2b in Z[sqrt(m)].
inline bool same_field_check(const Int& m, const TwoSquares& rep) {
    if (rep.m != m) throw std::invalid_argument("same_field_check: representation does not match m");
    const Int &a = rep.a, b2 = 2 * rep.b;
    // lhs = 2(m + 2ab + (a + 2b) sqrt(m)), rhs = (m + (a+2b)^2) + 2(a+2b) sqrt(m)
    Int lhs_rat = 2 * (m + a * b2), lhs_irr = 2 * (a + b2);
    Int s = a + b2;
    Int rhs_rat = m + s * s, rhs_irr = 2 * s;
    return lhs_rat == rhs_rat && lhs_irr == rhs_irr;
}

}  // namespace quadtor
