#pragma once

#include <utility>
#include <vector>

#include "quadtor/qform.hpp"
#include "quadtor/quadint.hpp"
#include "quadtor/reps.hpp"

namespace quadtor {

// Integral ideal of the maximal order in normal form
//     content * [a, (l + sqrt(m))/2]
// with a > 0, l odd in the window (-a, a], and l^2 = m (mod 4a).  The content
// carries rational multiples so that products like p^2 = (p) stay
// representable; the primitive part alone determines the ideal class.
struct IdealNF {
    Int content, a, l, m;

    IdealNF(Int content_, Int a_, Int l_, Int m_)
        : content(std::move(content_)), a(std::move(a_)), l(std::move(l_)), m(std::move(m_)) {
        if (content < 1 || a < 1) throw std::invalid_argument("IdealNF: nonpositive part");
        if (mod_euclid(a, 2) == 0 || mod_euclid(l, 2) == 0)
            throw std::invalid_argument("IdealNF: even-norm ideals are not supported");
        if (l <= -a || l > a) throw std::invalid_argument("IdealNF: l outside window (-a, a]");
        if (!divides(4 * a, l * l - m)) throw std::invalid_argument("IdealNF: l^2 != m (mod 4a)");
    }

    static IdealNF unit_ideal(const Int& m) { return {1, 1, 1, m}; }

    Int norm() const { return content * content * a; }

    bool is_primitive() const { return content == 1; }

    IdealNF primitive_part() const { return {1, a, l, m}; }

    bool operator==(const IdealNF& o) const {
        return content == o.content && a == o.a && l == o.l && m == o.m;
    }

    std::string str() const {
        std::string core = "[" + dec(a) + ", (" + dec(l) + " + sqrt(" + dec(m) + "))/2]";
        return content == 1 ? core : dec(content) + " * " + core;
    }
};

namespace detail {

// Hermite reduction of a rank-2 Z-module spanned by elements (x + y*sqrt(m))/2,
// given as coordinate pairs (x, y).  Returns basis [(X, 0), (W, Y)].
inline void module_hnf(std::vector<std::pair<Int, Int>> gens, Int& X, Int& W, Int& Y) {
    Int gy = 0, wx = 0;
    for (const auto& [x, y] : gens) {
        if (y == 0) continue;
        if (gy == 0) {
            gy = y;
            wx = x;
            continue;
        }
        Int s, t;
        Int g = xgcd(gy, y, s, t);
        wx = s * wx + t * x;
        gy = g;
    }
    if (gy < 0) {
        gy = -gy;
        wx = -wx;
    }
    Int gx = 0;
    for (const auto& [x, y] : gens) {
        Int q = gy == 0 ? Int(0) : Int(y / gy);
        gx = gcd(gx, x - q * wx);
    }
    X = gx;
    Y = gy;
    W = X != 0 ? mod_euclid(wx, X) : wx;
}

}  // namespace detail

// Normal form of the Z-module spanned by the given elements, which must be a
// nonzero ideal of the order.
inline IdealNF module_to_ideal(const std::vector<QuadInt>& gens, const Int& m) {
    std::vector<std::pair<Int, Int>> coords;
    coords.reserve(gens.size());
    for (const auto& g : gens) {
        if (g.m != m) throw std::invalid_argument("module_to_ideal: mixed field parameters");
        coords.emplace_back(g.x, g.y);
    }
    Int X, W, Y;
    detail::module_hnf(std::move(coords), X, W, Y);
    if (X == 0 || Y == 0) throw internal_error("module_to_ideal: module has rank < 2");
    Int content = Y;
    Int a = divexact_checked(X, 2 * Y, "module_to_ideal: norm part");
    Int l = divexact_checked(W, Y, "module_to_ideal: l part");
    l = mod_window(l, a);
    return {content, a, l, m};
}

// Ideal generated by the given elements: span of {g, g*omega} over all g.
inline IdealNF ideal_from_elements(const std::vector<QuadInt>& elements, const Int& m) {
    std::vector<QuadInt> gens;
    gens.reserve(2 * elements.size());
    QuadInt w = QuadInt::omega(m);
    for (const auto& g : elements) {
        gens.push_back(g);
        gens.push_back(g.mul(w));
    }
    return module_to_ideal(gens, m);
}

inline IdealNF principal_ideal(const QuadInt& alpha) {
    if (alpha.is_zero()) throw std::invalid_argument("principal_ideal: zero generator");
    return ideal_from_elements({alpha}, alpha.m);
}

// The ideal generated by a and 2b + sqrt(m); its square is (2b + sqrt(m)).
inline IdealNF ideal_a(const TwoSquares& rep) {
    if (rep.a * rep.a + 4 * rep.b * rep.b != rep.m)
        throw std::invalid_argument("ideal_a: inconsistent representation");
    QuadInt gen(4 * rep.b, 2, rep.m);  // 2b + sqrt(m)
    IdealNF ideal = ideal_from_elements({QuadInt::integer(rep.a, rep.m), gen}, rep.m);
    if (ideal.norm() != rep.a) throw internal_error("ideal_a: norm differs from a");
    return ideal;
}

inline IdealNF mul(const IdealNF& lhs, const IdealNF& rhs) {
    if (lhs.m != rhs.m) throw std::invalid_argument("ideal mul: mixed field parameters");
    const Int& m = lhs.m;
    // four generators of the product of the primitive parts
    std::vector<QuadInt> gens{
        QuadInt::integer(lhs.a * rhs.a, m),
        QuadInt(lhs.a * rhs.l, lhs.a, m),
        QuadInt(rhs.a * lhs.l, rhs.a, m),
        QuadInt(divexact_checked(lhs.l * rhs.l + m, 2, "ideal mul"),
                divexact_checked(lhs.l + rhs.l, 2, "ideal mul"), m),
    };
    IdealNF prod = module_to_ideal(gens, m);
    Int content = lhs.content * rhs.content * prod.content;
    if (prod.norm() * lhs.content * lhs.content * rhs.content * rhs.content !=
        lhs.norm() * rhs.norm())
        throw internal_error("ideal mul: norm not multiplicative");
    return {content, prod.a, prod.l, m};
}

inline IdealNF conj(const IdealNF& ideal) {
    return {ideal.content, ideal.a, mod_window(-ideal.l, ideal.a), ideal.m};
}

// Unique prime ideal above a ramified prime p | m; its square is (p).
inline IdealNF ramified_prime(const Int& m, const Int& p) {
    if (!divides(p, m)) throw std::invalid_argument("ramified_prime: p does not divide m");
    return ideal_from_elements({QuadInt::integer(p, m), QuadInt::sqrt_m(m)}, m);
}

// Product of ramified primes selected by the bit vector e.
inline IdealNF ideal_b(const Factorization& f, const std::vector<int>& e) {
    if (e.size() != f.t()) throw std::invalid_argument("ideal_b: bit vector length != t");
    IdealNF result = IdealNF::unit_ideal(f.n);
    for (size_t j = 0; j < e.size(); ++j) {
        if (e[j] < 0 || e[j] > 1) throw std::invalid_argument("ideal_b: entries must be bits");
        if (e[j]) result = mul(result, ramified_prime(f.n, f.factors[j].p));
    }
    return result;
}

// True iff ideal_a(rep)^2 equals the principal ideal (2b + sqrt(m)).
inline bool verify_square_principal(const TwoSquares& rep) {
    IdealNF sq = mul(ideal_a(rep), ideal_a(rep));
    IdealNF target = principal_ideal(QuadInt(4 * rep.b, 2, rep.m));
    return sq == target;
}

// Dictionary between ideals and forms: [a, (l+sqrt(m))/2] <-> (a, l, (l^2-m)/4a).
inline QForm to_form(const IdealNF& ideal) {
    return {ideal.a, ideal.l, divexact_checked(ideal.l * ideal.l - ideal.m, 4 * ideal.a, "to_form"),
            ideal.m};
}

inline IdealNF from_form(const QForm& f) {
    QForm g = detail::positive_leading(f);
    return {1, g.a, mod_window(g.b, g.a), g.D};
}

}  // namespace quadtor
