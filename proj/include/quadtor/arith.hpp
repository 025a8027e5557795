#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "quadtor/integer.hpp"

namespace quadtor {

struct PrimePower {
    Int p;
    unsigned exp;

    bool operator==(const PrimePower& o) const { return p == o.p && exp == o.exp; }
};

struct Factorization {
    Int n;
    std::vector<PrimePower> factors;  // primes ascending, exponents >= 1

    bool operator==(const Factorization& o) const { return n == o.n && factors == o.factors; }

    Int product() const {
        Int r = 1;
        for (const auto& f : factors) {
            Int pe;
            mpz_pow_ui(pe.get_mpz_t(), f.p.get_mpz_t(), f.exp);
            r *= pe;
        }
        return r;
    }

    unsigned t() const { return static_cast<unsigned>(factors.size()); }
};

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1'000'000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

}  // namespace detail

// Deterministic Miller-Rabin.  The witness set {2,...,37} decides primality
// for every n < 3.317e24, far beyond anything this library touches.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (divides(p, n)) return false;
    }
    Int d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned long i = 0; i + 1 < r; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

// Brent's cycle variant of Pollard rho.  n odd composite, not a prime power
// of a small prime (trial division already ran).  The offset sequence is
// fixed, so output is deterministic for a given n.
inline Int brent_rho(const Int& n) {
    for (unsigned c = 1;; ++c) {
        Int y = 2, g = 1, q = 1, x, ys;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                unsigned long steps = std::min(batch, r - k);
                for (unsigned long i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += batch;
            }
            r *= 2;
        }
        if (g == n) {
            // batched gcd overshot; retrace one step at a time
            g = 1;
            y = ys;
            while (g == 1) {
                y = (y * y + c) % n;
                g = gcd(abs(x - y), n);
            }
        }
        if (g != n) return g;
        // cycle degenerated for this offset; try the next one
    }
}

inline void factor_into(const Int& n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Int d = brent_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

// Trial division up to 1e6, then Pollard-Brent on what is left.
inline Factorization factor(const Int& n) {
    if (n < 1) throw std::invalid_argument("factor: n must be positive");
    Factorization result;
    result.n = n;
    Int rem = n;
    std::map<Int, unsigned> found;
    for (std::uint32_t p : detail::small_primes()) {
        if (Int(p) * p > rem) break;
        while (divides(p, rem)) {
            ++found[Int(p)];
            rem /= p;
        }
    }
    if (rem > 1) {
        if (Int(1'000'000) * 1'000'000 >= rem || is_prime(rem))
            ++found[rem];
        else
            detail::factor_into(rem, found);
    }
    for (const auto& [p, e] : found) result.factors.push_back({p, e});
    return result;
}

// Reasons why a factored integer fails to be a valid field parameter
// (squarefree product of at least one prime, all congruent to 1 mod 4).
inline std::vector<std::string> validate_m(const Factorization& f) {
    std::vector<std::string> reasons;
    if (f.factors.empty()) reasons.push_back("m = 1 has no prime factor");
    for (const auto& pp : f.factors) {
        if (pp.exp > 1)
            reasons.push_back("not squarefree: " + dec(pp.p) + " appears with exponent " +
                              std::to_string(pp.exp));
        if (mod_euclid(pp.p, 4) != 1)
            reasons.push_back("prime " + dec(pp.p) + " is not congruent to 1 mod 4");
    }
    return reasons;
}

inline bool is_valid_m(const Factorization& f) { return validate_m(f).empty(); }

// Square root of -1 modulo p, canonicalized to min(r, p-r).  A quadratic
// nonresidue z gives z^((p-1)/4) directly; candidates are scanned in a fixed
// order, so the result does not depend on the global seed.
inline Int sqrt_minus_one_mod_p(const Int& p) {
    if (mod_euclid(p, 4) != 1 || !is_prime(p))
        throw std::invalid_argument("sqrt_minus_one_mod_p: p must be a prime = 1 mod 4");
    Int half = (p - 1) / 2;
    for (Int z = 2;; ++z) {
        if (z >= p) throw internal_error("sqrt_minus_one_mod_p: no nonresidue found");
        if (powmod(z, half, p) == p - 1) {
            Int r = powmod(z, (p - 1) / 4, p);
            if (r > p - r) r = p - r;
            if (r * r % p != p - 1) throw internal_error("sqrt_minus_one_mod_p: r^2 != -1");
            return r;
        }
    }
}

// Cornacchia: the unique decomposition p = c^2 + 4d^2 with c odd, c,d > 0.
inline std::pair<Int, Int> cornacchia_two_squares(const Int& p) {
    Int r = sqrt_minus_one_mod_p(p);  // validates p
    Int a = p, b = r, bound = isqrt(p);
    while (b > bound) {
        Int t = a % b;
        a = b;
        b = t;
    }
    Int x = b;
    Int rem = p - x * x;
    Int y = isqrt(rem);
    if (y * y != rem) throw internal_error("cornacchia: residual not a square");
    // exactly one of x, y is even since p = 1 mod 4
    Int c = x, d2 = y;
    if (mod_euclid(c, 2) == 0) std::swap(c, d2);
    if (mod_euclid(c, 2) == 0 || mod_euclid(d2, 2) != 0)
        throw internal_error("cornacchia: parity violated");
    Int d = d2 / 2;
    if (c * c + 4 * d * d != p) throw internal_error("cornacchia: c^2 + 4d^2 != p");
    return {c, d};
}

inline std::optional<Int> is_perfect_square(const Int& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    return isqrt(n);
}

}  // namespace quadtor
