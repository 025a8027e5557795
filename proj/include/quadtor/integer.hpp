#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace quadtor {

using Int = mpz_class;

// A computed result contradicted a structural invariant.  This is never a
// user error; the CLI maps it to exit code 3.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// floor of the square root; n must be nonnegative
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int divexact_checked(const Int& n, const Int& d, const char* where) {
    if (d == 0 || !divides(d, n))
        throw internal_error(std::string(where) + ": division not exact");
    Int q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

// representative of a mod n in [0, |n|)
inline Int mod_euclid(const Int& a, const Int& n) {
    Int r, m = abs(n);
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// representative of a mod 2n in the window (-n, n]
inline Int mod_window(const Int& a, const Int& n) {
    Int r = mod_euclid(a, 2 * n);
    if (r > n) r -= 2 * abs(n);
    return r;
}

inline Int powmod(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

// extended gcd: g = s*a + t*b, g >= 0
inline Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline std::string dec(const Int& n) { return n.get_str(); }

// splitmix64; used for test-case generation and factoring polynomial offsets
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
};

// Single global seed, default 0.  Every numeric result of the library is
// seed-invariant by construction; the seed is recorded in reports so runs
// can be tied to a configuration.
inline std::uint64_t& global_seed_ref() {
    static std::uint64_t seed = 0;
    return seed;
}

inline void set_global_seed(std::uint64_t s) { global_seed_ref() = s; }
inline std::uint64_t global_seed() { return global_seed_ref(); }

}  // namespace quadtor
