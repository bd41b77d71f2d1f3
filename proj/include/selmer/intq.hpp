#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace selmer {

using Int = mpz_class;
using Rat = mpq_class;

struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : ComputationError {
    using ComputationError::ComputationError;
};

inline Int int_pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// v_s(n) for n != 0.
inline long int_valuation(Int n, const Int& s) {
    if (n == 0) throw ComputationError("valuation of zero");
    long v = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), s.get_mpz_t());
        if (r != 0) return v;
        n = q;
        ++v;
    }
}

inline Int int_mod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::optional<Int> mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) return std::nullopt;
    return r;
}

inline Int mod_pow(Int b, Int e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Exact n-th root if it exists.
inline std::optional<Int> int_nth_root(const Int& a, unsigned long n) {
    Int r;
    int exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), n);
    if (!exact) return std::nullopt;
    return r;
}

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

// q-th root of a rational, exact or nothing.
inline std::optional<Rat> rat_nth_root(const Rat& a, unsigned long n) {
    Rat b = a;
    b.canonicalize();
    bool neg = b < 0;
    if (neg && n % 2 == 0) return std::nullopt;
    Int num = neg ? Int(-b.get_num()) : Int(b.get_num());
    auto rn = int_nth_root(num, n);
    if (!rn) return std::nullopt;
    auto rd = int_nth_root(b.get_den(), n);
    if (!rd) return std::nullopt;
    Rat r(neg ? Int(-*rn) : *rn, *rd);
    r.canonicalize();
    return r;
}

// Rational reconstruction: find a/b with a = x*b mod m, |a|,|b| <= sqrt(m/2).
inline std::optional<Rat> rational_reconstruct(const Int& x, const Int& m) {
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
    Int r0 = m, r1 = int_mod(x, m);
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    if (abs(t1) > bound) return std::nullopt;
    Rat res(r1, t1);
    res.canonicalize();
    return res;
}

// Trial factorization of |n|; returns (prime, exponent) pairs. Throws if a
// cofactor above the trial bound remains that is not prime.
std::vector<std::pair<Int, int>> factor_integer(Int n, unsigned long trial_bound = 1000000);

bool is_prime(const Int& n);

// Primes in increasing order starting from `from`.
Int next_prime(const Int& from);

}  // namespace selmer
