#pragma once

#include "selmer/poly.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace selmer {

// Deterministic xorshift generator; all randomized algorithms in the library
// draw from a locally seeded instance so identical inputs give identical runs.
struct DetRng {
    uint64_t s;
    explicit DetRng(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

// Prime field element; carries its characteristic.
struct Fp {
    uint64_t v = 0;
    uint64_t p = 0;

    Fp() = default;
    Fp(uint64_t value, uint64_t prime) : v(value % prime), p(prime) {}
    static Fp from_int(const Int& z, uint64_t prime) {
        Int m = int_mod(z, Int(static_cast<unsigned long>(prime)));
        return Fp(m.get_ui(), prime);
    }
    static Fp from_rat(const Rat& q, uint64_t prime) {
        Fp num = from_int(Int(q.get_num()), prime);
        Fp den = from_int(Int(q.get_den()), prime);
        return num / den;
    }

    friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v; }
    friend Fp operator+(const Fp& a, const Fp& b) { return Fp(a.v + b.v, a.p); }
    friend Fp operator-(const Fp& a, const Fp& b) { return Fp(a.v + a.p - b.v, a.p); }
    friend Fp operator*(const Fp& a, const Fp& b) {
        return Fp(static_cast<uint64_t>((static_cast<__uint128_t>(a.v) * b.v) % a.p), a.p);
    }
    Fp inv() const {
        if (v == 0) throw ComputationError("Fp division by zero");
        int64_t t0 = 0, t1 = 1;
        int64_t r0 = static_cast<int64_t>(p), r1 = static_cast<int64_t>(v);
        while (r1 != 0) {
            int64_t q = r0 / r1;
            int64_t r2 = r0 - q * r1, t2 = t0 - q * t1;
            r0 = r1; r1 = r2;
            t0 = t1; t1 = t2;
        }
        if (t0 < 0) t0 += static_cast<int64_t>(p);
        return Fp(static_cast<uint64_t>(t0), p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
    Fp pow(Int e) const {
        Int pm1(static_cast<unsigned long>(p - 1));
        if (v == 0) {
            if (e < 0) throw ComputationError("Fp inverse of zero");
            return e == 0 ? Fp(1, p) : Fp(0, p);
        }
        e = int_mod(e, pm1);
        Fp b = *this, r(1, p);
        unsigned long ee = e.get_ui();
        while (ee) {
            if (ee & 1) r = r * b;
            b = b * b;
            ee >>= 1;
        }
        return r;
    }
};

inline Fp ring_zero(const Fp& a) { return Fp(0, a.p); }
inline Fp ring_one(const Fp& a) { return Fp(1, a.p); }

using FpPoly = Poly<Fp>;

inline FpPoly zpoly_mod_p(const ZPoly& f, uint64_t p) {
    return f.map([&](const Int& z) { return Fp::from_int(z, p); });
}
inline FpPoly qpoly_mod_p(const QPoly& f, uint64_t p) {
    return f.map([&](const Rat& q) { return Fp::from_rat(q, p); });
}
inline ZPoly fppoly_lift(const FpPoly& f) {
    return f.map([](const Fp& a) { return Int(static_cast<unsigned long>(a.v)); });
}

inline FpPoly fp_x(uint64_t p) { return FpPoly::monomial(Fp(1, p), 1); }

// x^e mod m
inline FpPoly fp_powmod(FpPoly base, Int e, const FpPoly& m) {
    FpPoly r = FpPoly::constant(Fp(1, m.lc().p));
    base = poly_mod(base, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mod(r * base, m);
        base = poly_mod(base * base, m);
        e >>= 1;
    }
    return r;
}

// Distinct-degree / equal-degree factorization over F_p (monic squarefree input).
std::vector<FpPoly> fp_factor_squarefree(const FpPoly& f, DetRng& rng);

// Full factorization over F_p: returns monic irreducible factors with
// multiplicities; product times lc equals the input.
std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f);

std::vector<Fp> fp_roots(const FpPoly& f);

bool fp_is_irreducible(const FpPoly& f);

// Smallest-lexicographic monic irreducible of degree k over F_p (Conway-free
// canonical choice so all runs agree).
FpPoly fp_find_irreducible(uint64_t p, int k);

// ---- F_{p^k} ----

struct FqCtx {
    uint64_t p;
    int k;
    FpPoly modulus;  // monic irreducible, degree k
    Int q;           // p^k

    FqCtx(uint64_t p_, int k_, FpPoly m) : p(p_), k(k_), modulus(std::move(m)) {
        q = int_pow(Int(static_cast<unsigned long>(p)), k_);
    }
    static std::shared_ptr<const FqCtx> make(uint64_t p, int k) {
        return std::make_shared<const FqCtx>(p, k, fp_find_irreducible(p, k));
    }
};

struct Fq {
    std::shared_ptr<const FqCtx> ctx;
    FpPoly rep;  // degree < k

    Fq() = default;
    Fq(std::shared_ptr<const FqCtx> c, FpPoly r) : ctx(std::move(c)), rep(std::move(r)) {
        if (rep.degree() >= ctx->k) rep = poly_mod(rep, ctx->modulus);
    }
    static Fq from_int(const std::shared_ptr<const FqCtx>& c, const Int& z) {
        return Fq(c, FpPoly::constant(Fp::from_int(z, c->p)));
    }
    static Fq gen(const std::shared_ptr<const FqCtx>& c) { return Fq(c, fp_x(c->p)); }
    // Enumeration: index in [0, p^k) -> element (base-p digits as coefficients).
    static Fq from_index(const std::shared_ptr<const FqCtx>& c, uint64_t idx) {
        std::vector<Fp> cf;
        for (int i = 0; i < c->k; ++i) {
            cf.emplace_back(idx % c->p, c->p);
            idx /= c->p;
        }
        return Fq(c, FpPoly(std::move(cf)));
    }
    bool is_zero() const { return rep.is_zero(); }

    friend bool operator==(const Fq& a, const Fq& b) { return a.rep == b.rep; }
    friend Fq operator+(const Fq& a, const Fq& b) { return Fq(a.ctx, a.rep + b.rep); }
    friend Fq operator-(const Fq& a, const Fq& b) { return Fq(a.ctx, a.rep - b.rep); }
    friend Fq operator*(const Fq& a, const Fq& b) {
        return Fq(a.ctx, poly_mod(a.rep * b.rep, a.ctx->modulus));
    }
    Fq inv() const {
        if (is_zero()) throw ComputationError("Fq division by zero");
        auto [g, u, v] = poly_xgcd(rep, ctx->modulus);
        if (g.degree() != 0) throw ComputationError("Fq inverse failed");
        return Fq(ctx, u.scaled(g.lc().inv()));
    }
    friend Fq operator/(const Fq& a, const Fq& b) { return a * b.inv(); }
    Fq pow(Int e) const {
        if (is_zero()) {
            if (e < 0) throw ComputationError("Fq inverse of zero");
            return e == 0 ? Fq(ctx, FpPoly::constant(Fp(1, ctx->p))) : *this;
        }
        Int order = ctx->q - 1;
        e = int_mod(e, order);
        Fq b = *this, r = Fq(ctx, FpPoly::constant(Fp(1, ctx->p)));
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
};

inline Fq ring_zero(const Fq& a) { return Fq(a.ctx, FpPoly()); }
inline Fq ring_one(const Fq& a) { return Fq(a.ctx, FpPoly::constant(Fp(1, a.ctx->p))); }

// Multiplicative generator of F_q^* (smallest by enumeration order).
Fq fq_generator(const std::shared_ptr<const FqCtx>& ctx);

// Discrete log base g (brute force; fields here are tiny).
Int fq_dlog(const Fq& g, const Fq& x);

// Roots of a polynomial with Fq coefficients, by exhaustive search.
std::vector<Fq> fq_roots_brute(const Poly<Fq>& f);

}  // namespace selmer
