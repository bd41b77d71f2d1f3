#pragma once

#include "selmer/curve.hpp"
#include "selmer/fp.hpp"

namespace selmer {

// Factor a small-degree polynomial over F_q by root scan and divisor search.
std::vector<std::pair<Poly<Fq>, int>> fq_factor_small(const Poly<Fq>& f);

// ---- point counting ----

struct CountResult {
    std::vector<Int> counts;        // #C(F_{s^k}) for k = 1..k_max
    std::optional<ZPoly> charpoly;  // of Frobenius, when k_max >= genus
    std::optional<Int> jacobian_order;  // charpoly(1)
};

// Exact point counts over F_{s^k}; for superelliptic models by x-fiber
// analysis, for plane quartics by chart enumeration. Requires nonsingular
// reduction at s. Enumeration is capped at s^k <= cap.
CountResult count_points_frobenius(const CurveModel& C, const Int& s, int k_max,
                                   const Int& cap = Int(10000000));

// gcd of #J(F_s) over the given good primes; the rational torsion order
// divides the result.
Int torsion_divisibility_bound(const CurveModel& C, const std::vector<Int>& primes,
                               const Int& cap = Int(10000000));

// ---- genus-2 Cantor arithmetic (y^2 = quintic) ----

// Mumford representation over a generic field element type: u monic of degree
// <= 2, deg v < deg u, v^2 = f mod u.
template <class K>
struct Mumford {
    Poly<K> u;
    Poly<K> v;
};

template <class K>
bool mumford_equal(const Mumford<K>& a, const Mumford<K>& b) {
    return a.u == b.u && a.v == b.v;
}

// Cantor composition + reduction on y^2 = f(x), deg f = 5.
template <class K>
Mumford<K> cantor_add(const Poly<K>& f, const Mumford<K>& D1, const Mumford<K>& D2) {
    auto [d1, a, b] = poly_xgcd(D1.u, D2.u);  // d1 = a u1 + b u2
    Poly<K> vsum = D1.v + D2.v;
    auto [d, c3, s3] = poly_xgcd(d1, vsum);  // d = c3 d1 + s3 (v1+v2)
    Poly<K> ca = c3 * a, cb = c3 * b;
    auto [u, ur] = poly_divrem(D1.u * D2.u, d * d);
    if (!ur.is_zero()) throw ComputationError("cantor: inexact composition (input not reduced?)");
    Poly<K> num = ca * D1.u * D2.v + cb * D2.u * D1.v + s3 * (D1.v * D2.v + f);
    auto [numq, numr] = poly_divrem(num, d);
    if (!numr.is_zero()) throw ComputationError("cantor: inexact v-step");
    Poly<K> v = poly_mod(numq, u);
    while (u.degree() > 2) {
        auto [u2, rr] = poly_divrem(f - v * v, u);
        if (!rr.is_zero()) throw ComputationError("cantor: reduction failed (v^2 != f mod u)");
        u2 = poly_monic(u2);
        v = poly_mod(-v, u2);
        u = u2;
    }
    return {poly_monic(u), v};
}

template <class K>
Mumford<K> cantor_neg(const Mumford<K>& D) {
    return {D.u, -D.v};
}

template <class K>
Mumford<K> cantor_zero(const Poly<K>& f) {
    Mumford<K> z;
    z.u = Poly<K>::constant(ring_one(f.lc()));
    z.v = Poly<K>();
    return z;
}

template <class K>
Mumford<K> cantor_mul(const Poly<K>& f, Mumford<K> D, long n) {
    Mumford<K> acc = cantor_zero(f);
    if (n < 0) {
        D = cantor_neg(D);
        n = -n;
    }
    while (n) {
        if (n & 1) acc = cantor_add(f, acc, D);
        D = cantor_add(f, D, D);
        n >>= 1;
    }
    return acc;
}

// ---- Weil pairing over finite fields ----

// Divisor on y^p = f(x) over F_q given in closed-form-friendly parts, as in
// the global evaluation (x-orbits and branch orbits minus a multiple of oo).
struct FFDivisorPart {
    enum Kind { Point, XOrbit } kind;  // XOrbit: one point per root of a
    Fq x0, y0;                         // Point
    Poly<Fq> a;                        // XOrbit x-coordinates
    Poly<Fq> yrep;                     // y = yrep(x) mod a on the orbit
    int mult = 1;
};
struct FFDivisor {
    std::vector<FFDivisorPart> parts;
};

// Function of the form c * prod g_i(x)^{n_i} * prod (y - l_j(x))^{m_j} on
// y^p = f(x). Factors of y - l(x) with deg l = 0 cover (y - b).
struct FFFunction {
    Fq c;
    std::vector<std::pair<Poly<Fq>, int>> xpolyfactors;
    std::vector<std::pair<Poly<Fq>, int>> ylinefactors;

    // order of the pole at the unique infinite place of y^p = f(x), deg f = d
    long infinity_pole(long p, long d) const;
};

// Infinity multiplicity making the divisor degree 0 is implied: parts short of
// degree 0 are balanced at infinity. `p`, `d` fix the model.
struct FFDivisorCtx {
    Poly<Fq> f;
    long p;
    long d() const { return f.degree(); }
};

// Evaluate h on the affine parts of D; infinity contributes h's normalized
// leading value (monic data: 1) raised to the infinity multiplicity, valid
// only when h has no zero/pole at infinity.
Fq ff_evaluate(const FFDivisorCtx& ctx, const FFFunction& h, const FFDivisor& D);

// e_q pairing of q-torsion classes with witnesses h_i, div(h_i) = q E_i:
// h2(E1) / h1(E2). Supports (including infinity) must be disjoint.
Fq weil_pairing_ff(const FFDivisorCtx& ctx, const FFFunction& h1, const FFDivisor& E1,
                   const FFFunction& h2, const FFDivisor& E2);

// Representative of the 2-torsion class [(alpha,0) - oo] on y^2 = f(x)
// (genus 2) with affine support avoiding branch points and infinity, plus a
// witness with divisor exactly twice the representative. Uses the chord
// through (alpha,0) and the two fiber points over c and c'.
struct TorsionRep {
    FFDivisor E;
    FFFunction h;
};
std::optional<TorsionRep> ff_two_torsion_rep(const FFDivisorCtx& ctx, const Fq& alpha,
                                             const Fq& c1, const Fq& c2);

}  // namespace selmer
