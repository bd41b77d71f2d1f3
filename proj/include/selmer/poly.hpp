#pragma once

#include "selmer/intq.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <vector>

namespace selmer {

// Context-aware zero/one: types whose elements carry a runtime field context
// overload these with a sample element.
inline Rat ring_zero(const Rat&) { return Rat(0); }
inline Rat ring_one(const Rat&) { return Rat(1); }
inline Int ring_zero(const Int&) { return Int(0); }
inline Int ring_one(const Int&) { return Int(1); }

// Dense univariate polynomial, coefficients low-degree first.
// Zero polynomial == empty coefficient vector.
template <class K>
struct Poly {
    std::vector<K> c;

    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { normalize(); }

    static Poly zero() { return Poly(); }
    static Poly constant(const K& a) {
        Poly p;
        if (!(a == ring_zero(a))) p.c.push_back(a);
        return p;
    }
    // x^n with given leading coefficient
    static Poly monomial(const K& a, int n) {
        Poly p;
        if (a == ring_zero(a)) return p;
        p.c.assign(n, ring_zero(a));
        p.c.push_back(a);
        return p;
    }

    void normalize() {
        while (!c.empty() && c.back() == ring_zero(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const K& lc() const {
        if (c.empty()) throw ComputationError("lc of zero polynomial");
        return c.back();
    }
    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size())) {
            if (c.empty()) throw ComputationError("coeff of zero polynomial needs context");
            return ring_zero(c[0]);
        }
        return c[i];
    }
    bool is_monic() const { return !c.empty() && c.back() == ring_one(c.back()); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        Poly r;
        size_t n = std::max(a.c.size(), b.c.size());
        r.c.reserve(n);
        K z = ring_zero(a.c[0]);
        for (size_t i = 0; i < n; ++i) {
            K s = (i < a.c.size() ? a.c[i] : z);
            if (i < b.c.size()) s = s + b.c[i];
            r.c.push_back(s);
        }
        r.normalize();
        return r;
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& x : r.c) x = ring_zero(x) - x;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly r;
        K z = ring_zero(a.c[0]);
        r.c.assign(a.c.size() + b.c.size() - 1, z);
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == z) continue;
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
        r.normalize();
        return r;
    }
    Poly scaled(const K& s) const {
        Poly r = *this;
        for (auto& x : r.c) x = x * s;
        r.normalize();
        return r;
    }

    K eval(const K& x) const {
        if (c.empty()) return ring_zero(x);
        K r = c.back();
        for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) r = r * x + c[i];
        return r;
    }
    // Evaluate with coefficient mapping (e.g. Q-poly at a number field element).
    template <class T, class F>
    T eval_mapped(const T& x, F&& lift) const {
        T r = ring_zero(x);
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * x + lift(c[i]);
        return r;
    }

    Poly derivative() const {
        if (c.size() <= 1) return Poly();
        Poly r;
        r.c.reserve(c.size() - 1);
        K one = ring_one(c[0]);
        K n = one;
        for (size_t i = 1; i < c.size(); ++i) {
            r.c.push_back(c[i] * n);
            n = n + one;
        }
        r.normalize();
        return r;
    }

    Poly shifted(int n) const {  // * x^n
        if (is_zero()) return Poly();
        Poly r;
        r.c.assign(n, ring_zero(c[0]));
        r.c.insert(r.c.end(), c.begin(), c.end());
        return r;
    }

    Poly reversed() const {
        Poly r = *this;
        std::reverse(r.c.begin(), r.c.end());
        r.normalize();
        return r;
    }

    template <class F>
    auto map(F&& f) const -> Poly<std::decay_t<decltype(f(c[0]))>> {
        Poly<std::decay_t<decltype(f(c[0]))>> r;
        r.c.reserve(c.size());
        for (auto& x : c) r.c.push_back(f(x));
        r.normalize();
        return r;
    }
};

// Division with remainder; requires invertible leading coefficient (field K,
// or monic divisor over a ring).
template <class K>
std::pair<Poly<K>, Poly<K>> poly_divrem(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero()) throw ComputationError("polynomial division by zero");
    Poly<K> r = a, q;
    if (a.degree() < b.degree()) return {q, r};
    K one = ring_one(b.lc());
    K inv_lc = one / b.lc();
    q.c.assign(a.degree() - b.degree() + 1, ring_zero(b.lc()));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int d = r.degree() - b.degree();
        K f = r.lc() * inv_lc;
        q.c[d] = q.c[d] + f;
        for (int i = 0; i < b.degree(); ++i) r.c[i + d] = r.c[i + d] - f * b.c[i];
        r.c[b.degree() + d] = ring_zero(f);  // exact cancellation by construction
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

template <class K>
Poly<K> poly_mod(const Poly<K>& a, const Poly<K>& b) {
    return poly_divrem(a, b).second;
}

template <class K>
Poly<K> poly_monic(const Poly<K>& a) {
    if (a.is_zero()) return a;
    K inv = ring_one(a.lc()) / a.lc();
    return a.scaled(inv);
}

// Monic gcd over a field.
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = poly_mod(a, b);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return poly_monic(a);
}

// Extended gcd over a field: g = u*a + v*b, g monic.
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_xgcd(Poly<K> a, Poly<K> b) {
    if (a.is_zero() && b.is_zero()) return {Poly<K>(), Poly<K>(), Poly<K>()};
    const K one = ring_one(a.is_zero() ? b.lc() : a.lc());
    Poly<K> u0 = Poly<K>::constant(one), v0, u1, v1 = Poly<K>::constant(one);
    while (!b.is_zero()) {
        auto [q, r] = poly_divrem(a, b);
        a = b;
        b = r;
        Poly<K> u2 = u0 - q * u1, v2 = v0 - q * v1;
        u0 = u1; v0 = v1;
        u1 = u2; v1 = v2;
    }
    K inv = one / a.lc();
    return {a.scaled(inv), u0.scaled(inv), v0.scaled(inv)};
}

template <class K>
bool poly_is_squarefree(const Poly<K>& a) {
    if (a.degree() <= 1) return !a.is_zero();
    return poly_gcd(a, a.derivative()).degree() == 0;
}

// Resultant over a field via the classical PRS with leading-coefficient
// bookkeeping.
template <class K>
K poly_resultant(Poly<K> a, Poly<K> b) {
    if (a.is_zero() || b.is_zero()) {
        const K z = ring_zero(a.is_zero() ? (b.is_zero() ? K() : b.lc()) : a.lc());
        return z;
    }
    K res = ring_one(a.lc());
    bool neg = false;
    while (true) {
        if (b.degree() == 0) {
            K v = b.lc();
            K acc = ring_one(v);
            for (int i = 0; i < a.degree(); ++i) acc = acc * v;
            res = res * acc;
            break;
        }
        Poly<K> r = poly_mod(a, b);
        if (r.is_zero()) return ring_zero(a.lc());
        // res *= lc(b)^(deg a - deg r); sign (-1)^(deg a * deg b)
        K acc = ring_one(b.lc());
        for (int i = 0; i < a.degree() - r.degree(); ++i) acc = acc * b.lc();
        res = res * acc;
        if ((a.degree() & 1) && (b.degree() & 1)) neg = !neg;
        a = b;
        b = r;
    }
    if (neg) res = ring_zero(res) - res;
    return res;
}

template <class K>
K poly_discriminant(const Poly<K>& f) {
    if (f.degree() < 1) throw ComputationError("discriminant needs degree >= 1");
    K r = poly_resultant(f, f.derivative());
    K lc_inv = ring_one(f.lc()) / f.lc();
    r = r * lc_inv;
    int d = f.degree();
    if (((d * (d - 1)) / 2) % 2 == 1) r = ring_zero(r) - r;
    return r;
}

// Compose: a(b(x)).
template <class K>
Poly<K> poly_compose(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r;
    for (int i = a.degree(); i >= 0; --i) r = r * b + Poly<K>::constant(a.coeff(i));
    return r;
}

// ---- Rational/integer polynomial helpers ----

using QPoly = Poly<Rat>;
using ZPoly = Poly<Int>;

inline ZPoly qpoly_to_z(const QPoly& f, Rat* content = nullptr) {
    // primitive integer polynomial +'content' with f = content * prim
    if (f.is_zero()) {
        if (content) *content = 0;
        return ZPoly();
    }
    Int den = 1;
    for (auto& q : f.c) den = int_lcm(den, q.get_den());
    std::vector<Int> ic;
    ic.reserve(f.c.size());
    for (auto& q : f.c) ic.push_back(Int(q.get_num() * (den / q.get_den())));
    Int g = 0;
    for (auto& z : ic) g = int_gcd(g, z);
    if (g == 0) g = 1;
    bool neg = ic.back() < 0;
    if (neg) g = -g;
    for (auto& z : ic) z /= g;
    if (content) {
        Rat cont(g, den);
        cont.canonicalize();
        *content = cont;
    }
    return ZPoly(ic);
}

inline QPoly zpoly_to_q(const ZPoly& f) {
    return f.map([](const Int& z) { return Rat(z); });
}

inline std::string poly_to_string(const QPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        Rat a = f.coeff(i);
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        Rat aa = abs(a);
        first = false;
        if (i == 0 || aa != 1) {
            os << aa.get_str();
            if (i > 0) os << "*";
        }
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace selmer
