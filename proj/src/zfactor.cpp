#include "selmer/zfactor.hpp"

#include <algorithm>
#include <bitset>
#include <functional>
#include <set>

namespace selmer {

namespace {

Int zpoly_max_abs(const ZPoly& f) {
    Int m = 0;
    for (auto& c : f.c) m = std::max(m, Int(abs(c)));
    return m;
}

ZPoly zpoly_symmetric_mod(const ZPoly& f, const Int& m) {
    ZPoly r = f;
    Int half = m / 2;
    for (auto& c : r.c) {
        c = int_mod(c, m);
        if (c > half) c -= m;
    }
    r.normalize();
    return r;
}

// Exact division test over Z; returns quotient if divisible.
std::optional<ZPoly> zpoly_divides(const ZPoly& f, const ZPoly& g) {
    QPoly qf = zpoly_to_q(f), qg = zpoly_to_q(g);
    auto [q, r] = poly_divrem(qf, qg);
    if (!r.is_zero()) return std::nullopt;
    for (auto& c : q.c)
        if (!rat_is_integer(c)) return std::nullopt;
    return q.map([](const Rat& x) { return Int(x.get_num()); });
}

// Linear Hensel lift of a coprime pair: f == g*h mod p^m  ->  mod p^(m+1).
// f, g, h monic over Z.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, uint64_t p, const Int& pm) {
    ZPoly prod = g * h;
    ZPoly diff = f - prod;
    FpPoly e = zpoly_mod_p(diff.map([&](const Int& c) { return Int(c / pm); }),
                           p);
    if (e.is_zero()) return;
    FpPoly gp = zpoly_mod_p(g, p), hp = zpoly_mod_p(h, p);
    auto [d, u, v] = poly_xgcd(gp, hp);
    if (d.degree() != 0) throw ComputationError("hensel_step: factors not coprime mod p");
    // A*h + B*g == e (mod p), deg A < deg g
    FpPoly A = poly_mod(v * e, gp);
    FpPoly B = poly_divrem(e - A * hp, gp).first;
    g = g + fppoly_lift(A).map([&](const Int& c) { return Int(c * pm); });
    h = h + fppoly_lift(B).map([&](const Int& c) { return Int(c * pm); });
}

}  // namespace

std::vector<ZPoly> hensel_lift_monic_factors(const ZPoly& f, std::vector<ZPoly> parts,
                                             uint64_t p, const Int& target, Int& modulus_out) {
    Int pm(static_cast<unsigned long>(p));
    Int pk = pm;
    while (pk < target) pk *= pm;
    // one-at-a-time: lift (g_i, product of the rest)
    std::function<void(ZPoly, std::vector<ZPoly>&, size_t)> lift_range =
        [&](ZPoly fcur, std::vector<ZPoly>& fs, size_t lo) {
            if (lo + 1 >= fs.size()) {
                if (lo < fs.size()) fs[lo] = zpoly_symmetric_mod(fcur, pk);
                return;
            }
            ZPoly g = fs[lo];
            ZPoly h = fppoly_lift(FpPoly::constant(Fp(1, p)));
            for (size_t j = lo + 1; j < fs.size(); ++j) h = h * fs[j];
            h = zpoly_symmetric_mod(h, Int(static_cast<unsigned long>(p)));
            Int m(static_cast<unsigned long>(p));
            while (m < pk) {
                hensel_step(fcur, g, h, p, m);
                m *= static_cast<unsigned long>(p);
                g = zpoly_symmetric_mod(g, m);
                h = zpoly_symmetric_mod(h, m);
            }
            fs[lo] = g;
            lift_range(h, fs, lo + 1);
        };
    lift_range(f, parts, 0);
    modulus_out = pk;
    return parts;
}

namespace {

// Lift the modular factorization of monic squarefree f to modulus >= target.
std::vector<ZPoly> hensel_lift_all(const ZPoly& f, std::vector<FpPoly> fac, uint64_t p,
                                   const Int& target, Int& modulus_out) {
    std::sort(fac.begin(), fac.end(), [](const FpPoly& a, const FpPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i)
            if (a.coeff(i).v != b.coeff(i).v) return a.coeff(i).v < b.coeff(i).v;
        return false;
    });
    std::vector<ZPoly> lifted;
    for (auto& g : fac) lifted.push_back(fppoly_lift(poly_monic(g)));
    return hensel_lift_monic_factors(f, std::move(lifted), p, target, modulus_out);
}

// Zassenhaus on a monic squarefree integer polynomial; returns monic integer
// irreducible factors.
std::vector<ZPoly> zassenhaus_monic(const ZPoly& f) {
    int n = f.degree();
    std::vector<ZPoly> out;
    if (n <= 1) {
        out.push_back(f);
        return out;
    }
    // choose a prime keeping f squarefree mod p, minimizing modular factors
    uint64_t best_p = 0;
    std::vector<FpPoly> best_fac;
    Int pcand = 2;
    int tried = 0;
    while (tried < 5) {
        uint64_t p = pcand.get_ui();
        pcand = next_prime(pcand);
        FpPoly fp = zpoly_mod_p(f, p);
        if (fp.degree() != n) continue;  // p | lc (monic: impossible, keep safe)
        if (!poly_is_squarefree(fp)) continue;
        ++tried;
        DetRng rng(0xfac70 + p);
        auto fac = fp_factor_squarefree(poly_monic(fp), rng);
        if (best_p == 0 || fac.size() < best_fac.size()) {
            best_p = p;
            best_fac = fac;
            if (best_fac.size() == 1) break;
        }
    }
    if (best_p == 0) throw ComputationError("zassenhaus: no good prime found");
    if (best_fac.size() == 1) {
        out.push_back(f);
        return out;
    }
    // Mignotte-style bound: |g|_inf <= 2^n * sqrt(n+1) * |f|_inf for g | f
    Int B = zpoly_max_abs(f);
    B *= int_pow(Int(2), n + 2);
    B *= Int(n + 1);
    Int modulus;
    std::vector<ZPoly> lifted = hensel_lift_all(f, best_fac, best_p, 2 * B + 1, modulus);

    std::vector<bool> used(lifted.size(), false);
    ZPoly rem = f;
    size_t card = 1;
    for (;;) {
        std::vector<size_t> avail;
        for (size_t i = 0; i < lifted.size(); ++i)
            if (!used[i]) avail.push_back(i);
        if (avail.empty() || 2 * card > avail.size()) break;
        std::vector<size_t> idx(card);
        bool found = false;
        std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t start) -> bool {
            if (pos == card) {
                ZPoly prod = ZPoly(std::vector<Int>{Int(1)});
                for (size_t k : idx) prod = zpoly_symmetric_mod(prod * lifted[k], modulus);
                auto q = zpoly_divides(rem, prod);
                if (q) {
                    out.push_back(prod);
                    rem = *q;
                    for (size_t k : idx) used[k] = true;
                    return true;
                }
                return false;
            }
            for (size_t s = start; s < avail.size(); ++s) {
                idx[pos] = avail[s];
                if (rec(pos + 1, s + 1)) return true;
            }
            return false;
        };
        found = rec(0, 0);
        if (!found) ++card;
    }
    if (!rem.is_zero() && rem.degree() > 0) out.push_back(rem);
    std::sort(out.begin(), out.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i)
            if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
        return false;
    });
    return out;
}

}  // namespace

QFactorization q_factor(const QPoly& f) {
    if (f.is_zero()) throw ComputationError("q_factor of zero polynomial");
    QFactorization res;
    res.unit = f.lc();
    QPoly g = poly_monic(f);
    if (g.degree() > 0) {
        QPoly sf = poly_divrem(g, poly_gcd(g, g.derivative())).first;  // squarefree part
        Rat content;
        ZPoly zf = qpoly_to_z(sf, &content);
        Int lc = zf.lc();
        // monicize over Z: F(x) = lc^(n-1) * zf(x/lc)
        int n = zf.degree();
        ZPoly F;
        F.c.assign(n + 1, Int(0));
        F.c[n] = 1;
        for (int i = 0; i < n; ++i) F.c[i] = zf.coeff(i) * int_pow(lc, n - 1 - i);
        F.normalize();
        for (auto& Gm : zassenhaus_monic(F)) {
            QPoly G = zpoly_to_q(Gm);
            QPoly gi = poly_monic(poly_compose(G, QPoly::monomial(Rat(lc), 1)));
            int m = 0;
            for (;;) {
                auto [q, r] = poly_divrem(g, gi);
                if (!r.is_zero()) break;
                g = q;
                ++m;
            }
            if (m > 0) res.factors.emplace_back(gi, m);
        }
        if (g.degree() > 0)
            throw ComputationError("q_factor: incomplete factorization (internal)");
    }
    std::sort(res.factors.begin(), res.factors.end(), [](auto& a, auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i)
            if (a.first.coeff(i) != b.first.coeff(i)) return a.first.coeff(i) < b.first.coeff(i);
        return false;
    });
    return res;
}

bool q_is_irreducible(const QPoly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    if (q_irreducible_by_degree_patterns(f)) return true;
    auto fac = q_factor(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

std::vector<Rat> q_roots(const QPoly& f) {
    std::vector<Rat> out;
    for (auto& [g, m] : q_factor(f).factors)
        if (g.degree() == 1) out.push_back(-g.coeff(0));
    std::sort(out.begin(), out.end());
    return out;
}

bool q_irreducible_by_degree_patterns(const QPoly& f, int num_primes) {
    Rat content;
    ZPoly zf = qpoly_to_z(f, &content);
    int n = zf.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    std::set<int> possible;  // attainable proper factor degrees, intersected
    for (int i = 1; i < n; ++i) possible.insert(i);
    Int pcand = 2;
    int good = 0;
    int attempts = 0;
    while (good < num_primes && attempts < 30) {
        uint64_t p = pcand.get_ui();
        pcand = next_prime(pcand);
        ++attempts;
        if (int_mod(zf.lc(), Int(static_cast<unsigned long>(p))) == 0) continue;
        FpPoly fp = zpoly_mod_p(zf, p);
        if (!poly_is_squarefree(fp)) continue;
        ++good;
        DetRng rng(0xde6 + p);
        auto fac = fp_factor_squarefree(poly_monic(fp), rng);
        // subset-sum attainable degrees
        std::bitset<64> reach;
        reach[0] = 1;
        for (auto& g : fac) {
            auto prev = reach;
            for (int d = 0; d + g.degree() <= n && d < 64; ++d)
                if (prev[d]) reach[d + g.degree()] = 1;
        }
        std::set<int> now;
        for (int d = 1; d < n; ++d)
            if (reach[d]) now.insert(d);
        std::set<int> inter;
        std::set_intersection(possible.begin(), possible.end(), now.begin(), now.end(),
                              std::inserter(inter, inter.begin()));
        possible = inter;
        if (possible.empty()) return true;
    }
    return false;
}

}  // namespace selmer
