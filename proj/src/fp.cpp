#include "selmer/fp.hpp"

#include <functional>
#include <map>

namespace selmer {

namespace {

// Random monic-ish polynomial of degree < n.
FpPoly random_poly(uint64_t p, int n, DetRng& rng) {
    std::vector<Fp> c;
    c.reserve(n);
    for (int i = 0; i < n; ++i) c.emplace_back(rng.below(p), p);
    return FpPoly(std::move(c));
}

// Equal-degree splitting: f monic squarefree, all irreducible factors of
// degree d. Cantor-Zassenhaus; p == 2 uses the trace map.
void edf(const FpPoly& f, int d, DetRng& rng, std::vector<FpPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    uint64_t p = f.lc().p;
    FpPoly one = FpPoly::constant(Fp(1, p));
    for (;;) {
        FpPoly a = random_poly(p, f.degree(), rng);
        if (a.degree() < 1) continue;
        FpPoly g = poly_gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(poly_divrem(f, g).first, d, rng, out);
            return;
        }
        FpPoly b;
        if (p == 2) {
            // trace map: a + a^2 + a^4 + ... (2^(d-1) terms over F_2)
            b = a;
            FpPoly t = a;
            for (int i = 1; i < d; ++i) {
                t = poly_mod(t * t, f);
                b = b + t;
            }
        } else {
            Int e = (int_pow(Int(static_cast<unsigned long>(p)), d) - 1) / 2;
            b = fp_powmod(a, e, f) - one;
        }
        g = poly_gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(poly_divrem(f, g).first, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FpPoly> fp_factor_squarefree(const FpPoly& f0, DetRng& rng) {
    std::vector<FpPoly> out;
    FpPoly f = poly_monic(f0);
    if (f.degree() <= 0) return out;
    uint64_t p = f.lc().p;
    FpPoly x = fp_x(p);
    FpPoly h = x;
    int d = 0;
    while (f.degree() >= 2 * (d + 1)) {
        ++d;
        h = fp_powmod(h, Int(static_cast<unsigned long>(p)), f);
        FpPoly g = poly_gcd(h - x, f);
        if (g.degree() > 0) {
            edf(g, d, rng, out);
            f = poly_divrem(f, g).first;
            h = poly_mod(h, f);
        }
    }
    if (f.degree() > 0) out.push_back(f);
    return out;
}

std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f0) {
    if (f0.is_zero()) throw ComputationError("factor of zero polynomial");
    uint64_t p = f0.lc().p;
    DetRng rng(0x5e1f00d ^ (p * 1000003 + f0.degree()));
    std::map<std::vector<uint64_t>, std::pair<FpPoly, int>> acc;
    auto add = [&](const FpPoly& g, int mult) {
        std::vector<uint64_t> key;
        for (auto& c : g.c) key.push_back(c.v);
        auto it = acc.find(key);
        if (it == acc.end()) acc.emplace(key, std::make_pair(g, mult));
        else it->second.second += mult;
    };
    // squarefree decomposition handling p-th power parts
    std::function<void(FpPoly, int)> sqf = [&](FpPoly f, int mult) {
        f = poly_monic(f);
        if (f.degree() <= 0) return;
        FpPoly df = f.derivative();
        if (df.is_zero()) {
            // f = g(x^p); p-th root is coefficient extraction (Frobenius fixes F_p)
            std::vector<Fp> c;
            for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(f.coeff(i));
            sqf(FpPoly(std::move(c)), mult * static_cast<int>(p));
            return;
        }
        FpPoly g = poly_gcd(f, df);
        FpPoly sf = poly_divrem(f, g).first;  // squarefree part
        DetRng local(rng.next());
        for (auto& irr : fp_factor_squarefree(sf, local)) {
            // multiplicity: divide out
            FpPoly rem = f;
            int m = 0;
            for (;;) {
                auto [q, r] = poly_divrem(rem, irr);
                if (!r.is_zero()) break;
                rem = q;
                ++m;
            }
            add(irr, m * mult);
        }
    };
    sqf(f0, 1);
    std::vector<std::pair<FpPoly, int>> out(acc.size());
    size_t i = 0;
    for (auto& [k, v] : acc) out[i++] = v;
    return out;
}

std::vector<Fp> fp_roots(const FpPoly& f) {
    std::vector<Fp> out;
    for (auto& [g, m] : fp_factor(f))
        if (g.degree() == 1) out.push_back(ring_zero(g.lc()) - g.coeff(0));
    return out;
}

bool fp_is_irreducible(const FpPoly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    uint64_t p = f.lc().p;
    FpPoly fm = poly_monic(f);
    FpPoly x = fp_x(p);
    // x^(p^n) == x mod f, and gcd(x^(p^(n/l)) - x, f) == 1 for prime l | n
    int n = fm.degree();
    FpPoly h = x;
    for (int i = 0; i < n; ++i) h = fp_powmod(h, Int(static_cast<unsigned long>(p)), fm);
    if (!(poly_mod(h - x, fm).is_zero())) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lp = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) { lp = false; break; }
        if (!lp) continue;
        FpPoly g = x;
        for (int i = 0; i < n / l; ++i) g = fp_powmod(g, Int(static_cast<unsigned long>(p)), fm);
        if (poly_gcd(g - x, fm).degree() != 0) return false;
    }
    return true;
}

FpPoly fp_find_irreducible(uint64_t p, int k) {
    if (k == 1) return fp_x(p);
    // enumerate monic degree-k polynomials by increasing coefficient index
    Int total = int_pow(Int(static_cast<unsigned long>(p)), k);
    for (Int idx = 0; idx < total; ++idx) {
        Int t = idx;
        std::vector<Fp> c;
        for (int i = 0; i < k; ++i) {
            c.emplace_back(Int(t % p).get_ui(), p);
            t /= static_cast<unsigned long>(p);
        }
        c.emplace_back(1, p);
        FpPoly f{std::move(c)};
        if (fp_is_irreducible(f)) return f;
    }
    throw ComputationError("no irreducible polynomial found (impossible)");
}

Fq fq_generator(const std::shared_ptr<const FqCtx>& ctx) {
    Int order = ctx->q - 1;
    auto fac = factor_integer(order);
    for (uint64_t idx = 1;; ++idx) {
        if (Int(idx) >= ctx->q) throw ComputationError("no generator found (impossible)");
        Fq g = Fq::from_index(ctx, idx);
        if (g.is_zero()) continue;
        bool ok = true;
        for (auto& [pr, e] : fac)
            if (g.pow(order / pr) == ring_one(g)) { ok = false; break; }
        if (ok) return g;
    }
}

Int fq_dlog(const Fq& g, const Fq& x) {
    if (x.is_zero()) throw ComputationError("dlog of zero");
    Fq cur = ring_one(g);
    Int order = g.ctx->q - 1;
    for (Int i = 0; i < order; ++i) {
        if (cur == x) return i;
        cur = cur * g;
    }
    throw ComputationError("dlog: element not in cyclic group of generator");
}

std::vector<Fq> fq_roots_brute(const Poly<Fq>& f) {
    std::vector<Fq> out;
    if (f.is_zero()) throw ComputationError("roots of zero polynomial");
    const auto& ctx = f.lc().ctx;
    Int q = ctx->q;
    if (q > 2000000) throw ComputationError("fq_roots_brute: field too large");
    for (uint64_t i = 0; Int(i) < q; ++i) {
        Fq a = Fq::from_index(ctx, i);
        if (f.eval(a).is_zero()) out.push_back(a);
    }
    return out;
}

}  // namespace selmer
