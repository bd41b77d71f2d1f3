#include "selmer/ffcurve.hpp"

#include <algorithm>

namespace selmer {

std::vector<std::pair<Poly<Fq>, int>> fq_factor_small(const Poly<Fq>& f0) {
    if (f0.is_zero()) throw ComputationError("fq_factor_small: zero polynomial");
    Poly<Fq> f = poly_monic(f0);
    const auto& ctx = f.lc().ctx;
    if (ctx->q > 1000000) throw ComputationError("fq_factor_small: field too large");
    std::vector<std::pair<Poly<Fq>, int>> out;
    // strip roots
    uint64_t qq = ctx->q.get_ui();
    for (uint64_t i = 0; i < qq && f.degree() > 0; ++i) {
        Fq a = Fq::from_index(ctx, i);
        if (!f.eval(a).is_zero()) continue;
        Poly<Fq> lin({ring_zero(a) - a, ring_one(a)});
        int m = 0;
        for (;;) {
            auto [q, r] = poly_divrem(f, lin);
            if (!r.is_zero()) break;
            f = q;
            ++m;
        }
        if (m) out.emplace_back(lin, m);
    }
    if (f.degree() == 0) return out;
    if (f.degree() == 1) {
        out.emplace_back(f, 1);
        return out;
    }
    if (f.degree() <= 3) {  // no roots: degree 2 or 3 is irreducible
        out.emplace_back(f, 1);
        return out;
    }
    if (f.degree() == 4) {
        // either irreducible or a product of two rootless quadratics
        if (ctx->q > 2000)
            throw ComputationError("fq_factor_small: quartic over large field unsupported");
        for (uint64_t bi = 0; bi < qq; ++bi)
            for (uint64_t ci = 0; ci < qq; ++ci) {
                Fq b = Fq::from_index(ctx, bi), c = Fq::from_index(ctx, ci);
                Poly<Fq> quad({c, b, ring_one(b)});
                auto [q, r] = poly_divrem(f, quad);
                if (!r.is_zero()) continue;
                if (quad == q) out.emplace_back(quad, 2);
                else {
                    out.emplace_back(quad, 1);
                    out.emplace_back(q, 1);
                }
                return out;
            }
        out.emplace_back(f, 1);
        return out;
    }
    throw ComputationError("fq_factor_small: degree > 4 residual unsupported");
}

namespace {

struct SuperFF {
    long p;
    ZPoly fz;  // integer model of f
};

std::optional<SuperFF> superelliptic_rational_model(const SuperellipticModel& C) {
    SuperFF m;
    m.p = C.p;
    std::vector<Int> c;
    Int den = 1;
    for (auto& cc : C.f.c) {
        if (!cc.is_rational()) return std::nullopt;
        den = int_lcm(den, Int(cc.to_rational().get_den()));
    }
    if (den != 1) return std::nullopt;
    for (auto& cc : C.f.c) c.push_back(Int(cc.to_rational().get_num()));
    m.fz = ZPoly(std::move(c));
    return m;
}

Int count_superelliptic(const SuperFF& m, const Int& s, int k) {
    auto ctx = FqCtx::make(s.get_ui(), k);
    Int q = ctx->q;
    Int d = int_gcd(Int(m.p), q - 1);
    Int expn = (q - 1) / d;
    Poly<Fq> f = m.fz.map([&](const Int& z) { return Fq::from_int(ctx, z); });
    Int count = 1;  // the point at infinity
    for (uint64_t i = 0; Int(i) < q; ++i) {
        Fq x = Fq::from_index(ctx, i);
        Fq c = f.eval(x);
        if (c.is_zero()) count += 1;
        else if (c.pow(expn) == ring_one(c)) count += d;
    }
    return count;
}

struct QuarticFF {
    std::vector<std::vector<Int>> c;  // 5x5 triangle, integer-cleared
    Int den;
};

std::optional<QuarticFF> quartic_rational_model(const QuarticModel& C) {
    QuarticFF m;
    m.den = 1;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j) {
            const NfElem& cc = C.coeff[i][j];
            if (!cc.is_zero() && !cc.is_rational()) return std::nullopt;
            if (!cc.is_zero()) m.den = int_lcm(m.den, Int(cc.to_rational().get_den()));
        }
    m.c.assign(5, std::vector<Int>(5, Int(0)));
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j) {
            const NfElem& cc = C.coeff[i][j];
            if (cc.is_zero()) continue;
            Rat r = cc.to_rational() * Rat(m.den);
            m.c[i][j] = Int(r.get_num());
        }
    return m;
}

Int count_quartic(const QuarticFF& m, const Int& s, int k) {
    auto ctx = FqCtx::make(s.get_ui(), k);
    Int q = ctx->q;
    std::vector<std::vector<Fq>> c(5, std::vector<Fq>(5, Fq::from_int(ctx, Int(0))));
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j) c[i][j] = Fq::from_int(ctx, m.c[i][j]);
    auto evalf = [&](const Fq& x, const Fq& y, const Fq& z) {
        Fq acc = Fq::from_int(ctx, Int(0));
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; i + j <= 4; ++j) {
                if (c[i][j].is_zero()) continue;
                Fq t = c[i][j];
                for (int n = 0; n < i; ++n) t = t * x;
                for (int n = 0; n < j; ++n) t = t * y;
                for (int n = 0; n < 4 - i - j; ++n) t = t * z;
                acc = acc + t;
            }
        return acc;
    };
    Fq one = Fq::from_int(ctx, Int(1)), zero = Fq::from_int(ctx, Int(0));
    Int count = 0;
    for (uint64_t i = 0; Int(i) < q; ++i) {
        Fq x = Fq::from_index(ctx, i);
        for (uint64_t j = 0; Int(j) < q; ++j) {
            Fq y = Fq::from_index(ctx, j);
            if (evalf(x, y, one).is_zero()) count += 1;
        }
    }
    for (uint64_t i = 0; Int(i) < q; ++i) {
        Fq x = Fq::from_index(ctx, i);
        if (evalf(x, one, zero).is_zero()) count += 1;
    }
    if (evalf(one, zero, zero).is_zero()) count += 1;
    return count;
}

}  // namespace

CountResult count_points_frobenius(const CurveModel& C, const Int& s, int k_max, const Int& cap) {
    if (!is_prime(s)) throw ConfigError("count_points_frobenius: s must be prime");
    CountResult res;
    long g = genus_of_model(C);
    std::vector<Int> counts;
    if (std::holds_alternative<SuperellipticModel>(C)) {
        const auto& SC = std::get<SuperellipticModel>(C);
        auto m = superelliptic_rational_model(SC);
        if (!m) throw ConfigError("counting needs an integral rational model");
        if (s == m->p) throw ComputationError("singular reduction at " + s.get_str() +
                                              " (the superelliptic exponent)");
        FpPoly fs = zpoly_mod_p(m->fz, s.get_ui());
        if (fs.degree() != m->fz.degree() || !poly_is_squarefree(fs))
            throw ComputationError("singular reduction at " + s.get_str());
        for (int k = 1; k <= k_max; ++k) {
            if (int_pow(s, k) > cap)
                throw BudgetError("enumeration cap exceeded at " + s.get_str() + "^" +
                                  std::to_string(k) + "; raise the cap to proceed");
            counts.push_back(count_superelliptic(*m, s, k));
        }
    } else {
        const auto& QC = std::get<QuarticModel>(C);
        auto m = quartic_rational_model(QC);
        if (!m) throw ConfigError("counting needs an integral rational model");
        if (int_mod(m->den, s) == 0) throw ComputationError("bad reduction at " + s.get_str());
        // smoothness of the reduction via direct enumeration over F_s
        {
            uint64_t p = s.get_ui();
            if (Int(p) > 1000)
                throw BudgetError("smoothness scan cap exceeded at " + s.get_str());
            std::vector<std::vector<Fp>> c(5, std::vector<Fp>(5, Fp(0, p)));
            auto deninv = mod_inverse(m->den, s);
            for (int i = 0; i <= 4; ++i)
                for (int j = 0; i + j <= 4; ++j)
                    c[i][j] = Fp::from_int(m->c[i][j] * *deninv, p);
            auto evalf = [&](Fp x, Fp y, Fp z) {
                Fp acc(0, p);
                for (int i = 0; i <= 4; ++i)
                    for (int j = 0; i + j <= 4; ++j) {
                        if (c[i][j].v == 0) continue;
                        Fp t = c[i][j];
                        for (int n = 0; n < i; ++n) t = t * x;
                        for (int n = 0; n < j; ++n) t = t * y;
                        for (int n = 0; n < 4 - i - j; ++n) t = t * z;
                        acc = acc + t;
                    }
                return acc;
            };
            auto evald = [&](int which, Fp x, Fp y, Fp z) {
                Fp acc(0, p);
                for (int i = 0; i <= 4; ++i)
                    for (int j = 0; i + j <= 4; ++j) {
                        if (c[i][j].v == 0) continue;
                        int kk = 4 - i - j;
                        int e[3] = {i, j, kk};
                        if (e[which] == 0) continue;
                        Fp t = c[i][j] * Fp(static_cast<uint64_t>(e[which]), p);
                        int ei = i - (which == 0 ? 1 : 0), ej = j - (which == 1 ? 1 : 0),
                            ek = kk - (which == 2 ? 1 : 0);
                        for (int n = 0; n < ei; ++n) t = t * x;
                        for (int n = 0; n < ej; ++n) t = t * y;
                        for (int n = 0; n < ek; ++n) t = t * z;
                        acc = acc + t;
                    }
                return acc;
            };
            for (uint64_t x = 0; x <= p; ++x)
                for (uint64_t y = 0; y <= p; ++y) {
                    // charts: (x,y,1), (x,1,0), (1,0,0)
                    Fp X(0, p), Y(0, p), Z(0, p);
                    if (x < p && y < p) { X = Fp(x, p); Y = Fp(y, p); Z = Fp(1, p); }
                    else if (x < p && y == p) { X = Fp(x, p); Y = Fp(1, p); Z = Fp(0, p); }
                    else if (x == p && y == 0) { X = Fp(1, p); Y = Fp(0, p); Z = Fp(0, p); }
                    else continue;
                    if (evalf(X, Y, Z).v != 0) continue;
                    if (evald(0, X, Y, Z).v == 0 && evald(1, X, Y, Z).v == 0 &&
                        evald(2, X, Y, Z).v == 0)
                        throw ComputationError("singular reduction at " + s.get_str());
                }
        }
        for (int k = 1; k <= k_max; ++k) {
            Int sk = int_pow(s, k);
            if (sk * sk > cap)
                throw BudgetError("enumeration cap exceeded at " + s.get_str() + "^" +
                                  std::to_string(k) + "; raise the cap to proceed");
            counts.push_back(count_quartic(*m, s, k));
        }
    }
    res.counts = counts;
    if (k_max >= g) {
        // Newton's identities + functional equation
        std::vector<Rat> a(2 * g + 1, Rat(0));
        a[0] = 1;
        std::vector<Rat> psums;
        for (int k = 1; k <= g; ++k) psums.push_back(Rat(int_pow(s, k) + 1 - counts[k - 1]));
        for (int k = 1; k <= g; ++k) {
            Rat acc = psums[k - 1];
            for (int i = 1; i < k; ++i) acc += a[i] * psums[k - 1 - i];
            a[k] = -acc / k;
        }
        for (int i = 0; i < g; ++i) a[2 * g - i] = a[i] * Rat(int_pow(s, g - i));
        ZPoly P;
        P.c.assign(2 * g + 1, Int(0));
        for (int i = 0; i <= 2 * g; ++i) {
            if (!rat_is_integer(a[i]))
                throw ComputationError("charpoly coefficients not integral (count error?)");
            P.c[2 * g - i] = Int(a[i].get_num());
        }
        P.normalize();
        // Weil bound sanity: |a_i| <= C(2g, i) s^(i/2)
        for (int i = 1; i <= 2 * g; ++i) {
            Int bin;
            mpz_bin_uiui(bin.get_mpz_t(), 2 * g, i);
            if (P.coeff(2 * g - i) * P.coeff(2 * g - i) > bin * bin * int_pow(s, i))
                throw ComputationError("charpoly violates the Weil bounds (count error?)");
        }
        Int order = 0;
        for (int i = 0; i <= 2 * g; ++i) order += P.coeff(i);
        if (order <= 0) throw ComputationError("charpoly gives nonpositive Jacobian order");
        res.charpoly = P;
        res.jacobian_order = order;
    }
    return res;
}

Int torsion_divisibility_bound(const CurveModel& C, const std::vector<Int>& primes,
                               const Int& cap) {
    if (primes.empty()) throw ConfigError("torsion bound needs at least one prime");
    Int g = 0;
    long gen = genus_of_model(C);
    for (auto& s : primes) {
        auto r = count_points_frobenius(C, s, static_cast<int>(gen), cap);
        g = int_gcd(g, *r.jacobian_order);
    }
    return g;
}

long FFFunction::infinity_pole(long p, long d) const {
    long tot = 0;
    for (auto& [g, n] : xpolyfactors) tot += p * g.degree() * n;
    for (auto& [l, m] : ylinefactors) {
        long xl = l.is_zero() ? 0 : p * l.degree();
        tot += std::max(d, xl) * m;
    }
    return tot;
}

Fq ff_evaluate(const FFDivisorCtx& ctx, const FFFunction& h, const FFDivisor& D) {
    Fq val = ring_one(h.c);
    long affdeg = 0;
    for (auto& part : D.parts) {
        Fq pv = ring_one(h.c);
        long pdeg = 0;
        if (part.kind == FFDivisorPart::Point) {
            pdeg = 1;
            for (auto& [g, n] : h.xpolyfactors) {
                Fq t = g.eval(part.x0);
                if (t.is_zero())
                    throw ComputationError("support meets the function divisor; shift first");
                pv = pv * t.pow(Int(n));
            }
            for (auto& [l, m] : h.ylinefactors) {
                Fq t = part.y0 - l.eval(part.x0);
                if (t.is_zero())
                    throw ComputationError("support meets the function divisor; shift first");
                pv = pv * t.pow(Int(m));
            }
        } else {
            pdeg = part.a.degree();
            for (auto& [g, n] : h.xpolyfactors) {
                Fq t = poly_resultant(part.a, g);
                if (t.is_zero())
                    throw ComputationError("support meets the function divisor; shift first");
                pv = pv * t.pow(Int(n));
            }
            for (auto& [l, m] : h.ylinefactors) {
                Poly<Fq> diff = part.yrep - l;
                Fq t = diff.is_zero() ? ring_zero(h.c) : poly_resultant(part.a, diff);
                if (t.is_zero())
                    throw ComputationError("support meets the function divisor; shift first");
                pv = pv * t.pow(Int(m));
            }
        }
        val = val * pv.pow(Int(part.mult));
        affdeg += pdeg * part.mult;
    }
    if (affdeg != 0) {
        // the implied infinity part requires h regular and nonvanishing there;
        // its normalized leading value there cancels the constant exactly
        if (h.infinity_pole(ctx.p, ctx.d()) != 0)
            throw ComputationError(
                "divisor has infinity support where the function is not a unit; shift first");
    }
    return val;
}

Fq weil_pairing_ff(const FFDivisorCtx& ctx, const FFFunction& h1, const FFDivisor& E1,
                   const FFFunction& h2, const FFDivisor& E2) {
    Fq num = ff_evaluate(ctx, h2, E1);
    Fq den = ff_evaluate(ctx, h1, E2);
    return num / den;
}

std::optional<TorsionRep> ff_two_torsion_rep(const FFDivisorCtx& ctx, const Fq& alpha,
                                             const Fq& c1, const Fq& c2) {
    if (ctx.p != 2 || ctx.d() != 5)
        throw ComputationError("two-torsion representatives implemented for y^2 = quintic");
    if (alpha == c1 || alpha == c2 || c1 == c2) return std::nullopt;
    const auto& fctx = alpha.ctx;
    auto sqrt_of = [&](const Fq& a) -> std::optional<Fq> {
        for (uint64_t i = 0; Int(i) < fctx->q; ++i) {
            Fq y = Fq::from_index(fctx, i);
            if (y * y == a) return y;
        }
        return std::nullopt;
    };
    Fq f1 = ctx.f.eval(c1), f2 = ctx.f.eval(c2);
    if (f1.is_zero() || f2.is_zero()) return std::nullopt;
    auto y1 = sqrt_of(f1), y2 = sqrt_of(f2);
    if (!y1 || !y2) return std::nullopt;
    // quadratic l through (alpha, 0), (c1, y1), (c2, y2)
    Fq zero = ring_zero(alpha);
    std::vector<std::pair<Fq, Fq>> pts{{alpha, zero}, {c1, *y1}, {c2, *y2}};
    Poly<Fq> l;
    for (int i = 0; i < 3; ++i) {
        Poly<Fq> li = Poly<Fq>::constant(ring_one(alpha));
        Fq den = ring_one(alpha);
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            li = li * Poly<Fq>({zero - pts[j].first, ring_one(alpha)});
            den = den * (pts[i].first - pts[j].first);
        }
        l = l + li.scaled(pts[i].second / den);
    }
    // f - l^2 = (x - alpha)(x - c1)(x - c2) * Q(x)
    Poly<Fq> rem = ctx.f - l * l;
    for (auto& r : {alpha, c1, c2}) {
        auto [q, rr] = poly_divrem(rem, Poly<Fq>({zero - r, ring_one(alpha)}));
        if (!rr.is_zero()) return std::nullopt;
        rem = q;
    }
    Poly<Fq> Q = poly_monic(rem);
    if (Q.degree() != 2) return std::nullopt;
    if (!poly_is_squarefree(Q)) return std::nullopt;
    // residual roots must avoid the used x-coordinates and branch points
    for (auto& r : {alpha, c1, c2})
        if (Q.eval(r).is_zero()) return std::nullopt;
    if (poly_gcd(Q, ctx.f).degree() != 0) return std::nullopt;
    Poly<Fq> yrep = poly_mod(-l, Q);
    if (yrep.is_zero()) return std::nullopt;
    TorsionRep out;
    FFDivisorPart orbit;
    orbit.kind = FFDivisorPart::XOrbit;
    orbit.a = Q;
    orbit.yrep = yrep;
    orbit.mult = 1;
    out.E.parts.push_back(orbit);
    FFDivisorPart pc1{FFDivisorPart::Point, c1, *y1, {}, {}, -1};
    FFDivisorPart pc2{FFDivisorPart::Point, c2, *y2, {}, {}, -1};
    out.E.parts.push_back(pc1);
    out.E.parts.push_back(pc2);
    out.h.c = ring_one(alpha);
    out.h.xpolyfactors.emplace_back(Poly<Fq>({zero - alpha, ring_one(alpha)}), 1);
    out.h.xpolyfactors.emplace_back(Q, 2);
    out.h.ylinefactors.emplace_back(l, -2);
    return out;
}

}  // namespace selmer
