#include "selmer/etale.hpp"

#include "selmer/fp.hpp"
#include "selmer/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace selmer {

namespace {

QPoly lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& pts) {
    QPoly acc;
    for (size_t i = 0; i < pts.size(); ++i) {
        QPoly li = QPoly::constant(Rat(1));
        Rat den(1);
        for (size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            li = li * QPoly({-pts[j].first, Rat(1)});
            den *= pts[i].first - pts[j].first;
        }
        acc = acc + li.scaled(pts[i].second / den);
    }
    return acc;
}

std::string auto_label(size_t i) {
    std::ostringstream os;
    os << "w" << (i + 1);
    return os.str();
}

}  // namespace

EtaleElem EtaleElem::one(const EtaleAlgebra& alg) {
    EtaleElem e;
    e.A = &alg;
    for (auto& fc : alg.factors) e.comp.push_back(NfElem::from_rat(fc.field, Rat(1)));
    return e;
}

EtaleElem EtaleElem::from_components(const EtaleAlgebra& alg, std::vector<NfElem> c) {
    if (c.size() != alg.factors.size())
        throw ComputationError("etale element has wrong number of components");
    for (size_t j = 0; j < c.size(); ++j)
        if (!same_field(c[j].F, alg.factors[j].field))
            throw ComputationError("etale element component in wrong field");
    EtaleElem e;
    e.A = &alg;
    e.comp = std::move(c);
    return e;
}

EtaleElem operator*(const EtaleElem& a, const EtaleElem& b) {
    EtaleElem r;
    r.A = a.A;
    for (size_t i = 0; i < a.comp.size(); ++i) r.comp.push_back(a.comp[i] * b.comp[i]);
    return r;
}

EtaleElem operator/(const EtaleElem& a, const EtaleElem& b) {
    EtaleElem r;
    r.A = a.A;
    for (size_t i = 0; i < a.comp.size(); ++i) r.comp.push_back(a.comp[i] / b.comp[i]);
    return r;
}

bool EtaleElem::is_invertible() const {
    for (auto& c : comp)
        if (c.is_zero()) return false;
    return true;
}

std::string EtaleElem::str() const {
    std::string s = "(";
    for (size_t i = 0; i < comp.size(); ++i) {
        if (i) s += ", ";
        s += comp[i].str();
    }
    return s + ")";
}

NfElem algebra_norm(const EtaleAlgebra& A, const EtaleElem& a) {
    for (size_t j = 0; j < a.comp.size(); ++j)
        if (a.comp[j].is_zero())
            throw ComputationError("algebra_norm: component " + A.factors[j].orbit_label +
                                   " is zero");
    NfElem n = NfElem::from_rat(A.base, Rat(1));
    for (size_t j = 0; j < a.comp.size(); ++j) n = n * relative_norm(A.factors[j].rel, a.comp[j]);
    return n;
}

std::vector<NfPoly> nf_factor_squarefree(const NfPtr& K, const NfPoly& f) {
    if (f.degree() < 1) throw ComputationError("nf_factor_squarefree: constant polynomial");
    if (K->is_rationals()) {
        QPoly qf = f.map([](const NfElem& c) { return c.to_rational(); });
        std::vector<NfPoly> out;
        for (auto& [g, m] : q_factor(qf).factors) {
            if (m != 1) throw ComputationError("nf_factor_squarefree: input not squarefree");
            out.push_back(qpoly_to_nf(g, K));
        }
        return out;
    }
    NfPoly fm = poly_monic(f);
    NfElem theta = NfElem::gen(K);
    int nK = K->degree();
    int D = nK * fm.degree();
    for (long s : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L}) {
        // fs(x) = f(x + s*theta); N(x) = prod over conjugates, via interpolation
        NfPoly shift{std::vector<NfElem>{NfElem::from_rat(K, Rat(s)) * theta, ring_one(theta)}};
        NfPoly fs = poly_compose(fm, shift);
        std::vector<std::pair<Rat, Rat>> pts;
        for (int x0 = 0; x0 <= D; ++x0) {
            NfElem v = fs.eval(NfElem::from_rat(K, Rat(x0)));
            pts.emplace_back(Rat(x0), v.norm_q());
        }
        QPoly N = lagrange_interpolate(pts);
        if (N.degree() != D || !poly_is_squarefree(N)) continue;
        auto nf = q_factor(N);
        std::vector<NfPoly> out;
        bool ok = true;
        for (auto& [Ni, mult] : nf.factors) {
            NfPoly NiK = qpoly_to_nf(Ni, K);
            NfPoly gi = poly_gcd(fs, NiK);
            if (gi.degree() < 1) { ok = false; break; }
            // undo the shift
            NfPoly unshift{std::vector<NfElem>{-(NfElem::from_rat(K, Rat(s)) * theta),
                                               ring_one(theta)}};
            out.push_back(poly_monic(poly_compose(gi, unshift)));
        }
        if (!ok) continue;
        int total = 0;
        for (auto& g : out) total += g.degree();
        if (total != fm.degree()) continue;
        return out;
    }
    throw ComputationError("nf_factor_squarefree: no squarefree norm found");
}

EtaleAlgebra split_etale_algebra(const NfPtr& K, const NfPoly& f,
                                 std::vector<SuppliedFactor> supplied) {
    for (auto& c : f.c)
        if (c.F != K) throw ConfigError("polynomial is not defined over the base field");
    if (f.degree() < 1) throw ConfigError("split_etale_algebra: constant polynomial");
    if (!f.is_monic()) throw ConfigError("split_etale_algebra: polynomial must be monic");
    NfPoly rep = poly_gcd(f, f.derivative());
    if (rep.degree() > 0) {
        std::string msg = "polynomial is not squarefree; repeated part: ";
        throw ConfigError(msg + poly_to_string(rep.map([](const NfElem& c) {
                              return c.is_rational() ? c.to_rational() : Rat(0);
                          }),
                          "x"));
    }

    EtaleAlgebra A;
    A.base = K;
    A.f = f;
    if (!supplied.empty()) {
        for (size_t j = 0; j < supplied.size(); ++j) {
            auto& sf = supplied[j];
            EtaleFactor fc;
            fc.field = sf.field;
            fc.emb = NfHom(K, sf.field, sf.base_gen_image);
            fc.root = sf.root;
            NfElem fval = f.map([&](const NfElem& c) { return fc.emb.apply(c); }).eval(sf.root);
            if (!fval.is_zero())
                throw ConfigError("supplied root for factor " + sf.orbit_label +
                                  " is not a root of f");
            fc.rel = relative_extension(fc.emb, sf.root);
            fc.minpoly = fc.rel.minpoly;
            fc.orbit_label = sf.orbit_label.empty() ? auto_label(j) : sf.orbit_label;
            A.factors.push_back(std::move(fc));
        }
        // product of the minimal polynomials must reconstruct f exactly
        NfPoly prod = NfPoly::constant(ring_one(NfElem::gen(K)));
        for (auto& fc : A.factors) prod = prod * fc.minpoly;
        if (!(prod == poly_monic(f)))
            throw ConfigError("supplied factor fields do not multiply back to f");
        return A;
    }

    auto factors = nf_factor_squarefree(K, f);
    for (size_t j = 0; j < factors.size(); ++j) {
        const NfPoly& h = factors[j];
        EtaleFactor fc;
        if (h.degree() == 1) {
            // linear factor: L_j = K
            fc.field = K;
            fc.emb = NfHom::identity(K);
            fc.root = -h.coeff(0);
        } else {
            // primitive element: root of h + s*theta with squarefree minpoly
            NfElem theta = NfElem::gen(K);
            bool built = false;
            for (long s : {0L, 1L, -1L, 2L, -2L, 3L, -3L}) {
                // minimal polynomial over Q of (alpha + s*theta) via resultant:
                // interpolate N(x) = Res_t(g_K, h-with-theta->t (x - s t))
                int D = K->degree() * h.degree();
                std::vector<std::pair<Rat, Rat>> pts;
                NfPoly shift{std::vector<NfElem>{-(NfElem::from_rat(K, Rat(s)) * theta),
                                                 ring_one(theta)}};
                NfPoly hs = poly_compose(h, shift);  // roots alpha + s*theta
                for (int x0 = 0; x0 <= D; ++x0) {
                    NfElem v = hs.eval(NfElem::from_rat(K, Rat(x0)));
                    pts.emplace_back(Rat(x0), v.norm_q());
                }
                QPoly N = lagrange_interpolate(pts);
                if (N.degree() != D || !poly_is_squarefree(N)) continue;
                if (!q_is_irreducible(N)) continue;
                // clear denominators: beta' = c * beta
                Int c = 1;
                for (auto& q : N.c) c = int_lcm(c, q.get_den());
                QPoly Ndef;
                Ndef.c.assign(N.degree() + 1, Rat(0));
                for (int i = 0; i <= N.degree(); ++i)
                    Ndef.c[i] = N.coeff(i) * Rat(int_pow(c, N.degree() - i));
                Ndef.normalize();
                NfPtr L = NumberField::make(auto_label(j), Ndef, false);
                NfElem beta = NfElem::gen(L) / NfElem::from_rat(L, Rat(c));
                // recover theta inside L: common root of g_K and hs(beta + ... )
                // hs has coefficients in K; write them as Q-polys in theta -> t
                Poly<NfElem> G;  // over L, in variable t
                {
                    // hs(x) = sum_i c_i(theta) x^i evaluated at x = beta:
                    // G(t) = sum_i c_i(t) * beta^i
                    std::vector<NfElem> acc(K->degree(), NfElem::from_rat(L, Rat(0)));
                    NfElem bpow = NfElem::from_rat(L, Rat(1));
                    for (int i = 0; i <= hs.degree(); ++i) {
                        const QPoly& ci = hs.coeff(i).rep;
                        for (int d = 0; d <= ci.degree(); ++d)
                            acc[d] = acc[d] + NfElem::from_rat(L, ci.coeff(d)) * bpow;
                        bpow = bpow * beta;
                    }
                    G = Poly<NfElem>(std::move(acc));
                }
                Poly<NfElem> gK = K->defining().map([&](const Rat& q) {
                    return NfElem::from_rat(L, q);
                });
                Poly<NfElem> d = poly_gcd(gK, G);
                if (d.degree() != 1) continue;
                NfElem theta_img = -d.coeff(0);
                fc.field = L;
                fc.emb = NfHom(K, L, theta_img);
                fc.root = beta - NfElem::from_rat(L, Rat(s)) * theta_img;
                built = true;
                break;
            }
            if (!built)
                throw ComputationError("split_etale_algebra: failed to present factor field");
        }
        fc.rel = relative_extension(fc.emb, fc.root);
        fc.minpoly = fc.rel.minpoly;
        fc.orbit_label = auto_label(j);
        A.factors.push_back(std::move(fc));
    }
    return A;
}

std::optional<NfElem> nf_nth_root(const NfElem& a, int n) {
    if (n < 1) throw ComputationError("nf_nth_root: n must be positive");
    if (n == 1) return a;
    if (a.is_zero()) return a;
    const NfPtr& K = a.F;
    if (K->is_rationals()) {
        auto r = rat_nth_root(a.to_rational(), n);
        if (!r) return std::nullopt;
        return NfElem::from_rat(K, *r);
    }
    // quick exact hit: rational representative with rational root
    if (a.is_rational()) {
        auto r = rat_nth_root(a.to_rational(), n);
        if (r) return NfElem::from_rat(K, *r);
    }
    int nK = K->degree();
    Rat Na = a.norm_q();
    Int bad = Na.get_num() * Na.get_den() * a.denominator();
    ZPoly gz = qpoly_to_z(K->defining());
    // auxiliary primes: completely split in K, coprime to a
    int tried = 0;
    for (Int rc = 1000003; tried < 6; rc = next_prime(rc)) {
        uint64_t r = rc.get_ui();
        if (int_mod(bad, rc) == 0) continue;
        FpPoly gr = zpoly_mod_p(gz, r);
        if (!poly_is_squarefree(gr)) continue;
        auto roots = fp_roots(gr);
        if (static_cast<int>(roots.size()) != nK) continue;  // want complete splitting
        ++tried;
        std::sort(roots.begin(), roots.end(), [](const Fp& x, const Fp& y) { return x.v < y.v; });
        // component values a(t_i) mod r and their n-th roots
        std::vector<std::vector<uint64_t>> component_roots(nK);
        bool possible = true;
        for (int i = 0; i < nK; ++i) {
            Fp ai = qpoly_mod_p(a.rep, r).eval(roots[i]);
            if (ai.v == 0) { possible = false; break; }
            uint64_t d = std::gcd<uint64_t>(static_cast<uint64_t>(n), r - 1);
            Fp test = ai.pow(Int(static_cast<unsigned long>((r - 1) / d)));
            if (test.v != 1) { possible = false; break; }
            // find one root: ai = g^k, root = g^(k/n mod ...)
            // brute via small search: y^n = ai
            std::vector<uint64_t> rs;
            Fp g(0, r);
            // find generator of F_r^*
            for (uint64_t cand = 2; cand < r; ++cand) {
                Fp c(cand, r);
                bool gen = true;
                for (auto& [pf, e] : factor_integer(Int(static_cast<unsigned long>(r - 1))))
                    if (c.pow(Int((r - 1)) / pf).v == 1) { gen = false; break; }
                if (gen) { g = c; break; }
            }
            Int k = 0;
            {
                // dlog base g of ai via baby-step giant-step would be nicer;
                // brute force is fine at this size? r ~ 1e6: brute is 1e6 ops per
                // component: acceptable but do BSGS
                uint64_t m = static_cast<uint64_t>(std::sqrt(static_cast<double>(r))) + 1;
                std::map<uint64_t, uint64_t> table;
                Fp cur(1, r);
                for (uint64_t j = 0; j < m; ++j) {
                    table.emplace(cur.v, j);
                    cur = cur * g;
                }
                Fp gm_inv = g.pow(Int(static_cast<unsigned long>(m))).inv();
                Fp gamma = ai;
                bool found = false;
                for (uint64_t i2 = 0; i2 < m + 1; ++i2) {
                    auto it = table.find(gamma.v);
                    if (it != table.end()) {
                        k = Int(static_cast<unsigned long>(i2)) * Int(static_cast<unsigned long>(m)) +
                            Int(static_cast<unsigned long>(it->second));
                        found = true;
                        break;
                    }
                    gamma = gamma * gm_inv;
                }
                if (!found) { possible = false; }
            }
            if (!possible) break;
            // y0 with y0^n = ai: need n | k mod (r-1) structure: y0 = g^(k * n^{-1} mod (r-1)/d * ...)
            Int rm1(static_cast<unsigned long>(r - 1));
            Int nn(n);
            Int dd(static_cast<unsigned long>(d));
            if (int_mod(k, dd) != 0) { possible = false; break; }
            // solve n*x == k mod (r-1): x = (k/d) * inv(n/d) mod (r-1)/d
            Int x0 = int_mod((k / dd) * *mod_inverse(nn / dd, rm1 / dd), rm1 / dd);
            uint64_t y0 = g.pow(x0).v;
            // all roots: y0 * zeta^j, zeta = g^((r-1)/d), j < d
            uint64_t zeta = g.pow(rm1 / dd).v;
            uint64_t yy = y0;
            for (uint64_t j = 0; j < d; ++j) {
                component_roots[i].push_back(yy);
                yy = static_cast<uint64_t>((static_cast<__uint128_t>(yy) * zeta) % r);
            }
        }
        if (!possible) return std::nullopt;  // no root: proven by reduction
        // lift roots of g to higher precision and try reconstructions
        for (int Mexp : {8, 16, 32, 64}) {
            Int rM = int_pow(rc, Mexp);
            // lift roots t_i via Newton on g
            std::vector<Int> T;
            for (int i = 0; i < nK; ++i) {
                Int t(static_cast<unsigned long>(roots[i].v));
                Int mod = rc;
                while (mod < rM) {
                    mod = mod * mod;
                    if (mod > rM) mod = rM;
                    Int gv = 0, dv = 0;  // g(t), g'(t) mod `mod`
                    {
                        Int x = 1;
                        QPoly gq = K->defining();
                        QPoly dq = gq.derivative();
                        for (int ii = 0; ii <= gq.degree(); ++ii) {
                            gv = int_mod(gv + Int(gq.coeff(ii).get_num()) * x, mod);
                            x = int_mod(x * t, mod);
                        }
                        x = 1;
                        for (int ii = 0; ii <= dq.degree(); ++ii) {
                            dv = int_mod(dv + Int(dq.coeff(ii).get_num()) * x, mod);
                            x = int_mod(x * t, mod);
                        }
                    }
                    auto inv = mod_inverse(dv, mod);
                    if (!inv) throw ComputationError("nf_nth_root: derivative not invertible");
                    t = int_mod(t - gv * *inv, mod);
                }
                T.push_back(t);
            }
            std::vector<Int> AV;
            for (int i = 0; i < nK; ++i) {
                Int v = 0, x = 1;
                for (int ii = 0; ii <= a.rep.degree(); ++ii) {
                    Rat c = a.rep.coeff(ii);
                    Int ci = int_mod(Int(c.get_num()) * *mod_inverse(Int(c.get_den()), rM), rM);
                    v = int_mod(v + ci * x, rM);
                    x = int_mod(x * T[i], rM);
                }
                AV.push_back(v);
            }
            // combos of component roots
            std::vector<size_t> idx(nK, 0);
            for (;;) {
                // lift each component root via Newton y <- y - (y^n - a)/(n y^(n-1))
                std::vector<Int> Y;
                bool liftok = true;
                for (int i = 0; i < nK && liftok; ++i) {
                    Int y(static_cast<unsigned long>(component_roots[i][idx[i]]));
                    Int mod = rc;
                    while (mod < rM) {
                        mod = mod * mod;
                        if (mod > rM) mod = rM;
                        Int yn1 = mod_pow(y, Int(n - 1), mod);
                        Int fy = int_mod(yn1 * y - AV[i], mod);
                        Int dy = int_mod(Int(n) * yn1, mod);
                        auto inv = mod_inverse(dy, mod);
                        if (!inv) { liftok = false; break; }
                        y = int_mod(y - fy * *inv, mod);
                    }
                    Y.push_back(y);
                }
                if (liftok) {
                    // interpolate y(t) with y(T_i) = Y_i over Z/rM
                    // Lagrange: sum Y_i * prod_{j!=i} (t - T_j)/(T_i - T_j)
                    std::vector<Int> coeffs(nK, Int(0));
                    bool interok = true;
                    for (int i = 0; i < nK && interok; ++i) {
                        std::vector<Int> li{Int(1)};
                        Int den = 1;
                        for (int j = 0; j < nK; ++j) {
                            if (j == i) continue;
                            std::vector<Int> nl(li.size() + 1, Int(0));
                            for (size_t kk = 0; kk < li.size(); ++kk) {
                                nl[kk] = int_mod(nl[kk] - li[kk] * T[j], rM);
                                nl[kk + 1] = int_mod(nl[kk + 1] + li[kk], rM);
                            }
                            li = nl;
                            den = int_mod(den * (T[i] - T[j]), rM);
                        }
                        auto dinv = mod_inverse(den, rM);
                        if (!dinv) { interok = false; break; }
                        Int s = int_mod(Y[i] * *dinv, rM);
                        for (size_t kk = 0; kk < li.size(); ++kk)
                            coeffs[kk] = int_mod(coeffs[kk] + s * li[kk], rM);
                    }
                    if (interok) {
                        // rational reconstruction coefficientwise
                        QPoly yrep;
                        bool recok = true;
                        std::vector<Rat> cs(nK);
                        for (int kk = 0; kk < nK; ++kk) {
                            auto rr = rational_reconstruct(coeffs[kk], rM);
                            if (!rr) { recok = false; break; }
                            cs[kk] = *rr;
                        }
                        if (recok) {
                            NfElem y(K, QPoly(cs));
                            NfElem pw = ring_one(y);
                            for (int e = 0; e < n; ++e) pw = pw * y;
                            if (pw == a) return y;
                        }
                    }
                }
                // next combo
                int pos = 0;
                while (pos < nK) {
                    if (++idx[pos] < component_roots[pos].size()) break;
                    idx[pos] = 0;
                    ++pos;
                }
                if (pos == nK) break;
            }
        }
        throw ComputationError(
            "nf_nth_root: residues admit a root but reconstruction failed at max precision");
    }
    throw ComputationError("nf_nth_root: no suitable auxiliary prime found");
}

}  // namespace selmer
