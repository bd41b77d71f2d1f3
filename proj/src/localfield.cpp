#include "selmer/localfield.hpp"

#include "selmer/linalg.hpp"
#include "selmer/zfactor.hpp"

#include <algorithm>
#include <sstream>

namespace selmer {

namespace {

ZPoly zmod(const ZPoly& a, const Int& m) {
    ZPoly r = a;
    for (auto& c : r.c) c = int_mod(c, m);
    r.normalize();
    return r;
}

}  // namespace

std::vector<PrimeIdeal> primes_over(const NfPtr& F, const Int& s) {
    if (!is_prime(s)) throw ConfigError("primes_over: " + s.get_str() + " is not prime");
    uint64_t p = s.get_ui();
    ZPoly g = qpoly_to_z(F->defining());
    FpPoly gp = zpoly_mod_p(g, p);
    if (gp.degree() != F->degree()) throw ComputationError("defining polynomial degenerates mod s");
    auto fac = fp_factor(gp);
    // Dedekind index criterion: g1 = prod h_i, g2 = g/g1 mod s,
    // T = (g1*g2 - g)/s; require gcd(T, g1, g2) = 1 mod s.
    FpPoly g1 = FpPoly::constant(Fp(1, p));
    for (auto& [h, e] : fac) g1 = g1 * h;
    FpPoly g2 = poly_divrem(gp, g1).first;
    ZPoly T = fppoly_lift(g1) * fppoly_lift(g2) - g;
    for (auto& c : T.c) {
        if (c % s != 0) throw ComputationError("Dedekind test arithmetic error");
        c /= s;
    }
    T.normalize();
    FpPoly d = poly_gcd(poly_gcd(zpoly_mod_p(T, p), g1), g2);
    if (d.degree() > 0)
        throw ConfigError("prime " + s.get_str() + " divides the index of the equation order in " +
                          F->label() + "; unsupported presentation");
    std::vector<PrimeIdeal> out;
    for (auto& [h, e] : fac) {
        PrimeIdeal P;
        P.F = F;
        P.s = s;
        P.h = h;
        P.e = e;
        P.f = h.degree();
        std::ostringstream os;
        os << s.get_str() << "." << out.size();
        P.label = os.str();
        out.push_back(std::move(P));
    }
    return out;
}

// ---- residue ring helpers ----

ZPoly LocalField::rmod(const ZPoly& a) const {
    ZPoly r = poly_mod(a, H_);
    return zmod(r, sM_);
}

ZPoly LocalField::rmul(const ZPoly& a, const ZPoly& b) const { return rmod(a * b); }

ZPoly LocalField::rpow(ZPoly a, long k) const {
    if (k < 0) {
        a = rinv(a);
        k = -k;
    }
    ZPoly r{std::vector<Int>{Int(1)}};
    while (k) {
        if (k & 1) r = rmul(r, a);
        a = rmul(a, a);
        k >>= 1;
    }
    return r;
}

ZPoly LocalField::rinv(const ZPoly& a) const {
    uint64_t p = P_.s.get_ui();
    FpPoly ap = zpoly_mod_p(a, p);
    FpPoly Hp = zpoly_mod_p(H_, p);
    auto [d, u, v] = poly_xgcd(ap, Hp);
    if (d.degree() != 0)
        throw ComputationError("residue ring inversion of a non-unit");
    FpPoly w0 = u.scaled(d.coeff(0).inv());
    ZPoly w = fppoly_lift(w0);
    Int mod = P_.s;
    while (mod < sM_) {
        mod = mod * mod;
        if (mod > sM_) mod = sM_;
        // w <- w*(2 - a*w) mod (mod, H)
        ZPoly t = zmod(poly_mod(a * w, H_), mod);
        ZPoly two{std::vector<Int>{Int(2)}};
        w = zmod(poly_mod(w * (two - t), H_), mod);
    }
    return rmod(w);
}

long LocalField::rval(const ZPoly& a) const {
    if (a.is_zero()) throw ComputationError("valuation of zero residue element");
    long jmin = -1;
    for (auto& c : a.c) {
        if (c == 0) continue;
        long v = int_valuation(c, P_.s);
        if (jmin < 0 || v < jmin) jmin = v;
    }
    if (jmin < 0) throw ComputationError("valuation of zero residue element");
    if (jmin >= M_) throw PrecisionError("element vanishes to full ring precision");
    long val = static_cast<long>(P_.e) * jmin;
    if (P_.e == 1) return val;
    // strip s^jmin on a copy, then count pi-divisibility < e
    ZPoly z = a;
    Int sj = int_pow(P_.s, jmin);
    for (auto& c : z.c) c /= sj;
    z = rmod(z);
    for (int step = 0; step < P_.e - 1; ++step) {
        ZPoly t = rmul(rmul(z, rpow(pi_, P_.e - 1)), u_se_inv_);
        bool div = true;
        for (auto& c : t.c)
            if (c % P_.s != 0) { div = false; break; }
        if (!div) break;
        for (auto& c : t.c) c /= P_.s;
        z = rmod(t);
        ++val;
    }
    return val;
}

LocalElem LocalField::normalize_raw(ZPoly raw, long shift_pi, long prec) const {
    raw = rmod(raw);
    LocalElem out;
    out.F = shared_from_this();
    if (raw.is_zero()) {
        out.zero = true;
        return out;
    }
    long v = rval(raw);
    if (v >= prec) {
        // indistinguishable from zero at the element's precision
        out.zero = true;
        return out;
    }
    // unit = raw * pi^k * u_se_inv^j / s^j with v + k = j*e
    long j = (v + P_.e - 1) / P_.e;
    long k = j * static_cast<long>(P_.e) - v;
    ZPoly z = rmul(raw, rpow(pi_, k));
    z = rmul(z, rpow(u_se_inv_, j));
    Int sj = int_pow(P_.s, j);
    for (auto& c : z.c) {
        if (c % sj != 0) throw ComputationError("normalize_raw: inexact division (internal)");
        c /= sj;
    }
    out.zero = false;
    out.val = shift_pi + v;
    out.unit = rmod(z);
    out.unit_prec = std::min<long>(prec - v, static_cast<long>(P_.e) * (M_ - j));
    if (out.unit_prec <= 0) throw PrecisionError("normalize_raw: no precision left");
    return out;
}

LocalFieldPtr LocalField::complete(const PrimeIdeal& P, int N, const NfElem* pinned_uniformizer) {
    auto F = std::make_shared<LocalField>();
    F->P_ = P;
    if (N < 1) throw ConfigError("precision must be positive");
    F->N_ = N;
    F->M_ = (N + P.e - 1) / P.e + 2;
    F->sM_ = int_pow(P.s, F->M_);
    uint64_t p = P.s.get_ui();

    // Hensel-lift the coprime factorization g = prod h_i^{e_i} and keep ours
    ZPoly g = qpoly_to_z(P.F->defining());
    FpPoly gp = zpoly_mod_p(g, p);
    auto fac = fp_factor(gp);
    std::vector<ZPoly> parts;
    int ours = -1;
    for (auto& [h, e] : fac) {
        FpPoly he = FpPoly::constant(Fp(1, p));
        for (int i = 0; i < e; ++i) he = he * h;
        if (h == P.h) ours = static_cast<int>(parts.size());
        parts.push_back(fppoly_lift(he));
    }
    if (ours < 0) throw ConfigError("prime data does not match the factorization mod s");
    if (parts.size() == 1) {
        F->H_ = g;  // the full polynomial; reduce mod s^M
        F->H_ = zmod(F->H_, F->sM_);
        // keep monic canonical: zmod keeps lc = 1 since g monic
        F->H_.c.back() = 1;
    } else {
        Int reached;
        auto lifted = hensel_lift_monic_factors(g, parts, p, F->sM_, reached);
        F->H_ = zmod(lifted[ours], F->sM_);
        F->H_.c.back() = 1;
    }

    F->resfield_ = std::make_shared<const FqCtx>(p, P.f, P.h);

    // uniformizer
    if (P.e == 1) {
        F->pi_ = ZPoly{std::vector<Int>{P.s}};
        F->pi_pow_e_ = F->pi_;
        F->u_se_inv_ = ZPoly{std::vector<Int>{Int(1)}};
    } else {
        std::vector<ZPoly> candidates;
        if (pinned_uniformizer) {
            if (pinned_uniformizer->denominator() % P.s == 0)
                throw ConfigError("pinned uniformizer must be integral at the prime");
            QPoly rep = pinned_uniformizer->rep;
            Int den = pinned_uniformizer->denominator();
            ZPoly num = rep.map([&](const Rat& q) { return Int(q.get_num() * (den / q.get_den())); });
            ZPoly raw = F->rmod(num);
            auto deninv = mod_inverse(den, F->sM_);
            raw = F->rmod(raw.map([&](const Int& c) { return Int(c * *deninv); }));
            candidates.push_back(raw);
        } else {
            ZPoly hh = fppoly_lift(P.h);
            candidates.push_back(hh);
            candidates.push_back(hh + ZPoly{std::vector<Int>{P.s}});
            candidates.push_back(hh + ZPoly{std::vector<Int>{Int(0), P.s}});
            candidates.push_back(hh + ZPoly{std::vector<Int>{P.s, P.s}});
        }
        bool found = false;
        for (auto& cand : candidates) {
            // bootstrap valuation check without u_se_inv: v(cand) = 1 iff
            // cand^e / s is a unit (coefficient of s^0 present after division)
            ZPoly pe = cand;
            for (int i = 1; i < P.e; ++i) pe = F->rmul(pe, cand);
            bool div = true;
            for (auto& c : pe.c)
                if (c % P.s != 0) { div = false; break; }
            if (!div) continue;  // v(cand^e) < e impossible; means not in ideal? skip
            ZPoly u = pe;
            for (auto& c : u.c) c /= P.s;
            u = F->rmod(u);
            // unit iff nonzero mod (s, h)
            FpPoly ur = poly_mod(zpoly_mod_p(u, p), P.h);
            if (ur.is_zero()) continue;
            F->pi_ = F->rmod(cand);
            F->pi_pow_e_ = pe;
            F->u_se_inv_ = F->rinv(u);
            found = true;
            break;
        }
        if (!found)
            throw ConfigError("no uniformizer found for prime " + P.label +
                              "; supply one explicitly");
        if (pinned_uniformizer) {
            // full verification now that the structure exists
            if (F->rval(F->pi_) != 1)
                throw ConfigError("pinned uniformizer does not have valuation 1");
        }
    }
    return F;
}

LocalElem LocalField::zero_elem() const {
    LocalElem e;
    e.F = shared_from_this();
    e.zero = true;
    return e;
}

LocalElem LocalField::one() const {
    LocalElem e;
    e.F = shared_from_this();
    e.zero = false;
    e.val = 0;
    e.unit = ZPoly{std::vector<Int>{Int(1)}};
    e.unit_prec = static_cast<long>(P_.e) * M_;
    return e;
}

LocalElem LocalField::uniformizer() const {
    LocalElem e = one();
    if (P_.e == 1) {
        e.val = 1;
        return e;
    }
    return normalize_raw(pi_, 0, static_cast<long>(P_.e) * M_);
}

LocalElem LocalField::from_integer(const Int& z) const {
    if (z == 0) return zero_elem();
    return normalize_raw(ZPoly{std::vector<Int>{z}}, 0, static_cast<long>(P_.e) * M_);
}

LocalElem LocalField::from_global(const NfElem& x) const {
    if (!same_field(x.F, P_.F)) throw ComputationError("from_global: element of a different field");
    if (x.is_zero()) return zero_elem();
    Int den = x.denominator();
    long j = (den == 1) ? 0 : int_valuation(den, P_.s);
    Int dprime = den / int_pow(P_.s, j);
    ZPoly num = x.rep.map([&](const Rat& q) { return Int(q.get_num() * (den / q.get_den())); });
    LocalElem numel = normalize_raw(num, 0, static_cast<long>(P_.e) * M_);
    if (numel.zero)
        throw PrecisionError("from_global: element vanishes to working precision");
    if (dprime != 1) {
        auto dinv = mod_inverse(dprime, sM_);
        numel.unit = rmod(numel.unit.map([&](const Int& c) { return Int(c * *dinv); }));
    }
    numel.val -= j * static_cast<long>(P_.e);
    return numel;
}

LocalElem LocalField::from_residue_ring(ZPoly raw, long sdivs) const {
    return normalize_raw(std::move(raw), -sdivs * static_cast<long>(P_.e),
                         static_cast<long>(P_.e) * M_);
}

LocalElem LocalField::teichmuller(const Fq& c) const {
    if (c.is_zero()) throw ComputationError("teichmuller lift of zero");
    ZPoly x = fppoly_lift(c.rep);
    // Newton for x^(q-1) = 1, q = s^f
    Int qm1 = int_pow(P_.s, P_.f) - 1;
    for (int iter = 0; iter < 2 * M_ + 4; ++iter) {
        // x <- x - (x^(q-1) - 1) / ((q-1) x^(q-2))
        ZPoly xq2 = rpow(x, Int(qm1 - 1).get_si());
        ZPoly xq1 = rmul(xq2, x);
        ZPoly diff = xq1 - ZPoly{std::vector<Int>{Int(1)}};
        if (rmod(diff).is_zero()) break;
        ZPoly der = rmod(xq2.map([&](const Int& cc) { return Int(cc * qm1); }));
        x = rmod(x - rmul(rmod(diff), rinv(der)));
    }
    if (!rmod(rpow(x, qm1.get_si()) - ZPoly{std::vector<Int>{Int(1)}}).is_zero())
        throw ComputationError("teichmuller: iteration did not converge");
    LocalElem e;
    e.F = shared_from_this();
    e.zero = false;
    e.val = 0;
    e.unit = x;
    e.unit_prec = static_cast<long>(P_.e) * M_;
    return e;
}

LocalElem LocalField::mul(const LocalElem& a, const LocalElem& b) const {
    if (a.zero || b.zero) return zero_elem();
    LocalElem r;
    r.F = shared_from_this();
    r.zero = false;
    r.val = a.val + b.val;
    r.unit = rmul(a.unit, b.unit);
    r.unit_prec = std::min(a.unit_prec, b.unit_prec);
    return r;
}

LocalElem LocalField::inv(const LocalElem& a) const {
    if (a.zero) throw ComputationError("local inverse of zero");
    LocalElem r;
    r.F = shared_from_this();
    r.zero = false;
    r.val = -a.val;
    r.unit = rinv(a.unit);
    r.unit_prec = a.unit_prec;
    return r;
}

LocalElem LocalField::neg(const LocalElem& a) const {
    if (a.zero) return a;
    LocalElem r = a;
    r.unit = rmod(-a.unit);
    return r;
}

LocalElem LocalField::add(const LocalElem& a, const LocalElem& b) const {
    if (a.zero) return b;
    if (b.zero) return a;
    long v = std::min(a.val, b.val);
    // absolute precision of each operand caps the sum
    long prec = std::min(a.val + a.unit_prec, b.val + b.unit_prec) - v;
    // raw = ua * pi^(va - v) + ub * pi^(vb - v)
    ZPoly raw = rmul(a.unit, rpow(pi_, a.val - v)) + rmul(b.unit, rpow(pi_, b.val - v));
    LocalElem r = normalize_raw(rmod(raw), v, prec);
    return r;
}

LocalElem LocalField::sub(const LocalElem& a, const LocalElem& b) const { return add(a, neg(b)); }

LocalElem LocalField::pow(const LocalElem& a, long k) const {
    if (a.zero) {
        if (k <= 0) throw ComputationError("0^k for k <= 0");
        return a;
    }
    LocalElem base = k < 0 ? inv(a) : a;
    long kk = k < 0 ? -k : k;
    LocalElem r = one();
    r.unit_prec = base.unit_prec;
    while (kk) {
        if (kk & 1) r = mul(r, base);
        base = mul(base, base);
        kk >>= 1;
    }
    return r;
}

bool LocalField::equal(const LocalElem& a, const LocalElem& b) const {
    if (a.zero && b.zero) return true;
    // normalized nonzero elements have a definite valuation, hence differ from 0
    if (a.zero != b.zero) return false;
    if (a.val != b.val) return false;
    long prec = std::min(a.unit_prec, b.unit_prec);
    ZPoly d = rmod(a.unit - b.unit);
    if (d.is_zero()) return true;
    return rval(d) >= prec;
}

Fq LocalField::residue(const LocalElem& a) const {
    if (a.zero || a.val > 0) return Fq(resfield_, FpPoly());
    if (a.val < 0) throw ComputationError("residue of non-integral element");
    uint64_t p = P_.s.get_ui();
    FpPoly r = poly_mod(zpoly_mod_p(a.unit, p), P_.h);
    return Fq(resfield_, r);
}

long LocalField::principal_level(const LocalElem& a) const {
    if (a.zero || a.val != 0) throw ComputationError("principal_level needs a unit");
    ZPoly d = rmod(a.unit - ZPoly{std::vector<Int>{Int(1)}});
    if (d.is_zero()) return a.unit_prec;
    long v = rval(d);
    return std::min(v, a.unit_prec);
}

Fq LocalField::principal_coeff(const LocalElem& a, long level) const {
    ZPoly d = rmod(a.unit - ZPoly{std::vector<Int>{Int(1)}});
    LocalElem t = normalize_raw(d, 0, a.unit_prec);
    if (t.zero || t.val != level)
        throw ComputationError("principal_coeff: wrong level (internal)");
    t.val = 0;  // residue of the unit part (a - 1) / pi^level
    return residue(t);
}

std::string LocalField::str(const LocalElem& a) const {
    if (a.zero) return "0";
    std::ostringstream os;
    os << "pi^" << a.val << " * (" << poly_to_string(zpoly_to_q(a.unit), "t") << " + O(pi^"
       << a.unit_prec << "))";
    return os.str();
}

// ---- unit basis ----

namespace {

Fq fq_pth_root(const Fq& c, uint64_t p, int f) {
    // Frobenius inverse: c^(p^(f-1))
    Fq r = c;
    for (int i = 0; i < f - 1; ++i) r = r.pow(Int(static_cast<unsigned long>(p)));
    return r;
}

// all solutions x of x^p + u*x = target over the residue field
std::vector<Fq> artin_schreier_solve(const Fq& u, const Fq& target, uint64_t p) {
    std::vector<Fq> sols;
    const auto& ctx = u.ctx;
    for (uint64_t i = 0; Int(i) < ctx->q; ++i) {
        Fq x = Fq::from_index(ctx, i);
        if (x.pow(Int(static_cast<unsigned long>(p))) + u * x == target) sols.push_back(x);
    }
    return sols;
}

}  // namespace

LocalUnitBasis local_unit_basis(const LocalFieldPtr& F, long q) {
    if (!is_prime(Int(q))) throw ConfigError("local_unit_basis: q = " + std::to_string(q) +
                                             " is not prime (prime powers q = p^l with l >= 2 "
                                             "are not supported)");
    LocalUnitBasis B;
    B.F = F;
    B.q = q;
    const Int& s = F->s();
    int e = F->e(), f = F->f();
    Int sf1 = int_pow(s, f) - 1;

    LocalUnitGen pi{"pi", F->uniformizer()};
    B.gens.push_back(pi);
    B.levels.push_back(0);
    B.level_coeffs.push_back(Fq(F->residue_field(), FpPoly()));

    if (s != q) {
        B.power_threshold = 1;
        if (int_mod(sf1, Int(q)) == 0) {
            B.has_teichmuller = true;
            Fq g = fq_generator(F->residue_field());
            B.gens.push_back({"w", F->teichmuller(g)});
            B.levels.push_back(0);
            B.level_coeffs.push_back(g);
        }
        // expected dimension: 1 + (mu_q present ? 1 : 0); |q|^{-1} part trivial
        size_t expected = 1 + (B.has_teichmuller ? 1 : 0);
        if (B.gens.size() != expected)
            throw ComputationError("local unit basis: dimension mismatch (internal)");
        return B;
    }

    // s == q == p: wild case
    long p = q;
    long m = (e * p) / (p - 1) + 1;  // floor(e*p/(p-1)) + 1
    B.power_threshold = static_cast<int>(m);
    if (F->precision() < 2 * m + e)
        throw PrecisionError("local_unit_basis: precision too small to certify the power "
                             "threshold; increase N to at least " + std::to_string(2 * m + e + 4));
    bool boundary_integral = (e % (p - 1)) == 0;
    long i0 = boundary_integral ? (e * p) / (p - 1) : -1;
    B.as_unit = F->residue(F->inv(F->mul(F->pow(F->uniformizer(), e),
                                         F->inv(F->from_integer(s)))));
    // mu_p present iff x^(p-1) = -as_unit solvable
    bool mu_p = false;
    Fq c0 = Fq(F->residue_field(), FpPoly());
    if (boundary_integral) {
        Fq target = ring_zero(B.as_unit) - B.as_unit;
        for (uint64_t i = 0; Int(i) < F->residue_field()->q; ++i) {
            Fq x = Fq::from_index(F->residue_field(), i);
            if (x.is_zero()) continue;
            if (x.pow(Int(p - 1)) == target) { mu_p = true; break; }
        }
    }
    // residue basis lifts: Teichmuller powers of the residue generator
    Fq g = fq_generator(F->residue_field());
    std::vector<LocalElem> lifts;
    std::vector<Fq> lift_res;
    {
        Fq cur = ring_one(g);
        for (int j = 0; j < f; ++j) {
            lifts.push_back(F->teichmuller(cur));
            lift_res.push_back(cur);
            cur = cur * g;
        }
    }
    LocalElem piE = F->uniformizer();
    for (long i = 1; i < m; ++i) {
        if (i % p == 0) continue;
        if (i == i0) continue;  // boundary handled after the loop
        for (int j = 0; j < f; ++j) {
            LocalElem gen = F->add(F->one(), F->mul(lifts[j], F->pow(piE, i)));
            std::ostringstream os;
            os << "u" << i << (f > 1 ? "_" + std::to_string(j) : "");
            B.gens.push_back({os.str(), gen});
            B.levels.push_back(static_cast<int>(i));
            B.level_coeffs.push_back(lift_res[j]);
        }
    }
    if (boundary_integral) B.boundary_level = static_cast<int>(i0);
    if (boundary_integral && mu_p) {
        B.has_boundary_gen = true;
        // first residue element outside the image of x -> x^p + as_unit*x
        bool found = false;
        for (uint64_t i = 1; Int(i) < F->residue_field()->q && !found; ++i) {
            Fq cand = Fq::from_index(F->residue_field(), i);
            if (artin_schreier_solve(B.as_unit, cand, p).empty()) {
                c0 = cand;
                found = true;
            }
        }
        if (!found) throw ComputationError("boundary generator not found (internal)");
        LocalElem gen = F->add(F->one(), F->mul(F->teichmuller(c0), F->pow(piE, i0)));
        B.gens.push_back({"u" + std::to_string(i0) + "b", gen});
        B.levels.push_back(static_cast<int>(i0));
        B.level_coeffs.push_back(c0);
    }
    // closed-form local index: q * #mu_q(K_P) * |q|_P^{-1} = p^{1 + delta + e*f}
    size_t expected = 1 + (mu_p ? 1 : 0) + static_cast<size_t>(e) * f;
    if (B.gens.size() != expected)
        throw ComputationError("local unit basis has " + std::to_string(B.gens.size()) +
                               " generators, expected " + std::to_string(expected));
    return B;
}

std::vector<int> local_class_log(const LocalUnitBasis& B, const LocalElem& x) {
    const LocalFieldPtr& F = B.F;
    long q = B.q;
    if (x.is_zero()) throw ComputationError("local_class_log of zero");
    std::vector<int> out(B.gens.size(), 0);
    out[0] = static_cast<int>(((x.val % q) + q) % q);
    LocalElem u = F->mul(x, F->pow(F->uniformizer(), -x.val));

    if (F->s() != Int(q)) {
        if (B.has_teichmuller) {
            Fq r = F->residue(u);
            Int k = fq_dlog(B.level_coeffs[1], r);
            out[1] = static_cast<int>(int_mod(k, Int(q)).get_ui());
        }
        return out;
    }
    long p = q;
    int f = F->f(), e = F->e();
    long m = B.power_threshold;
    // strip Teichmuller part (always a p-th power here)
    u = F->mul(u, F->inv(F->teichmuller(F->residue(u))));
    long guard = 4 * m + 8;
    while (guard-- > 0) {
        long lam = F->principal_level(u);
        if (lam >= m) break;
        Fq c = F->principal_coeff(u, lam);
        if (lam == B.boundary_level) {
            bool done = false;
            long amax = B.has_boundary_gen ? p : 1;
            for (long a = 0; a < amax && !done; ++a) {
                Fq rem = c;
                if (B.has_boundary_gen)
                    rem = c - B.level_coeffs.back() * Fq::from_int(F->residue_field(), Int(a));
                std::vector<Fq> sols;
                if (rem.is_zero())
                    sols.push_back(ring_zero(rem));
                else
                    sols = artin_schreier_solve(B.as_unit, rem, p);
                if (sols.empty()) continue;
                if (B.has_boundary_gen && a != 0) {
                    out.back() = static_cast<int>((out.back() + a) % p);
                    u = F->mul(u, F->pow(B.gens.back().elem, -a));
                }
                if (!sols[0].is_zero()) {
                    LocalElem move = F->add(
                        F->one(), F->mul(F->teichmuller(sols[0]),
                                         F->pow(F->uniformizer(), e / (p - 1))));
                    u = F->mul(u, F->pow(move, -p));
                }
                done = true;
            }
            if (!done) throw ComputationError("boundary level decomposition failed (internal)");
        } else if (lam % p == 0) {
            Fq z = fq_pth_root(c, p, f);
            LocalElem move =
                F->add(F->one(), F->mul(F->teichmuller(z), F->pow(F->uniformizer(), lam / p)));
            u = F->mul(u, F->pow(move, -p));
        } else {
            // basis level: solve c = sum a_j b_j over F_p
            std::vector<size_t> idxs;
            for (size_t i = 0; i < B.gens.size(); ++i)
                if (B.levels[i] == lam && static_cast<long>(B.levels[i]) != B.boundary_level)
                    idxs.push_back(i);
            if (static_cast<int>(idxs.size()) != f)
                throw ComputationError("missing basis level " + std::to_string(lam) +
                                       " (internal)");
            Mat<Fp> A;
            uint64_t pp = static_cast<uint64_t>(p);
            A.a.assign(f, std::vector<Fp>(f, Fp(0, pp)));
            std::vector<Fp> rhs(f, Fp(0, pp));
            for (int r = 0; r < f; ++r) {
                for (int j = 0; j < f; ++j) A.a[r][j] = B.level_coeffs[idxs[j]].rep.coeff(r);
                rhs[r] = c.rep.coeff(r);
            }
            auto sol = mat_solve(A, rhs);
            if (!sol) throw ComputationError("level decomposition failed (internal)");
            for (int j = 0; j < f; ++j) {
                long a = static_cast<long>((*sol)[j].v);
                if (a == 0) continue;
                out[idxs[j]] = static_cast<int>((out[idxs[j]] + a) % p);
                u = F->mul(u, F->pow(B.gens[idxs[j]].elem, -a));
            }
        }
    }
    if (guard <= 0) throw ComputationError("local_class_log did not terminate (internal)");
    return out;
}

PowerTestResult qth_power_test(const LocalUnitBasis& B, const LocalElem& x) {
    const LocalFieldPtr& F = B.F;
    long q = B.q;
    PowerTestResult res;
    if (x.is_zero()) throw ComputationError("qth_power_test of zero");
    if (((x.val % q) + q) % q != 0) return res;
    auto lg = local_class_log(B, x);
    for (int v : lg)
        if (v != 0) return res;
    res.is_power = true;
    // construct a root
    LocalElem u = F->mul(x, F->pow(F->uniformizer(), -x.val));
    LocalElem root = F->pow(F->uniformizer(), x.val / q);
    if (F->s() != Int(q)) {
        // residue root + Newton (tame)
        Fq r0 = F->residue(u);
        Int n(q);
        Int sf1 = int_pow(F->s(), F->f()) - 1;
        Fq g = fq_generator(F->residue_field());
        Int k = fq_dlog(g, r0);
        Int d = int_gcd(n, sf1);
        if (int_mod(k, d) != 0) throw ComputationError("tame root: residue not a power (internal)");
        Int xexp = int_mod((k / d) * *mod_inverse(n / d, sf1 / d), sf1 / d);
        LocalElem y = F->teichmuller(g.pow(xexp));
        // Newton: y <- y - (y^q - u)/(q y^(q-1))
        for (int it = 0; it < F->precision() + 4; ++it) {
            LocalElem fy = F->sub(F->pow(y, q), u);
            if (fy.is_zero()) break;
            LocalElem dy = F->mul(F->from_integer(Int(q)), F->pow(y, q - 1));
            y = F->sub(y, F->mul(fy, F->inv(dy)));
        }
        res.root = F->mul(root, y);
        return res;
    }
    // wild case: greedy digit peeling
    long p = q;
    int e = F->e(), f = F->f();
    long m = B.power_threshold;
    Fq r0 = F->residue(u);
    LocalElem y = F->teichmuller(fq_pth_root(r0, p, f));
    LocalElem acc = y;
    u = F->mul(u, F->inv(F->pow(y, p)));
    long cap = u.unit_prec - e - 1;
    long guard = 4 * (cap + m) + 16;
    while (guard-- > 0) {
        long lam = F->principal_level(u);
        if (lam >= cap) break;
        Fq c = F->principal_coeff(u, lam);
        LocalElem move;
        if (lam < m) {
            if (lam == B.boundary_level) {
                auto sols = artin_schreier_solve(B.as_unit, c, p);
                if (sols.empty())
                    throw ComputationError("root construction: boundary not solvable (internal)");
                Fq z = sols[0];
                if (z.is_zero())
                    throw ComputationError("root construction: zero boundary solution (internal)");
                move = F->add(F->one(), F->mul(F->teichmuller(z),
                                               F->pow(F->uniformizer(), e / (p - 1))));
            } else if (lam % p == 0) {
                move = F->add(F->one(), F->mul(F->teichmuller(fq_pth_root(c, p, f)),
                                               F->pow(F->uniformizer(), lam / p)));
            } else {
                throw ComputationError("root construction: unexpected level (internal)");
            }
        } else {
            // (1 + z*pi^(lam-e))^p = 1 + as_unit*z*pi^lam + ...
            Fq z = c / B.as_unit;
            if (z.is_zero()) throw ComputationError("root construction: zero coefficient");
            move = F->add(F->one(),
                          F->mul(F->teichmuller(z), F->pow(F->uniformizer(), lam - e)));
        }
        acc = F->mul(acc, move);
        u = F->mul(u, F->inv(F->pow(move, p)));
    }
    if (guard <= 0) throw ComputationError("root construction did not terminate (internal)");
    res.root = F->mul(root, acc);
    // the peeled root is determined modulo pi^(cap - e)
    res.root.unit_prec = std::max<long>(1, cap - e);
    // verify at the root's precision
    LocalElem chk = F->sub(F->pow(res.root, q), x);
    if (!chk.is_zero() && chk.val - x.val < cap - e)
        throw ComputationError("root verification failed (internal)");
    return res;
}

DisplayBasis make_display_basis(const LocalUnitBasis& B,
                                const std::vector<std::pair<std::string, LocalElem>>& gens) {
    if (gens.size() != B.gens.size())
        throw ConfigError("display basis must have " + std::to_string(B.gens.size()) +
                          " generators");
    DisplayBasis D;
    D.base = B;
    uint64_t p = static_cast<uint64_t>(B.q);
    size_t n = gens.size();
    Mat<Fp> R;
    R.a.assign(n, std::vector<Fp>(n, Fp(0, p)));
    for (size_t i = 0; i < n; ++i) {
        D.labels.push_back(gens[i].first);
        auto lg = local_class_log(B, gens[i].second);
        D.log_rows.push_back(lg);
        for (size_t j = 0; j < n; ++j) R.a[i][j] = Fp(static_cast<uint64_t>(lg[j]), p);
    }
    // invert R^T: augmented rref
    Mat<Fp> Aug;
    Aug.a.assign(n, std::vector<Fp>(2 * n, Fp(0, p)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) Aug.a[i][j] = R.a[j][i];
        Aug.a[i][n + i] = Fp(1, p);
    }
    auto piv = mat_rref(Aug);
    if (piv.size() != n || piv.back() >= n)
        throw ConfigError("display generators are not a basis of the local unit group");
    D.inverse.assign(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) D.inverse[i][j] = static_cast<int>(Aug.a[i][n + j].v);
    return D;
}

std::vector<int> display_log(const DisplayBasis& D, const LocalElem& x) {
    auto v = local_class_log(D.base, x);
    size_t n = v.size();
    uint64_t p = static_cast<uint64_t>(D.base.q);
    std::vector<int> w(n, 0);
    for (size_t i = 0; i < n; ++i) {
        uint64_t acc = 0;
        for (size_t j = 0; j < n; ++j)
            acc += static_cast<uint64_t>(D.inverse[i][j]) * static_cast<uint64_t>(v[j]);
        w[i] = static_cast<int>(acc % p);
    }
    return w;
}

Fq reduce_mod_prime(const NfElem& x, const PrimeIdeal& P) {
    auto F = LocalField::complete(P, 2 * P.e + 4);
    LocalElem e = F->from_global(x);
    if (!e.is_zero() && e.val < 0)
        throw ComputationError("reduce_mod_prime: element has a pole (valuation " +
                               std::to_string(e.val) + ")");
    return F->residue(e);
}

LocalElem LocalHom::apply(const LocalElem& x) const {
    if (x.is_zero()) return to->zero_elem();
    // evaluate the unit polynomial at theta_image, then scale by pi_image^val
    LocalElem acc = to->zero_elem();
    for (int i = x.unit.degree(); i >= 0; --i) {
        acc = to->mul(acc, theta_image);
        acc = to->add(acc, to->from_integer(x.unit.coeff(i)));
    }
    if (acc.is_zero())
        throw PrecisionError("local hom: unit image vanished (precision)");
    LocalElem r = to->mul(acc, to->pow(pi_image, x.val));
    r.unit_prec = std::min(r.unit_prec, e_rel * x.unit_prec);
    return r;
}

LocalHom make_local_hom(const LocalFieldPtr& from, const LocalFieldPtr& to, const NfHom& emb) {
    if (!same_field(emb.src, from->prime().F) || !same_field(emb.dst, to->prime().F))
        throw ComputationError("make_local_hom: embedding does not match completions");
    LocalHom h;
    h.from = from;
    h.to = to;
    h.theta_image = to->from_global(emb.gen_image);
    if (to->e() % from->e() != 0)
        throw ComputationError("make_local_hom: prime does not lie above the base prime");
    h.e_rel = to->e() / from->e();
    // verify that the defining polynomial of the base vanishes on the image
    {
        const QPoly& g = from->prime().F->defining();
        LocalElem acc = to->zero_elem();
        for (int i = g.degree(); i >= 0; --i) {
            acc = to->mul(acc, h.theta_image);
            acc = to->add(acc, to->from_integer(Int(g.coeff(i).get_num())));
        }
        if (!acc.is_zero() && acc.val < (to->precision() * 2) / 3)
            throw ComputationError("make_local_hom: completion does not lie over the base prime");
    }
    // image of the base uniformizer: evaluate its residue-ring polynomial at
    // the generator image
    {
        if (from->e() == 1) {
            h.pi_image = to->from_integer(from->s());
        } else {
            const ZPoly& raw = from->uniformizer_raw();
            LocalElem acc = to->zero_elem();
            for (int i = raw.degree(); i >= 0; --i) {
                acc = to->mul(acc, h.theta_image);
                acc = to->add(acc, to->from_integer(raw.coeff(i)));
            }
            // raw only represents pi modulo s^(M_from)
            acc.unit_prec = std::min(acc.unit_prec,
                                     static_cast<long>(to->e()) * from->s_precision() - acc.val);
            h.pi_image = acc;
        }
        if (h.pi_image.is_zero() || h.pi_image.val != h.e_rel)
            throw ComputationError("make_local_hom: uniformizer image has wrong valuation");
    }
    return h;
}

std::vector<FactorCompletion> factor_completions(const EtaleFactor& fc, const PrimeIdeal& P,
                                                 const LocalFieldPtr& Kloc, int N) {
    std::vector<FactorCompletion> out;
    auto primesL = primes_over(fc.field, P.s);
    // lift of the base prime's h evaluated at the embedded generator
    NfElem hval = fppoly_lift(P.h).eval_mapped(fc.emb.gen_image, [&](const Int& c) {
        return NfElem::from_rat(fc.field, Rat(c));
    });
    for (auto& PL : primesL) {
        // PL lies over P iff h(theta_K) reduces to 0 at PL
        bool over;
        if (hval.is_zero()) {
            over = true;
        } else {
            Fq r = reduce_mod_prime(hval, PL);
            over = r.is_zero();
        }
        if (!over) continue;
        FactorCompletion c;
        c.PL = PL;
        int NL = N * (PL.e / P.e > 0 ? PL.e / P.e : 1) + 4;
        c.F = LocalField::complete(PL, NL);
        c.hom = make_local_hom(Kloc, c.F, fc.emb);
        c.alpha = c.F->from_global(fc.root);
        out.push_back(std::move(c));
    }
    if (out.empty())
        throw ComputationError("no completion of factor " + fc.orbit_label +
                               " lies over the prime " + P.label);
    return out;
}

std::string exponents_str(const std::vector<int>& e, const std::vector<std::string>& labels) {
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (any) os << " ";
        any = true;
        os << labels[i];
        if (e[i] != 1) os << "^" << e[i];
    }
    if (!any) return "1";
    return os.str();
}

}  // namespace selmer
