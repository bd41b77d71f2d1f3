#pragma once

#include "selmer/etale.hpp"
#include "selmer/ffcurve.hpp"
#include "selmer/linalg.hpp"

#include <functional>
#include <memory>

namespace selmer {

// Shifting and interpolation on smooth plane quartics, generic over the
// coefficient field (number field elements or finite fields).

struct RetryShift : ComputationError {
    using ComputationError::ComputationError;
};

// ---- factorization dispatch ----

std::vector<std::pair<Poly<NfElem>, int>> field_factor(const Poly<NfElem>& f);
inline std::vector<std::pair<Poly<Fq>, int>> field_factor(const Poly<Fq>& f) {
    return fq_factor_small(f);
}

// ---- arithmetic in K[t]/(M) for M irreducible over K ----

template <class K>
struct QuotCtx {
    Poly<K> M;  // monic irreducible
};

template <class K>
struct QuotElem {
    std::shared_ptr<const QuotCtx<K>> ctx;
    Poly<K> rep;

    QuotElem() = default;
    QuotElem(std::shared_ptr<const QuotCtx<K>> c, Poly<K> r) : ctx(std::move(c)), rep(std::move(r)) {
        if (rep.degree() >= ctx->M.degree()) rep = poly_mod(rep, ctx->M);
    }
    friend bool operator==(const QuotElem& a, const QuotElem& b) { return a.rep == b.rep; }
    friend QuotElem operator+(const QuotElem& a, const QuotElem& b) {
        return QuotElem(a.ctx, a.rep + b.rep);
    }
    friend QuotElem operator-(const QuotElem& a, const QuotElem& b) {
        return QuotElem(a.ctx, a.rep - b.rep);
    }
    friend QuotElem operator*(const QuotElem& a, const QuotElem& b) {
        return QuotElem(a.ctx, poly_mod(a.rep * b.rep, a.ctx->M));
    }
    QuotElem inv() const {
        auto [g, u, v] = poly_xgcd(rep, ctx->M);
        if (g.degree() != 0)
            throw ComputationError("QuotElem inverse: modulus not irreducible or zero element");
        return QuotElem(ctx, u.scaled(ring_one(g.coeff(0)) / g.coeff(0)));
    }
    friend QuotElem operator/(const QuotElem& a, const QuotElem& b) { return a * b.inv(); }
};

template <class K>
QuotElem<K> ring_zero(const QuotElem<K>& a) {
    return QuotElem<K>(a.ctx, Poly<K>());
}
template <class K>
QuotElem<K> ring_one(const QuotElem<K>& a) {
    K one = ring_one(a.ctx->M.lc());
    return QuotElem<K>(a.ctx, Poly<K>::constant(one));
}

// ---- divisors on the quartic ----

template <class K>
struct PlaneOrbit {
    Poly<K> M;       // monic squarefree parameter polynomial
    Poly<K> xt, yt;  // affine coordinates as polynomials in the parameter
    int mult = 1;
};

template <class K>
struct PlaneDivisor {
    std::vector<PlaneOrbit<K>> parts;
    std::vector<std::pair<size_t, int>> inf;  // (infinity orbit index, multiplicity)

    long degree() const {
        long d = 0;
        for (auto& p : parts) d += p.mult * p.M.degree();
        return d;  // affine degree only; add infinity separately
    }
};

// dense ternary form of degree u: coefficients c[i][j] of X^i Y^j Z^(u-i-j)
template <class K>
struct Form {
    int deg = 0;
    std::vector<std::vector<K>> c;

    static Form make(int u, const K& sample) {
        Form f;
        f.deg = u;
        f.c.assign(u + 1, std::vector<K>(u + 1, ring_zero(sample)));
        return f;
    }
    template <class T>
    T eval(const T& x, const T& y, const T& z, std::function<T(const K&)> lift) const {
        T acc = ring_zero(x);
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; i + j <= deg; ++j) {
                if (c[i][j] == ring_zero(c[i][j])) continue;
                T t = lift(c[i][j]);
                for (int n = 0; n < i; ++n) t = t * x;
                for (int n = 0; n < j; ++n) t = t * y;
                for (int n = 0; n < deg - i - j; ++n) t = t * z;
                acc = acc + t;
            }
        return acc;
    }
    // affine polynomial in y with x-polynomial coefficients (z = 1)
    std::vector<Poly<K>> affine_ycoeffs() const {
        std::vector<Poly<K>> out(deg + 1);
        for (int j = 0; j <= deg; ++j) {
            Poly<K> pj;
            for (int i = 0; i + j <= deg; ++i) {
                if (c[i][j] == ring_zero(c[i][j])) continue;
                pj = pj + Poly<K>::monomial(c[i][j], i);
            }
            out[j] = pj;
        }
        return out;
    }
    Poly<K> at_infinity() const {  // F(X, 1, 0) as polynomial in X
        Poly<K> out;
        for (int i = 0; i <= deg; ++i) {
            const K& cc = c[i][deg - i];
            if (cc == ring_zero(cc)) continue;
            out = out + Poly<K>::monomial(cc, i);
        }
        return out;
    }
};

template <class K>
class PlaneQuartic {
  public:
    Form<K> C;
    std::vector<Poly<K>> ycoeffs;  // affine C(x, y) by y-power
    struct InfOrbit {
        Poly<K> A;    // monic irreducible, x-coordinates of [x:1:0] points
        int z_mult;   // intersection multiplicity of Z = 0 there
    };
    std::vector<InfOrbit> inf_orbits;

    static PlaneQuartic make(Form<K> form) {
        PlaneQuartic Q;
        Q.C = std::move(form);
        if (Q.C.deg != 4) throw ComputationError("plane quartic must have degree 4");
        const K& x4 = Q.C.c[4][0];
        if (x4 == ring_zero(x4))
            throw ComputationError("quartic with [1:0:0] on the curve is unsupported");
        Q.ycoeffs = Q.C.affine_ycoeffs();
        Poly<K> infpoly = Q.C.at_infinity();
        // total multiplicity at infinity = 4 - deg(infpoly)... no: points at
        // infinity are roots of C(X,1,0); [1:0:0] excluded above, so the
        // degree-4 coefficient is X^4's and infpoly has degree 4 exactly when
        // [1:0:0] not on curve. Points with Y = 0 at infinity handled there.
        for (auto& [h, m] : field_factor(infpoly)) {
            if (h.degree() == 0) continue;
            Q.inf_orbits.push_back({h, m});
        }
        return Q;
    }

    K eval_affine(const K& x, const K& y) const {
        K acc = ring_zero(x);
        for (int j = static_cast<int>(ycoeffs.size()) - 1; j >= 0; --j)
            acc = acc * y + ycoeffs[j].eval(x);
        return acc;
    }

    Poly<K> fiber(const K& x) const {  // C(x, Y) in Y
        std::vector<K> c;
        for (auto& pj : ycoeffs) c.push_back(pj.eval(x));
        return Poly<K>(std::move(c));
    }
};

// Resultant of two polynomials in Y over K[x] via fraction-free determinant.
template <class K>
Poly<K> resultant_y(const std::vector<Poly<K>>& A, const std::vector<Poly<K>>& B) {
    int n = static_cast<int>(A.size()) - 1, m = static_cast<int>(B.size()) - 1;
    while (n >= 0 && A[n].is_zero()) --n;
    while (m >= 0 && B[m].is_zero()) --m;
    if (n < 0 || m < 0) return Poly<K>();
    if (n == 0) {
        // Res(const, B) = A0^m
        Poly<K> r = Poly<K>::constant(ring_one(A[0].lc()));
        for (int i = 0; i < m; ++i) r = r * A[0];
        return r;
    }
    if (m == 0) {
        Poly<K> r = Poly<K>::constant(ring_one(B[0].lc()));
        for (int i = 0; i < n; ++i) r = r * B[0];
        return r;
    }
    int N = n + m;
    // Sylvester matrix over K[x]
    std::vector<std::vector<Poly<K>>> S(N, std::vector<Poly<K>>(N, Poly<K>()));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) S[r][r + i] = A[n - i];
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) S[m + r][r + i] = B[m - i];
    // Bareiss elimination with exact division
    Poly<K> denom = Poly<K>::constant(ring_one(A[n].is_zero() ? B[m].lc() : A[n].lc()));
    bool neg = false;
    for (int k = 0; k < N - 1; ++k) {
        if (S[k][k].is_zero()) {
            int swap = -1;
            for (int r = k + 1; r < N; ++r)
                if (!S[r][k].is_zero()) { swap = r; break; }
            if (swap < 0) return Poly<K>();  // singular: resultant 0
            std::swap(S[k], S[swap]);
            neg = !neg;
        }
        for (int r = k + 1; r < N; ++r) {
            for (int cidx = k + 1; cidx < N; ++cidx) {
                Poly<K> num = S[r][cidx] * S[k][k] - S[r][k] * S[k][cidx];
                auto [q, rr] = poly_divrem(num, denom);
                if (!rr.is_zero())
                    throw ComputationError("resultant_y: inexact Bareiss division (internal)");
                S[r][cidx] = q;
            }
            S[r][k] = Poly<K>();
        }
        denom = S[k][k];
    }
    Poly<K> res = S[N - 1][N - 1];
    if (neg) res = -res;
    return res;
}

// Intersection divisor of a form with the quartic. Requires every affine
// intersection cluster to be separated by x (one point per root of each
// x-factor); throws RetryShift otherwise. Infinity intersections must be
// declared: expected_inf[k] = multiplicity at inf orbit k.
template <class K>
PlaneDivisor<K> form_intersection(const PlaneQuartic<K>& Q, const Form<K>& F,
                                  const std::vector<int>& expected_inf) {
    PlaneDivisor<K> D;
    auto Fy = F.affine_ycoeffs();
    Poly<K> R = resultant_y(Q.ycoeffs, Fy);
    if (R.is_zero()) throw RetryShift("form shares a component with the curve");
    long expected_infinity = 0;
    for (size_t k = 0; k < Q.inf_orbits.size(); ++k) {
        int want = k < expected_inf.size() ? expected_inf[k] : 0;
        // verify the declared infinity behavior
        Poly<K> Finf = F.at_infinity();
        Poly<K> red = poly_mod(Finf, Q.inf_orbits[k].A);
        if (want > 0) {
            if (!red.is_zero()) throw RetryShift("form misses a declared infinity orbit");
        } else {
            if (red.is_zero()) throw RetryShift("form meets an undeclared infinity orbit");
        }
        expected_infinity += static_cast<long>(want) * Q.inf_orbits[k].A.degree();
        if (want > 0) D.inf.emplace_back(k, want);
    }
    if (R.degree() != 4 * F.deg - expected_infinity)
        throw RetryShift("unexpected intersection degree at infinity");
    for (auto& [M, m] : field_factor(R)) {
        if (M.degree() == 0) continue;
        auto ctx = std::make_shared<const QuotCtx<K>>(QuotCtx<K>{M});
        K one = ring_one(M.lc());
        auto lift = [&](const Poly<K>& g) {
            return Poly<QuotElem<K>>(std::vector<QuotElem<K>>{QuotElem<K>(ctx, g)});
        };
        // gcd of C(t, Y), F(t, Y) over K[t]/M must be linear in Y
        QuotElem<K> t(ctx, Poly<K>::monomial(one, 1));
        auto reduce_ycoeffs = [&](const std::vector<Poly<K>>& yc) {
            std::vector<QuotElem<K>> out;
            for (auto& pj : yc) out.push_back(QuotElem<K>(ctx, poly_mod(pj, M)));
            return Poly<QuotElem<K>>(std::move(out));
        };
        Poly<QuotElem<K>> Cq = reduce_ycoeffs(Q.ycoeffs);
        Poly<QuotElem<K>> Fq2 = reduce_ycoeffs(Fy);
        Poly<QuotElem<K>> g = poly_gcd(Cq, Fq2);
        if (g.degree() != 1) throw RetryShift("intersection cluster not separated by x");
        QuotElem<K> yq = ring_zero(t) - (g.coeff(0) / g.coeff(1));
        PlaneOrbit<K> orb;
        orb.M = M;
        orb.xt = Poly<K>::monomial(one, 1);
        orb.yt = yq.rep;
        orb.mult = m;
        D.parts.push_back(std::move(orb));
    }
    return D;
}

// Value of the affine function a x + b y + c on the divisor's affine parts
// (infinity parts are the caller's responsibility).
template <class K>
K affine_linear_value(const PlaneDivisor<K>& D, const K& a, const K& b, const K& c) {
    K val = ring_one(a);
    for (auto& part : D.parts) {
        Poly<K> expr = part.xt.scaled(a) + part.yt.scaled(b) + Poly<K>::constant(c);
        K v = expr.is_zero() ? ring_zero(a) : poly_resultant(part.M, expr);
        if (v == ring_zero(a))
            throw RetryShift("divisor support meets the evaluated line");
        // integer powers
        K acc = ring_one(a);
        int e = part.mult < 0 ? -part.mult : part.mult;
        for (int i = 0; i < e; ++i) acc = acc * v;
        if (part.mult < 0) acc = ring_one(a) / acc;
        val = val * acc;
    }
    return val;
}

// Local power-series solution z(eps) with F(x0 + eps, z(eps)) = 0 (affine
// chart), z(0) = z0, requiring dF/dz nonzero at the point. Coefficients live
// in K[t]/(M). Returns z as a polynomial in eps of degree < order.
template <class K>
std::vector<QuotElem<K>> curve_local_series(const std::vector<Poly<K>>& ycoeffs,
                                            const std::shared_ptr<const QuotCtx<K>>& ctx,
                                            const Poly<K>& x0, const Poly<K>& z0, int order) {
    using Q = QuotElem<K>;
    Q x0q(ctx, x0), z0q(ctx, z0);
    // series arithmetic: vectors of QuotElem mod eps^order
    auto mulser = [&](const std::vector<Q>& a, const std::vector<Q>& b) {
        std::vector<Q> r(order, ring_zero(x0q));
        for (int i = 0; i < order; ++i)
            for (int j = 0; i + j < order; ++j) r[i + j] = r[i + j] + a[i] * b[j];
        return r;
    };
    auto evalser = [&](const std::vector<Q>& z) {
        // F(x0 + eps, z) as a series
        std::vector<Q> x(order, ring_zero(x0q));
        x[0] = x0q;
        if (order > 1) x[1] = ring_one(x0q);
        std::vector<Q> acc(order, ring_zero(x0q));
        for (int j = static_cast<int>(ycoeffs.size()) - 1; j >= 0; --j) {
            acc = mulser(acc, z);
            // add ycoeffs[j](x0 + eps)
            std::vector<Q> cj(order, ring_zero(x0q));
            // binomial expansion via Horner in (x0 + eps)
            for (int d = ycoeffs[j].degree(); d >= 0; --d) {
                cj = mulser(cj, x);
                cj[0] = cj[0] + Q(ctx, Poly<K>::constant(ycoeffs[j].coeff(d)));
            }
            for (int i = 0; i < order; ++i) acc[i] = acc[i] + cj[i];
        }
        return acc;
    };
    std::vector<Q> z(order, ring_zero(x0q));
    z[0] = z0q;
    // dF/dz at the point
    Q dz = ring_zero(x0q);
    {
        Q zp = ring_one(x0q);
        for (size_t j = 1; j < ycoeffs.size(); ++j) {
            Q cx = ring_zero(x0q);  // ycoeffs[j](x0)
            for (int d = ycoeffs[j].degree(); d >= 0; --d)
                cx = cx * x0q + Q(ctx, Poly<K>::constant(ycoeffs[j].coeff(d)));
            Q jfac = ring_zero(x0q);
            for (size_t rep = 0; rep < j; ++rep) jfac = jfac + ring_one(x0q);
            dz = dz + jfac * cx * zp;
            zp = zp * z0q;
        }
    }
    if (dz == ring_zero(dz))
        throw ComputationError("curve_local_series: vertical tangent (unsupported chart)");
    Q dzinv = dz.inv();
    for (int k = 1; k < order; ++k) {
        auto val = evalser(z);
        // coefficient of eps^k must vanish; correct z_k
        z[k] = z[k] - val[k] * dzinv;
    }
    auto chk = evalser(z);
    for (int i = 0; i < order; ++i)
        if (!(chk[i] == ring_zero(chk[i])))
            throw ComputationError("curve_local_series: iteration failed (internal)");
    return z;
}

}  // namespace selmer
