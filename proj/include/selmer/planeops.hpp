#pragma once

#include "selmer/plane.hpp"

#include <map>

namespace selmer {


// coefficient access that tolerates the zero polynomial
template <class K>
K pcoeff(const Poly<K>& p, int i, const K& zero) {
    if (i < 0 || i > p.degree()) return zero;
    return p.c[i];
}

// Line a X + b Y + c Z = 0 with its intersection machinery; orbits carry
// their own parametrization.
template <class K>
PlaneDivisor<K> line_intersection(const PlaneQuartic<K>& Q, const K& a, const K& b, const K& c) {
    PlaneDivisor<K> D;
    const K zero = ring_zero(a), one = ring_one(a);
    if (a == zero && b == zero) {
        // the line Z = 0
        if (c == zero) throw ComputationError("degenerate line");
        for (size_t k = 0; k < Q.inf_orbits.size(); ++k)
            D.inf.emplace_back(k, Q.inf_orbits[k].z_mult);
        return D;
    }
    if (!(b == zero)) {
        // y = -(a x + c)/b, parametrized by x
        Poly<K> xt = Poly<K>::monomial(one, 1);
        Poly<K> yt = Poly<K>{std::vector<K>{zero - c / b, zero - a / b}};
        // restriction: substitute into affine curve
        Poly<K> r;
        for (int j = static_cast<int>(Q.ycoeffs.size()) - 1; j >= 0; --j)
            r = r * yt + Q.ycoeffs[j];
        long deficit = 4 - (r.is_zero() ? 0 : r.degree());
        if (r.is_zero()) throw ComputationError("line lies on the curve (impossible)");
        for (auto& [M, m] : field_factor(r)) {
            if (M.degree() == 0) continue;
            PlaneOrbit<K> orb{M, xt, poly_mod(yt, M), m};
            D.parts.push_back(std::move(orb));
        }
        if (deficit > 0) {
            // the line passes its infinity point [b : -a : 0] on the curve
            if (a == zero)
                throw ComputationError("line through [1:0:0] meets the curve there (unsupported)");
            K x0 = (zero - b) / a;
            bool found = false;
            for (size_t k = 0; k < Q.inf_orbits.size(); ++k) {
                if (Q.inf_orbits[k].A.degree() == 1 &&
                    Q.inf_orbits[k].A.coeff(0) == zero - x0) {
                    D.inf.emplace_back(k, static_cast<int>(deficit));
                    found = true;
                }
            }
            if (!found)
                throw ComputationError("line meets infinity outside the known orbits (internal)");
        }
        return D;
    }
    // vertical line x = -c/a, parametrized by y
    K x0 = (zero - c) / a;
    Poly<K> fib = Q.fiber(x0);
    if (fib.is_zero()) throw ComputationError("vertical line lies on the curve (impossible)");
    long deficit = 4 - fib.degree();
    for (auto& [M, m] : field_factor(fib)) {
        if (M.degree() == 0) continue;
        PlaneOrbit<K> orb{M, Poly<K>::constant(x0), poly_mod(Poly<K>::monomial(one, 1), M), m};
        D.parts.push_back(std::move(orb));
    }
    if (deficit > 0) {
        // passes [0:1:0]
        bool found = false;
        for (size_t k = 0; k < Q.inf_orbits.size(); ++k)
            if (Q.inf_orbits[k].A.eval(zero) == zero) {
                D.inf.emplace_back(k, static_cast<int>(deficit));
                found = true;
            }
        if (!found)
            throw ComputationError("vertical line meets infinity outside known orbits (internal)");
    }
    return D;
}

// charpoly of a coordinate over the orbit parameter: prod (x - coord(root))
template <class K>
Poly<K> orbit_coordinate_charpoly(const Poly<K>& M, const Poly<K>& coord) {
    const K one = ring_one(M.lc());
    int d = M.degree();
    std::vector<std::pair<K, K>> pts;
    K xv = ring_zero(one);
    for (int i = 0; i <= d; ++i) {
        Poly<K> expr = Poly<K>::constant(xv) - coord;
        K r = expr.is_zero() ? ring_zero(one) : poly_resultant(M, expr);
        pts.emplace_back(xv, r);
        xv = xv + one;
    }
    Poly<K> A;
    for (int i = 0; i <= d; ++i) {
        Poly<K> li = Poly<K>::constant(one);
        K den = one;
        for (int j = 0; j <= d; ++j) {
            if (i == j) continue;
            li = li * Poly<K>{std::vector<K>{ring_zero(one) - pts[j].first, one}};
            den = den * (pts[i].first - pts[j].first);
        }
        A = A + li.scaled(pts[i].second / den);
    }
    return poly_monic(A);
}

// express `target` as a polynomial in `sep` modulo M (both coordinates of the
// same orbit; requires sep to generate K[t]/M).
template <class K>
std::optional<Poly<K>> orbit_express(const Poly<K>& M, const Poly<K>& sep,
                                     const Poly<K>& target) {
    const K one = ring_one(M.lc());
    int d = M.degree();
    Mat<K> mat;
    mat.a.assign(d, std::vector<K>(d, ring_zero(one)));
    Poly<K> xp = Poly<K>::constant(one);
    for (int col = 0; col < d; ++col) {
        for (int row = 0; row < d; ++row) mat.a[row][col] = pcoeff(xp, row, ring_zero(one));
        xp = poly_mod(xp * sep, M);
    }
    std::vector<K> rhs(d, ring_zero(one));
    for (int row = 0; row < d; ++row) rhs[row] = pcoeff(target, row, ring_zero(one));
    auto sol = mat_solve(mat, rhs);
    if (!sol) return std::nullopt;
    return Poly<K>(std::move(*sol));
}

// canonical separated presentation: parametrized by x when the x-coordinates
// are distinct, otherwise by y; throws RetryShift when neither separates.
template <class K>
PlaneOrbit<K> canonicalize_orbit(const PlaneOrbit<K>& orb, int* axis_out = nullptr) {
    const K one = ring_one(orb.M.lc());
    Poly<K> tmono = Poly<K>::monomial(one, 1);
    auto try_axis = [&](const Poly<K>& sep, const Poly<K>& other,
                        int axis) -> std::optional<PlaneOrbit<K>> {
        Poly<K> A = orbit_coordinate_charpoly(orb.M, sep);
        if (!poly_is_squarefree(A)) return std::nullopt;
        auto eta = orbit_express(orb.M, sep, other);
        if (!eta) throw ComputationError("canonicalize_orbit: express failed (internal)");
        PlaneOrbit<K> out;
        out.M = A;
        if (axis == 0) {
            out.xt = poly_mod(tmono, A);
            out.yt = *eta;
        } else {
            out.xt = *eta;
            out.yt = poly_mod(tmono, A);
        }
        out.mult = orb.mult;
        if (axis_out) *axis_out = axis;
        return out;
    };
    if (auto r = try_axis(orb.xt, orb.yt, 0)) return *r;
    if (auto r = try_axis(orb.yt, orb.xt, 1)) return *r;
    throw RetryShift("orbit not separated by either coordinate");
}

template <class K>
void divisor_accumulate(std::vector<PlaneOrbit<K>>& acc, const PlaneOrbit<K>& orb, int sign) {
    PlaneOrbit<K> c = canonicalize_orbit(orb);
    c.mult *= sign;
    for (auto& e : acc) {
        if (e.M == c.M && e.xt == c.xt && e.yt == c.yt) {
            e.mult += c.mult;
            return;
        }
    }
    acc.push_back(std::move(c));
}

// D1 == D2 as divisors (canonical comparison; infinity parts included).
template <class K>
bool divisor_equal(const PlaneDivisor<K>& D1, const PlaneDivisor<K>& D2) {
    std::vector<PlaneOrbit<K>> acc;
    for (auto& p : D1.parts) divisor_accumulate(acc, p, 1);
    for (auto& p : D2.parts) divisor_accumulate(acc, p, -1);
    for (auto& e : acc)
        if (e.mult != 0) return false;
    std::map<size_t, int> inf;
    for (auto& [k, m] : D1.inf) inf[k] += m;
    for (auto& [k, m] : D2.inf) inf[k] -= m;
    for (auto& [k, m] : inf)
        if (m != 0) return false;
    return true;
}

// ---- interpolation ----

template <class K>
struct VanishCondition {
    bool at_infinity = false;
    PlaneOrbit<K> orbit;  // affine case (mult gives the vanishing order)
    size_t inf_index = 0;
    int inf_mult = 1;
};

// z-power coefficients of C(X, 1, Z) as polynomials in X
template <class K>
std::vector<Poly<K>> infinity_chart(const PlaneQuartic<K>& Q) {
    std::vector<Poly<K>> zc(5);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j) {
            int zk = 4 - i - j;
            const K& cc = Q.C.c[i][j];
            if (cc == ring_zero(cc)) continue;
            zc[zk] = zc[zk] + Poly<K>::monomial(cc, i);
        }
    return zc;
}

// Basis of forms of degree u vanishing as prescribed. Coefficient order:
// c[i][j] with i+j <= u, lexicographic by (i, j).
template <class K>
std::vector<Form<K>> forms_vanishing(const PlaneQuartic<K>& Q, int u,
                                     const std::vector<VanishCondition<K>>& conds) {
    const K one = ring_one(Q.C.c[4][0]);
    const K zero = ring_zero(one);
    std::vector<std::pair<int, int>> monos;
    for (int i = 0; i <= u; ++i)
        for (int j = 0; i + j <= u; ++j) monos.emplace_back(i, j);
    size_t ncols = monos.size();
    std::vector<std::vector<K>> rows;
    auto add_rows_modM = [&](const std::vector<Poly<K>>& colvals, const Poly<K>& M) {
        int dm = M.degree();
        for (int r = 0; r < dm; ++r) {
            std::vector<K> row(ncols, zero);
            for (size_t cidx = 0; cidx < ncols; ++cidx) row[cidx] = pcoeff(colvals[cidx], r, zero);
            rows.push_back(std::move(row));
        }
    };
    for (auto& cond : conds) {
        if (!cond.at_infinity) {
            const auto& orb = cond.orbit;
            int m = orb.mult;
            if (m == 1) {
                std::vector<Poly<K>> cols;
                for (auto& [i, j] : monos) {
                    Poly<K> v = Poly<K>::constant(one);
                    for (int n = 0; n < i; ++n) v = poly_mod(v * orb.xt, orb.M);
                    for (int n = 0; n < j; ++n) v = poly_mod(v * orb.yt, orb.M);
                    cols.push_back(v);
                }
                add_rows_modM(cols, orb.M);
            } else {
                // vanishing to order m along the curve: series conditions
                auto ctx = std::make_shared<const QuotCtx<K>>(QuotCtx<K>{orb.M});
                auto zser = curve_local_series(Q.ycoeffs, ctx, orb.xt, orb.yt, m);
                using QE = QuotElem<K>;
                QE x0(ctx, orb.xt);
                std::vector<QE> xs(m, ring_zero(x0));
                xs[0] = x0;
                if (m > 1) xs[1] = ring_one(x0);
                auto mulser = [&](const std::vector<QE>& p, const std::vector<QE>& q2) {
                    std::vector<QE> r(m, ring_zero(x0));
                    for (int i = 0; i < m; ++i)
                        for (int j = 0; i + j < m; ++j) r[i + j] = r[i + j] + p[i] * q2[j];
                    return r;
                };
                std::vector<std::vector<QE>> colser;
                for (size_t cidx = 0; cidx < ncols; ++cidx) {
                    auto [i, j] = monos[cidx];
                    std::vector<QE> v(m, ring_zero(x0));
                    v[0] = ring_one(x0);
                    for (int n = 0; n < i; ++n) v = mulser(v, xs);
                    for (int n = 0; n < j; ++n) v = mulser(v, zser);
                    colser.push_back(v);
                }
                int dm = orb.M.degree();
                for (int r = 0; r < m; ++r) {
                    for (int kc = 0; kc < dm; ++kc) {
                        std::vector<K> row(ncols, zero);
                        for (size_t cidx = 0; cidx < ncols; ++cidx)
                            row[cidx] = pcoeff(colser[cidx][r].rep, kc, zero);
                        rows.push_back(std::move(row));
                    }
                }
            }
        } else {
            // infinity: chart C(X, 1, Z); point orbit (A, z = 0)
            auto& io = Q.inf_orbits[cond.inf_index];
            int m = cond.inf_mult;
            auto zc = infinity_chart(Q);
            auto ctx = std::make_shared<const QuotCtx<K>>(QuotCtx<K>{io.A});
            using QE = QuotElem<K>;
            Poly<K> x0 = Poly<K>::monomial(one, 1);
            std::vector<QE> zser;
            if (m == 1) {
                zser.assign(1, QE(ctx, Poly<K>()));
            } else {
                zser = curve_local_series(zc, ctx, x0, Poly<K>(), m);
            }
            QE x0q(ctx, x0);
            std::vector<QE> xs(m, ring_zero(x0q));
            xs[0] = x0q;
            if (m > 1) xs[1] = ring_one(x0q);
            auto mulser = [&](const std::vector<QE>& p, const std::vector<QE>& q2) {
                std::vector<QE> r(m, ring_zero(x0q));
                for (int i = 0; i < m; ++i)
                    for (int j = 0; i + j < m; ++j) r[i + j] = r[i + j] + p[i] * q2[j];
                return r;
            };
            std::vector<std::vector<QE>> colser;
            for (size_t cidx = 0; cidx < ncols; ++cidx) {
                auto [i, j] = monos[cidx];
                int zk = u - i - j;  // F(X,1,Z): monomial X^i Z^(u-i-j)
                std::vector<QE> v(m, ring_zero(x0q));
                v[0] = ring_one(x0q);
                for (int n = 0; n < i; ++n) v = mulser(v, xs);
                for (int n = 0; n < zk; ++n) v = mulser(v, zser);
                colser.push_back(v);
            }
            int dm = io.A.degree();
            for (int r = 0; r < m; ++r)
                for (int kc = 0; kc < dm; ++kc) {
                    std::vector<K> row(ncols, zero);
                    for (size_t cidx = 0; cidx < ncols; ++cidx)
                        row[cidx] = pcoeff(colser[cidx][r].rep, kc, zero);
                    rows.push_back(std::move(row));
                }
        }
    }
    Mat<K> A(std::move(rows));
    std::vector<Form<K>> out;
    if (A.nrows() == 0) {
        // no conditions: full space
        for (size_t cidx = 0; cidx < ncols; ++cidx) {
            Form<K> f = Form<K>::make(u, one);
            f.c[monos[cidx].first][monos[cidx].second] = one;
            out.push_back(std::move(f));
        }
        return out;
    }
    auto ker = mat_kernel(A, one);
    for (auto& v : ker) {
        Form<K> f = Form<K>::make(u, one);
        for (size_t cidx = 0; cidx < ncols; ++cidx) f.c[monos[cidx].first][monos[cidx].second] = v[cidx];
        out.push_back(std::move(f));
    }
    return out;
}

// ---- principality and orders ----

template <class K>
PlaneDivisor<K> divisor_scale(const PlaneDivisor<K>& D, int n) {
    PlaneDivisor<K> r = D;
    for (auto& p : r.parts) p.mult *= n;
    for (auto& [k, m] : r.inf) m *= n;
    return r;
}

template <class K>
PlaneDivisor<K> form_divisor_with_known(const PlaneQuartic<K>& Q, const Form<K>& F,
                                        const PlaneDivisor<K>& known);

template <class K>
struct PrincipalityResult {
    bool decided = false;
    bool principal = false;
    std::optional<std::pair<Form<K>, Form<K>>> witness;  // numerator, denominator
};

// Split a divisor into positive and negative parts.
template <class K>
std::pair<PlaneDivisor<K>, PlaneDivisor<K>> divisor_split(const PlaneDivisor<K>& D) {
    PlaneDivisor<K> pos, neg;
    for (auto& p : D.parts) {
        if (p.mult > 0) pos.parts.push_back(p);
        else if (p.mult < 0) {
            auto q = p;
            q.mult = -q.mult;
            neg.parts.push_back(q);
        }
    }
    for (auto& [k, m] : D.inf) {
        if (m > 0) pos.inf.emplace_back(k, m);
        else if (m < 0) neg.inf.emplace_back(k, -m);
    }
    return {pos, neg};
}

template <class K>
std::vector<VanishCondition<K>> conditions_of(const PlaneDivisor<K>& D) {
    std::vector<VanishCondition<K>> conds;
    for (auto& p : D.parts) {
        VanishCondition<K> c;
        c.orbit = p;
        conds.push_back(std::move(c));
    }
    for (auto& [k, m] : D.inf) {
        VanishCondition<K> c;
        c.at_infinity = true;
        c.inf_index = k;
        c.inf_mult = m;
        conds.push_back(std::move(c));
    }
    return conds;
}

template <class K>
long divisor_total_degree(const PlaneQuartic<K>& Q, const PlaneDivisor<K>& D) {
    long d = D.degree();
    for (auto& [k, m] : D.inf) d += m * Q.inf_orbits[k].A.degree();
    return d;
}

// Decide whether the degree-0 divisor D is principal; returns a verified
// witness when it is. Degrades to undecided when the search degree cap is hit.
template <class K>
PrincipalityResult<K> divisor_principal(const PlaneQuartic<K>& Q, const PlaneDivisor<K>& D,
                                        int max_degree = 6) {
    PrincipalityResult<K> res;
    if (divisor_total_degree(Q, D) != 0)
        throw ComputationError("principality test needs a degree-0 divisor");
    auto [pos, neg] = divisor_split(D);
    long n = divisor_total_degree(Q, pos);
    if (n == 0) {
        res.decided = true;
        res.principal = true;
        return res;
    }
    for (int u = 1; u <= max_degree; ++u) {
        auto g0space = forms_vanishing(Q, u, conditions_of(neg));
        if (g0space.empty()) continue;
        // deterministic combinations of the kernel basis
        std::vector<Form<K>> candidates;
        candidates.insert(candidates.end(), g0space.begin(), g0space.end());
        const K one = ring_one(Q.C.c[4][0]);
        for (size_t i = 0; i + 1 < g0space.size() && candidates.size() < 12; ++i) {
            Form<K> f = g0space[i];
            for (int a = 0; a <= u; ++a)
                for (int b2 = 0; a + b2 <= u; ++b2)
                    f.c[a][b2] = f.c[a][b2] + g0space[i + 1].c[a][b2];
            candidates.push_back(std::move(f));
        }
        for (auto& G0 : candidates) {
            try {
                PlaneDivisor<K> div0 = form_divisor_with_known(Q, G0, neg);
                // residual R0 = div0 - neg
                PlaneDivisor<K> R0;
                {
                    std::vector<PlaneOrbit<K>> acc;
                    for (auto& p : div0.parts) divisor_accumulate(acc, p, 1);
                    for (auto& p : neg.parts) divisor_accumulate(acc, p, -1);
                    for (auto& e : acc) {
                        if (e.mult < 0)
                            throw ComputationError("witness divisor bookkeeping (internal)");
                        if (e.mult > 0) R0.parts.push_back(e);
                    }
                    std::map<size_t, int> im;
                    for (auto& [k, m] : div0.inf) im[k] += m;
                    for (auto& [k, m] : neg.inf) im[k] -= m;
                    for (auto& [k, m] : im) {
                        if (m < 0)
                            throw ComputationError("witness divisor bookkeeping (internal)");
                        if (m > 0) R0.inf.emplace_back(k, m);
                    }
                }
                // W: forms of degree u through R0 + pos
                PlaneDivisor<K> target = R0;
                for (auto& p : pos.parts) target.parts.push_back(p);
                for (auto& [k, m] : pos.inf) target.inf.emplace_back(k, m);
                auto W = forms_vanishing(Q, u, conditions_of(target));
                if (W.empty()) {
                    res.decided = true;
                    res.principal = false;
                    return res;
                }
                for (auto& G : W) {
                    try {
                        PlaneDivisor<K> divG = form_divisor_with_known(Q, G, target);
                        if (divisor_equal(divG, target)) {
                            res.decided = true;
                            res.principal = true;
                            res.witness = std::make_pair(G, G0);
                            return res;
                        }
                    } catch (const RetryShift&) {
                        continue;
                    }
                }
            } catch (const RetryShift&) {
                continue;
            }
        }
    }
    return res;  // undecided
}

// Order of vanishing of the form along the curve at infinity orbit k
// (0 when the form does not pass through it).
template <class K>
int form_infinity_order(const PlaneQuartic<K>& Q, const Form<K>& F, size_t k) {
    const K one = ring_one(Q.C.c[4][0]);
    auto& io = Q.inf_orbits[k];
    Poly<K> Finf = F.at_infinity();
    if (!poly_mod(Finf, io.A).is_zero()) return 0;
    int cap = 4 * F.deg + 1;
    auto zc = infinity_chart(Q);
    auto ctx = std::make_shared<const QuotCtx<K>>(QuotCtx<K>{io.A});
    using QE = QuotElem<K>;
    Poly<K> x0 = Poly<K>::monomial(one, 1);
    auto zser = curve_local_series(zc, ctx, x0, Poly<K>(), cap);
    QE x0q(ctx, x0);
    std::vector<QE> xs(cap, ring_zero(x0q));
    xs[0] = x0q;
    if (cap > 1) xs[1] = ring_one(x0q);
    auto mulser = [&](const std::vector<QE>& p, const std::vector<QE>& q2) {
        std::vector<QE> r(cap, ring_zero(x0q));
        for (int i = 0; i < cap; ++i)
            for (int j = 0; i + j < cap; ++j) r[i + j] = r[i + j] + p[i] * q2[j];
        return r;
    };
    std::vector<QE> acc(cap, ring_zero(x0q));
    for (int i = 0; i <= F.deg; ++i)
        for (int j = 0; i + j <= F.deg; ++j) {
            const K& cc = F.c[i][j];
            if (cc == ring_zero(cc)) continue;
            std::vector<QE> v(cap, ring_zero(x0q));
            v[0] = QE(ctx, Poly<K>::constant(cc));
            for (int n = 0; n < i; ++n) v = mulser(v, xs);
            for (int n = 0; n < F.deg - i - j; ++n) v = mulser(v, zser);
            for (int i2 = 0; i2 < cap; ++i2) acc[i2] = acc[i2] + v[i2];
        }
    for (int r = 0; r < cap; ++r)
        if (!(acc[r] == ring_zero(x0q))) return r;
    throw ComputationError("form vanishes along the curve at infinity beyond its degree");
}

// Complete intersection divisor of a form with the quartic. Vertical
// components are decomposed fiberwise; clusters not separated by x raise
// RetryShift.
template <class K>
PlaneDivisor<K> form_divisor(const PlaneQuartic<K>& Q, const Form<K>& F) {
    const K one = ring_one(Q.C.c[4][0]);
    const K zero = ring_zero(one);
    PlaneDivisor<K> D;
    auto Fy = F.affine_ycoeffs();
    // x-content: vertical components
    Poly<K> content;
    {
        bool first = true;
        for (auto& pj : Fy) {
            if (pj.is_zero()) continue;
            content = first ? poly_monic(pj) : poly_gcd(content, pj);
            first = false;
        }
        if (first) content = Poly<K>::constant(one);  // no affine part at all
    }
    if (content.degree() > 0) {
        for (auto& [M, m] : field_factor(content)) {
            if (M.degree() == 0) continue;
            if (M.degree() > 1)
                throw RetryShift("vertical component over an extension (unsupported)");
            K c = zero - M.coeff(0);
            Poly<K> fib = Q.fiber(c);
            if (fib.is_zero()) throw ComputationError("curve contains a vertical line");
            for (auto& [My, my] : field_factor(fib)) {
                if (My.degree() == 0) continue;
                PlaneOrbit<K> orb{My, Poly<K>::constant(c),
                                  poly_mod(Poly<K>::monomial(one, 1), My), m * my};
                D.parts.push_back(std::move(orb));
            }
        }
        for (auto& pj : Fy)
            if (!pj.is_zero()) pj = poly_divrem(pj, content).first;
        // re-divide the content exactly
    }
    // residual via the y-resultant (content-free part)
    bool has_affine = false;
    for (auto& pj : Fy)
        if (!pj.is_zero()) has_affine = true;
    if (has_affine) {
        Poly<K> R = resultant_y(Q.ycoeffs, Fy);
        if (R.is_zero()) throw RetryShift("form shares a component with the curve");
        R = poly_monic(R);
        for (auto& [M, m] : field_factor(R)) {
            if (M.degree() == 0) continue;
            auto ctx = std::make_shared<const QuotCtx<K>>(QuotCtx<K>{M});
            auto reduce_ycoeffs = [&](const std::vector<Poly<K>>& yc) {
                std::vector<QuotElem<K>> out;
                for (auto& pj : yc) out.push_back(QuotElem<K>(ctx, poly_mod(pj, M)));
                return Poly<QuotElem<K>>(std::move(out));
            };
            Poly<QuotElem<K>> Cq = reduce_ycoeffs(Q.ycoeffs);
            Poly<QuotElem<K>> Fq2 = reduce_ycoeffs(Fy);
            Poly<QuotElem<K>> g = poly_gcd(Cq, Fq2);
            std::vector<PlaneOrbit<K>> found;
            if (g.degree() == 1) {
                QuotElem<K> yq = ring_zero(g.lc()) - (g.coeff(0) / g.coeff(1));
                found.push_back({M, Poly<K>::monomial(one, 1), yq.rep, m});
            } else if (M.degree() == 1) {
                // several fiber points share this rational x; split in y
                K xv = zero - M.coeff(0);
                Poly<K> gy;
                for (int d = 0; d <= g.degree(); ++d) {
                    const Poly<K>& rp = g.coeff(d).rep;
                    gy = gy + Poly<K>::monomial(rp.is_zero() ? zero : rp.coeff(0), d);
                }
                auto yfac = field_factor(gy);
                int total = 0;
                for (auto& [My, my] : yfac) total += My.degree() * my;
                if (total != m || total != g.degree())
                    throw RetryShift("mixed tangency in a shared-x cluster");
                for (auto& [My, my] : yfac) {
                    if (my != 1) throw RetryShift("mixed tangency in a shared-x cluster");
                    found.push_back({My, Poly<K>::constant(xv),
                                     poly_mod(Poly<K>::monomial(one, 1), My), 1});
                }
            } else {
                throw RetryShift("intersection cluster not separated by x");
            }
            for (auto& orb : found) {
                bool merged = false;
                for (auto& p : D.parts) {
                    if (p.M == orb.M && p.xt == orb.xt && p.yt == orb.yt) {
                        p.mult += orb.mult;
                        merged = true;
                        break;
                    }
                }
                if (!merged) D.parts.push_back(std::move(orb));
            }
        }
    }
    // infinity multiplicities of the full form
    long total = 0;
    for (auto& p : D.parts) total += p.mult * p.M.degree();
    for (size_t k = 0; k < Q.inf_orbits.size(); ++k) {
        int m = form_infinity_order(Q, F, k);
        if (m > 0) {
            D.inf.emplace_back(k, m);
            total += static_cast<long>(m) * Q.inf_orbits[k].A.degree();
        }
    }
    if (total != 4 * F.deg)
        throw ComputationError("intersection degree bookkeeping failed (internal)");
    return D;
}

// form_divisor, then check containment of `known` and return the full divisor.
template <class K>
PlaneDivisor<K> form_divisor_with_known(const PlaneQuartic<K>& Q, const Form<K>& F,
                                        const PlaneDivisor<K>& known) {
    PlaneDivisor<K> D = form_divisor(Q, F);
    // containment check: D - known effective
    std::vector<PlaneOrbit<K>> acc;
    for (auto& p : D.parts) divisor_accumulate(acc, p, 1);
    for (auto& p : known.parts) divisor_accumulate(acc, p, -1);
    for (auto& e : acc)
        if (e.mult < 0)
            throw ComputationError("form does not pass through a required orbit (internal)");
    std::map<size_t, int> im;
    for (auto& [k, m] : D.inf) im[k] += m;
    for (auto& [k, m] : known.inf) im[k] -= m;
    for (auto& [k, m] : im)
        if (m < 0) throw ComputationError("form misses required infinity multiplicity (internal)");
    return D;
}

// Exact order of the class of D (degree-0): smallest n <= nmax with nD
// principal. Returns 0 when undecided within the degree cap.
template <class K>
long divisor_order(const PlaneQuartic<K>& Q, const PlaneDivisor<K>& D, long nmax,
                   int max_degree = 6) {
    for (long n = 1; n <= nmax; ++n) {
        auto r = divisor_principal(Q, divisor_scale(D, static_cast<int>(n)), max_degree);
        if (!r.decided) return 0;
        if (r.principal) return n;
    }
    return 0;
}

namespace detail {
// deterministic small combinations of a kernel basis
template <class K>
std::vector<Form<K>> form_candidates(const std::vector<Form<K>>& basis, const K& one) {
    std::vector<Form<K>> out = basis;
    auto axpy = [&](const Form<K>& f, const Form<K>& g, const K& t) {
        Form<K> r = f;
        for (int i = 0; i <= f.deg; ++i)
            for (int j = 0; i + j <= f.deg; ++j) r.c[i][j] = r.c[i][j] + t * g.c[i][j];
        return r;
    };
    K two = one + one, three = two + one;
    for (size_t i = 0; i + 1 < basis.size(); ++i) {
        out.push_back(axpy(basis[i], basis[i + 1], one));
        out.push_back(axpy(basis[i], basis[i + 1], ring_zero(one) - one));
        out.push_back(axpy(basis[i], basis[i + 1], two));
        out.push_back(axpy(basis[i], basis[i + 1], three));
    }
    if (basis.size() >= 3) {
        for (size_t i = 0; i + 2 < basis.size(); ++i) {
            out.push_back(axpy(axpy(basis[i], basis[i + 1], one), basis[i + 2], one));
            out.push_back(axpy(axpy(basis[i], basis[i + 1], two), basis[i + 2], three));
            out.push_back(axpy(axpy(basis[i], basis[i + 1], three), basis[i + 2], two));
        }
    }
    return out;
}
}  // namespace detail

// Evaluate the affine function a x + b y + c on the class of D, shifting by
// divisors of form ratios until the representative avoids the function's
// zeros and poles. The result is well defined modulo q-th powers for any q
// (shifts contribute div(h) with h defined over the base field).
template <class K>
K evaluate_linear_on_class(const PlaneQuartic<K>& Q, PlaneDivisor<K> D, const K& a, const K& b,
                           const K& c, int max_rounds = 8) {
    const K one = ring_one(a), zero = ring_zero(a);
    auto is_bad_orbit = [&](const PlaneOrbit<K>& p) {
        Poly<K> expr = p.xt.scaled(a) + p.yt.scaled(b) + Poly<K>::constant(c);
        if (expr.is_zero()) return true;
        return poly_resultant(p.M, expr) == zero;
    };
    for (int round = 0; round < max_rounds; ++round) {
        PlaneDivisor<K> needpos, needneg;  // parts to add / remove
        for (auto& p : D.parts) {
            if (!is_bad_orbit(p)) continue;
            PlaneOrbit<K> q2 = p;
            q2.mult = std::abs(p.mult);
            if (p.mult < 0) needpos.parts.push_back(q2);
            else needneg.parts.push_back(q2);
        }
        for (auto& [k, m] : D.inf) {
            if (m < 0) needpos.inf.emplace_back(k, -m);
            else if (m > 0) needneg.inf.emplace_back(k, m);
        }
        bool anybad = !(needpos.parts.empty() && needneg.parts.empty() && needpos.inf.empty() &&
                        needneg.inf.empty());
        if (!anybad) break;
        // try shifting forms of increasing degree until progress happens
        bool improved = false;
        for (int U = 1; U <= 4 && !improved; ++U) {
            std::vector<Form<K>> numspace = forms_vanishing(
                Q, U, (needpos.parts.empty() && needpos.inf.empty())
                          ? std::vector<VanishCondition<K>>{}
                          : conditions_of(needpos));
            std::vector<Form<K>> denspace = forms_vanishing(
                Q, U, (needneg.parts.empty() && needneg.inf.empty())
                          ? std::vector<VanishCondition<K>>{}
                          : conditions_of(needneg));
            if (numspace.empty() || denspace.empty()) continue;
            auto numc = detail::form_candidates(numspace, one);
            auto denc = detail::form_candidates(denspace, one);
            std::vector<std::optional<PlaneDivisor<K>>> ddcache(denc.size());
            for (auto& Gn : numc) {
                if (improved) break;
                PlaneDivisor<K> dn;
                try {
                    dn = form_divisor(Q, Gn);
                } catch (const RetryShift&) {
                    continue;
                }
                for (size_t di = 0; di < denc.size(); ++di) {
                    if (!ddcache[di]) {
                        try {
                            ddcache[di] = form_divisor(Q, denc[di]);
                        } catch (const RetryShift&) {
                            ddcache[di] = PlaneDivisor<K>();
                            ddcache[di]->inf.emplace_back(9999, 0);  // marker: unusable
                        }
                    }
                    const PlaneDivisor<K>& dd = *ddcache[di];
                    if (!dd.inf.empty() && dd.inf[0].first == 9999) continue;
                    // candidate new divisor
                    PlaneDivisor<K> nd = D;
                    for (auto& p : dn.parts) nd.parts.push_back(p);
                    for (auto& p : dd.parts) {
                        auto q2 = p;
                        q2.mult = -q2.mult;
                        nd.parts.push_back(q2);
                    }
                    for (auto& [k, m] : dn.inf) nd.inf.emplace_back(k, m);
                    for (auto& [k, m] : dd.inf) nd.inf.emplace_back(k, -m);
                    // consolidate
                    PlaneDivisor<K> cons;
                    try {
                        std::vector<PlaneOrbit<K>> acc;
                        for (auto& p : nd.parts) divisor_accumulate(acc, p, 1);
                        for (auto& e : acc)
                            if (e.mult != 0) cons.parts.push_back(e);
                    } catch (const RetryShift&) {
                        continue;
                    }
                    std::map<size_t, int> im;
                    for (auto& [k, m] : nd.inf) im[k] += m;
                    for (auto& [k, m] : im)
                        if (m != 0) cons.inf.emplace_back(k, m);
                    // progress: strictly smaller bad locus
                    long badnow = 0, badold = 0;
                    for (auto& p : cons.parts)
                        if (is_bad_orbit(p)) badnow += std::abs(p.mult) * p.M.degree();
                    for (auto& p : D.parts)
                        if (is_bad_orbit(p)) badold += std::abs(p.mult) * p.M.degree();
                    long infnow = 0, infold = 0;
                    for (auto& [k, m] : cons.inf) infnow += std::abs(m);
                    for (auto& [k, m] : D.inf) infold += std::abs(m);
                    if (badnow + infnow < badold + infold) {
                        D = cons;
                        improved = true;
                        break;
                    }
                }
            }
        }
        if (!improved)
            throw ComputationError("shifting made no progress; deterministic budget exhausted");
    }
    return affine_linear_value(D, a, b, c);
}

}  // namespace selmer
