#include "selmer/numfield.hpp"

#include "selmer/linalg.hpp"

namespace selmer {

NumberField::NumberField(std::string label, QPoly defining, bool check_irreducible)
    : label_(std::move(label)), g_(std::move(defining)) {
    if (g_.degree() < 1) throw ConfigError("number field needs degree >= 1");
    if (!g_.is_monic()) throw ConfigError("defining polynomial must be monic");
    for (auto& c : g_.c)
        if (!rat_is_integer(c)) throw ConfigError("defining polynomial must have integer coefficients");
    if (check_irreducible && g_.degree() > 1 && !q_is_irreducible(g_))
        throw ConfigError("defining polynomial is reducible: " + poly_to_string(g_, "x"));
}

NfPtr NumberField::rationals() {
    static NfPtr q = NumberField::make("q", QPoly::monomial(Rat(1), 1), false);
    return q;
}

NfElem NfElem::inv() const {
    if (is_zero()) throw ComputationError("number field division by zero");
    auto [g, u, v] = poly_xgcd(rep, F->defining());
    if (g.degree() != 0)
        throw ComputationError("non-invertible element (defining polynomial reducible?)");
    return NfElem(F, u.scaled(Rat(1) / g.coeff(0)));
}

NfElem NfElem::pow(long e) const {
    NfElem b = *this;
    if (e < 0) {
        b = b.inv();
        e = -e;
    }
    NfElem r = ring_one(*this);
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Rat NfElem::norm_q() const {
    if (rep.is_zero()) return Rat(0);
    return poly_resultant(F->defining(), rep);
}

Rat NfElem::trace_q() const {
    // trace of the multiplication-by-a matrix on the power basis
    Rat t(0);
    int n = F->degree();
    QPoly cur = rep;  // a * theta^0
    for (int j = 0; j < n; ++j) {
        t += cur.coeff(j);
        if (j + 1 < n) cur = poly_mod(cur.shifted(1), F->defining());
    }
    return t;
}

Int NfElem::denominator() const {
    Int d = 1;
    for (auto& c : rep.c) d = int_lcm(d, c.get_den());
    return d;
}

NfHom::NfHom(NfPtr s, NfPtr d, NfElem img) : src(std::move(s)), dst(std::move(d)), gen_image(std::move(img)) {
    if (gen_image.F != dst) throw ConfigError("embedding image lives in the wrong field");
    NfElem chk = src->defining().eval_mapped(gen_image, [&](const Rat& c) {
        return NfElem::from_rat(dst, c);
    });
    if (!chk.is_zero())
        throw ConfigError("claimed embedding does not satisfy the defining polynomial of " +
                          src->label());
}

static std::vector<Rat> nf_vec(const NfElem& a, int n) {
    std::vector<Rat> v(n, Rat(0));
    for (int i = 0; i <= a.rep.degree(); ++i) v[i] = a.rep.coeff(i);
    return v;
}

NfPoly relative_minpoly(const NfHom& emb, const NfElem& a) {
    const NfPtr& K = emb.src;
    const NfPtr& L = emb.dst;
    int nL = L->degree(), nK = K->degree();
    if (nL % nK != 0) throw ComputationError("relative degree is not integral");
    int m = nL / nK;
    NfElem theta = emb.gen_image;
    // power caches
    std::vector<NfElem> apow{ring_one(a)};
    for (int i = 1; i <= m; ++i) apow.push_back(apow.back() * a);
    std::vector<NfElem> tpow{NfElem::from_rat(L, Rat(1))};
    for (int j = 1; j < nK; ++j) tpow.push_back(tpow.back() * theta);
    for (int mp = 1; mp <= m; ++mp) {
        // columns: theta^j * a^i, i < mp, j < nK; target a^mp
        Mat<Rat> A;
        A.a.assign(nL, std::vector<Rat>(mp * nK, Rat(0)));
        for (int i = 0; i < mp; ++i)
            for (int j = 0; j < nK; ++j) {
                auto col = nf_vec(apow[i] * tpow[j], nL);
                for (int r = 0; r < nL; ++r) A.a[r][i * nK + j] = col[r];
            }
        auto sol = mat_solve(A, nf_vec(apow[mp], nL));
        if (!sol) continue;
        // minpoly = x^mp - sum c_i x^i, c_i = sum_j sol[i*nK+j] theta_K^j
        std::vector<NfElem> coeffs;
        for (int i = 0; i < mp; ++i) {
            QPoly c;
            for (int j = 0; j < nK; ++j)
                if ((*sol)[i * nK + j] != 0)
                    c = c + QPoly::monomial((*sol)[i * nK + j], j);
            coeffs.push_back(NfElem(K, -c));
        }
        coeffs.push_back(NfElem::from_rat(K, Rat(1)));
        return NfPoly(std::move(coeffs));
    }
    throw ComputationError("relative_minpoly: no relation found (internal)");
}

RelativeExt relative_extension(const NfHom& emb, const NfElem& alpha) {
    RelativeExt ext;
    ext.emb = emb;
    ext.alpha = alpha;
    ext.minpoly = relative_minpoly(emb, alpha);
    int m = emb.dst->degree() / emb.src->degree();
    if (ext.minpoly.degree() != m)
        throw ComputationError("element does not generate the extension over the base");
    return ext;
}

NfPoly express_in_relative_basis(const RelativeExt& ext, const NfElem& a) {
    const NfPtr& K = ext.emb.src;
    const NfPtr& L = ext.emb.dst;
    int nL = L->degree(), nK = K->degree();
    int m = ext.rel_degree();
    NfElem theta = ext.emb.gen_image;
    std::vector<NfElem> apow{ring_one(ext.alpha)};
    for (int i = 1; i < m; ++i) apow.push_back(apow.back() * ext.alpha);
    std::vector<NfElem> tpow{NfElem::from_rat(L, Rat(1))};
    for (int j = 1; j < nK; ++j) tpow.push_back(tpow.back() * theta);
    Mat<Rat> A;
    A.a.assign(nL, std::vector<Rat>(m * nK, Rat(0)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < nK; ++j) {
            auto col = nf_vec(apow[i] * tpow[j], nL);
            for (int r = 0; r < nL; ++r) A.a[r][i * nK + j] = col[r];
        }
    auto sol = mat_solve(A, nf_vec(a, nL));
    if (!sol) throw ComputationError("express_in_relative_basis: element outside field (internal)");
    std::vector<NfElem> coeffs;
    for (int i = 0; i < m; ++i) {
        QPoly c;
        for (int j = 0; j < nK; ++j)
            if ((*sol)[i * nK + j] != 0) c = c + QPoly::monomial((*sol)[i * nK + j], j);
        coeffs.push_back(NfElem(K, c));
    }
    return NfPoly(std::move(coeffs));
}

NfElem relative_norm(const RelativeExt& ext, const NfElem& a) {
    if (a.is_zero()) return NfElem::from_rat(ext.emb.src, Rat(0));
    NfPoly c = express_in_relative_basis(ext, a);
    if (c.is_zero()) return NfElem::from_rat(ext.emb.src, Rat(0));
    return poly_resultant(ext.minpoly, c);
}

NfElem relative_norm_by_det(const RelativeExt& ext, const NfElem& a) {
    int m = ext.rel_degree();
    const NfPtr& K = ext.emb.src;
    Mat<NfElem> M;
    M.a.assign(m, std::vector<NfElem>(m, NfElem::from_rat(K, Rat(0))));
    NfElem cur = a;
    for (int i = 0; i < m; ++i) {
        NfPoly col = express_in_relative_basis(ext, cur);
        for (int r = 0; r <= col.degree(); ++r) M.a[r][i] = col.coeff(r);
        if (i + 1 < m) cur = cur * ext.alpha;
    }
    return mat_det(M);
}

QPoly absolute_minpoly(const NfElem& a) {
    int n = a.F->degree();
    std::vector<NfElem> apow{ring_one(a)};
    for (int i = 1; i <= n; ++i) apow.push_back(apow.back() * a);
    for (int d = 1; d <= n; ++d) {
        Mat<Rat> A;
        A.a.assign(n, std::vector<Rat>(d, Rat(0)));
        for (int i = 0; i < d; ++i) {
            auto col = nf_vec(apow[i], n);
            for (int r = 0; r < n; ++r) A.a[r][i] = col[r];
        }
        auto sol = mat_solve(A, nf_vec(apow[d], n));
        if (!sol) continue;
        QPoly mp = QPoly::monomial(Rat(1), d);
        for (int i = 0; i < d; ++i) mp = mp - QPoly::monomial((*sol)[i], i);
        return mp;
    }
    throw ComputationError("absolute_minpoly: no relation (internal)");
}

}  // namespace selmer
