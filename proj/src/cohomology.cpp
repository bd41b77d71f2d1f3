#include "selmer/cohomology.hpp"

namespace selmer {

namespace {

Mat<Fp> mat_mul(const Mat<Fp>& A, const Mat<Fp>& B) {
    size_t n = A.nrows(), m = B.ncols(), k = A.ncols();
    uint64_t p = A.a[0][0].p;
    Mat<Fp> C;
    C.a.assign(n, std::vector<Fp>(m, Fp(0, p)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A.a[i][l].v == 0) continue;
            for (size_t j = 0; j < m; ++j) C.a[i][j] = C.a[i][j] + A.a[i][l] * B.a[l][j];
        }
    return C;
}

Mat<Fp> mat_inv(const Mat<Fp>& A) {
    size_t n = A.nrows();
    uint64_t p = A.a[0][0].p;
    Mat<Fp> aug;
    aug.a.assign(n, std::vector<Fp>(2 * n, Fp(0, p)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.a[i][j] = A.a[i][j];
        aug.a[i][n + i] = Fp(1, p);
    }
    auto piv = mat_rref(aug);
    if (piv.size() != n || piv.back() >= n)
        throw ConfigError("group action matrix is singular");
    Mat<Fp> inv;
    inv.a.assign(n, std::vector<Fp>(n, Fp(0, p)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.a[i][j] = aug.a[i][n + j];
    return inv;
}

std::vector<Fp> mat_apply(const Mat<Fp>& A, const std::vector<Fp>& v) {
    std::vector<Fp> out(A.nrows(), Fp(0, A.a.empty() ? 2 : A.a[0][0].p));
    for (size_t i = 0; i < A.nrows(); ++i) {
        Fp acc(0, v.empty() ? 2 : v[0].p);
        for (size_t j = 0; j < A.ncols(); ++j) acc = acc + A.a[i][j] * v[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace

Mat<Fp> FiniteGModule::act_word(const std::vector<int>& word) const {
    Mat<Fp> M = Mat<Fp>::identity(dim, Fp(0, p));
    for (int letter : word) {
        int idx = std::abs(letter) - 1;
        Mat<Fp> g = action[idx];
        if (letter < 0) g = mat_inv(g);
        M = mat_mul(M, g);
    }
    return M;
}

void FiniteGModule::verify_relations() const {
    if (static_cast<int>(action.size()) != group.ngens)
        throw ConfigError("module needs one action matrix per generator");
    for (auto& rel : group.relators) {
        Mat<Fp> M = act_word(rel);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (M.a[i][j].v != (i == j ? 1u : 0u))
                    throw ConfigError("module action violates a group relation");
    }
}

H1Result h1_finite_group(const FiniteGModule& M) {
    M.verify_relations();
    uint64_t p = M.p;
    int d = M.dim, g = M.group.ngens;
    H1Result res;
    if (g == 0) {
        res.dim = 0;
        return res;
    }
    // unknowns: c(g_i) in F_p^d. For a relator w = l_1...l_k the cocycle value
    // c(w) = sum_j rho(l_1..l_{j-1}) c(l_j) must vanish, where
    // c(g^{-1}) = -rho(g)^{-1} c(g).
    std::vector<std::vector<Fp>> rows;
    for (auto& rel : M.group.relators) {
        // coefficient matrices per generator
        std::vector<Mat<Fp>> coef(g, Mat<Fp>());
        for (int i = 0; i < g; ++i) coef[i].a.assign(d, std::vector<Fp>(d, Fp(0, p)));
        Mat<Fp> prefix = Mat<Fp>::identity(d, Fp(0, p));
        for (int letter : rel) {
            int idx = std::abs(letter) - 1;
            if (letter > 0) {
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        coef[idx].a[i][j] = coef[idx].a[i][j] + prefix.a[i][j];
                prefix = mat_mul(prefix, M.action[idx]);
            } else {
                Mat<Fp> ginv = mat_inv(M.action[idx]);
                Mat<Fp> t = mat_mul(prefix, ginv);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        coef[idx].a[i][j] = coef[idx].a[i][j] - t.a[i][j];
                prefix = t;
            }
        }
        for (int r = 0; r < d; ++r) {
            std::vector<Fp> row(g * d, Fp(0, p));
            for (int i = 0; i < g; ++i)
                for (int j = 0; j < d; ++j) row[i * d + j] = coef[i].a[r][j];
            rows.push_back(std::move(row));
        }
    }
    std::vector<std::vector<Fp>> Z;
    if (rows.empty()) {
        // free group: all assignments are cocycles
        for (int i = 0; i < g * d; ++i) {
            std::vector<Fp> v(g * d, Fp(0, p));
            v[i] = Fp(1, p);
            Z.push_back(std::move(v));
        }
    } else {
        Mat<Fp> A(std::move(rows));
        Z = mat_kernel(A, Fp(0, p));
    }
    // coboundaries: m -> (rho(g_i) m - m)
    std::vector<std::vector<Fp>> B;
    for (int col = 0; col < d; ++col) {
        std::vector<Fp> m(d, Fp(0, p));
        m[col] = Fp(1, p);
        std::vector<Fp> v(g * d, Fp(0, p));
        for (int i = 0; i < g; ++i) {
            auto gm = mat_apply(M.action[i], m);
            for (int j = 0; j < d; ++j) v[i * d + j] = gm[j] - m[j];
        }
        B.push_back(std::move(v));
    }
    size_t zdim = row_space_basis(Z, Fp(0, p)).size();
    size_t bdim = row_space_basis(B, Fp(0, p)).size();
    res.dim = static_cast<int>(zdim - bdim);
    // cocycle representatives spanning Z (not reduced mod B; callers use dim)
    for (auto& z : Z) {
        std::vector<std::vector<int>> c(g, std::vector<int>(d, 0));
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < d; ++j) c[i][j] = static_cast<int>(z[i * d + j].v);
        res.cocycles.push_back(std::move(c));
    }
    return res;
}

ShapiroResult shapiro_decompose(const std::vector<OrbitStabilizer>& orbits, long q) {
    if (!is_prime(Int(q))) throw ConfigError("shapiro_decompose needs prime q");
    ShapiroResult res;
    for (auto& orb : orbits) {
        if (static_cast<int>(orb.mu_exponents.size()) != orb.stabilizer.ngens)
            throw ConfigError("orbit " + orb.label + ": one mu-exponent per generator required");
        FiniteGModule M;
        M.group = orb.stabilizer;
        M.p = static_cast<uint64_t>(q);
        M.dim = 1;
        for (long e : orb.mu_exponents) {
            Mat<Fp> a;
            a.a.assign(1, std::vector<Fp>(1, Fp(static_cast<uint64_t>(((e % q) + q) % q),
                                                static_cast<uint64_t>(q))));
            M.action.push_back(a);
        }
        int d = h1_finite_group(M).dim;
        res.per_orbit.emplace_back(orb.label, d);
        res.total += d;
    }
    return res;
}

Assumption2Result assumption2_check(const FiniteGModule& A, const FiniteGModule& B,
                                    const Mat<Fp>& w) {
    Assumption2Result res;
    if (A.p != B.p || A.group.ngens != B.group.ngens)
        throw ConfigError("assumption2_check: module mismatch");
    uint64_t p = A.p;
    // module-level injectivity
    Mat<Fp> wm = w;
    auto ker = mat_kernel(wm, Fp(0, p));
    if (!ker.empty()) {
        res.module_injective = false;
        res.h1_injective = false;
        for (auto& x : ker[0]) res.kernel_witness.push_back(static_cast<int>(x.v));
        return res;
    }
    res.module_injective = true;
    // equivariance: w rho_A(g) == rho_B(g) w for each generator
    for (int i = 0; i < A.group.ngens; ++i) {
        Mat<Fp> lhs = mat_mul(w, A.action[i]);
        Mat<Fp> rhs = mat_mul(B.action[i], w);
        for (size_t r = 0; r < lhs.nrows(); ++r)
            for (size_t c = 0; c < lhs.ncols(); ++c)
                if (!(lhs.a[r][c] == rhs.a[r][c]))
                    throw ConfigError("assumption2_check: map is not G-equivariant");
    }
    // induced map on H^1: push cocycles of A through w; kernel modulo
    // coboundaries of B must meet the cocycle space of A only in coboundaries
    auto HA = h1_finite_group(A);
    int g = A.group.ngens, dA = A.dim, dB = B.dim;
    // coboundaries of A and B as row spaces
    auto cobound = [&](const FiniteGModule& M) {
        std::vector<std::vector<Fp>> Bv;
        for (int col = 0; col < M.dim; ++col) {
            std::vector<Fp> m(M.dim, Fp(0, p));
            m[col] = Fp(1, p);
            std::vector<Fp> v(g * M.dim, Fp(0, p));
            for (int i = 0; i < g; ++i) {
                auto gm = mat_apply(M.action[i], m);
                for (int j = 0; j < M.dim; ++j) v[i * M.dim + j] = gm[j] - m[j];
            }
            Bv.push_back(std::move(v));
        }
        return Bv;
    };
    auto BB = cobound(B);
    auto BA = cobound(A);
    // solve: which combinations of A-cocycles map into B-coboundaries
    // unknowns: coefficients over the HA cocycle list + the B-coboundary space
    std::vector<std::vector<Fp>> cols;
    for (auto& z : HA.cocycles) {
        std::vector<Fp> v(g * dB, Fp(0, p));
        for (int i = 0; i < g; ++i) {
            std::vector<Fp> zi(dA, Fp(0, p));
            for (int j = 0; j < dA; ++j) zi[j] = Fp(static_cast<uint64_t>(z[i][j]), p);
            auto wz = mat_apply(w, zi);
            for (int j = 0; j < dB; ++j) v[i * dB + j] = wz[j];
        }
        cols.push_back(std::move(v));
    }
    // kernel of (cocycles of A) -> H^1(B): vectors x with sum x_i w(z_i) in BB
    Mat<Fp> M2;
    size_t n = g * static_cast<size_t>(dB);
    M2.a.assign(n, std::vector<Fp>(cols.size() + BB.size(), Fp(0, p)));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < cols.size(); ++i) M2.a[j][i] = cols[i][j];
        for (size_t i = 0; i < BB.size(); ++i) M2.a[j][cols.size() + i] = Fp(0, p) - BB[i][j];
    }
    auto ker2 = mat_kernel(M2, Fp(0, p));
    // for each kernel vector: the A-cocycle combination must be an A-coboundary
    for (auto& k : ker2) {
        std::vector<Fp> comb(g * dA, Fp(0, p));
        bool nonzero = false;
        for (size_t i = 0; i < cols.size(); ++i) {
            if (k[i].v == 0) continue;
            nonzero = true;
            for (int gi = 0; gi < g; ++gi)
                for (int j = 0; j < dA; ++j)
                    comb[gi * dA + j] =
                        comb[gi * dA + j] +
                        k[i] * Fp(static_cast<uint64_t>(HA.cocycles[i][gi][j]), p);
        }
        if (!nonzero) continue;
        if (!in_row_space(BA, comb, Fp(0, p))) {
            res.h1_injective = false;
            return res;
        }
    }
    res.h1_injective = true;
    return res;
}

PresentedGroup trivial_group() { return PresentedGroup{0, {}}; }

PresentedGroup cyclic_group(int n) {
    PresentedGroup G;
    G.ngens = 1;
    G.relators.push_back(std::vector<int>(n, 1));
    return G;
}

PresentedGroup symmetric3() {
    PresentedGroup G;
    G.ngens = 2;  // a (order 2), b (order 3), (ab)^2 = 1
    G.relators = {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}};
    return G;
}

}  // namespace selmer
