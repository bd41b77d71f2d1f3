#pragma once

#include "selmer/poly.hpp"

#include <optional>
#include <vector>

namespace selmer {

// Dense exact linear algebra over any field type following the
// ring_zero/ring_one protocol (Rat, Fp, NfElem, ...).
template <class K>
struct Mat {
    std::vector<std::vector<K>> a;  // row major

    Mat() = default;
    Mat(std::vector<std::vector<K>> rows) : a(std::move(rows)) {}
    size_t nrows() const { return a.size(); }
    size_t ncols() const { return a.empty() ? 0 : a[0].size(); }

    static Mat identity(size_t n, const K& sample) {
        Mat m;
        m.a.assign(n, std::vector<K>(n, ring_zero(sample)));
        for (size_t i = 0; i < n; ++i) m.a[i][i] = ring_one(sample);
        return m;
    }
};

// Row echelon reduction in place; returns pivot column indices.
template <class K>
std::vector<size_t> mat_rref(Mat<K>& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t col = 0; col < m.ncols() && r < m.nrows(); ++col) {
        size_t sel = r;
        while (sel < m.nrows() && m.a[sel][col] == ring_zero(m.a[sel][col])) ++sel;
        if (sel == m.nrows()) continue;
        std::swap(m.a[sel], m.a[r]);
        K inv = ring_one(m.a[r][col]) / m.a[r][col];
        for (auto& x : m.a[r]) x = x * inv;
        for (size_t i = 0; i < m.nrows(); ++i) {
            if (i == r) continue;
            K f = m.a[i][col];
            if (f == ring_zero(f)) continue;
            for (size_t j = 0; j < m.ncols(); ++j) m.a[i][j] = m.a[i][j] - f * m.a[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

template <class K>
size_t mat_rank(Mat<K> m) {
    return mat_rref(m).size();
}

// Solve A x = b; returns one solution if consistent.
template <class K>
std::optional<std::vector<K>> mat_solve(const Mat<K>& A, const std::vector<K>& b) {
    if (A.nrows() != b.size()) throw ComputationError("mat_solve: dimension mismatch");
    if (A.nrows() == 0) return std::vector<K>(A.ncols(), K());
    Mat<K> m = A;
    for (size_t i = 0; i < m.nrows(); ++i) m.a[i].push_back(b[i]);
    auto pivots = mat_rref(m);
    size_t ncols = A.ncols();
    const K z = ring_zero(b.empty() ? m.a[0][0] : b[0]);
    // inconsistency: pivot in the augmented column
    if (!pivots.empty() && pivots.back() == ncols) return std::nullopt;
    std::vector<K> x(ncols, z);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m.a[i][ncols];
    return x;
}

// Basis of the right kernel {x : A x = 0}.
template <class K>
std::vector<std::vector<K>> mat_kernel(Mat<K> m, const K& sample) {
    size_t n = m.ncols();
    auto pivots = mat_rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<K>> basis;
    const K z = ring_zero(sample), o = ring_one(sample);
    for (size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(n, z);
        v[free] = o;
        for (size_t i = 0; i < pivots.size(); ++i) {
            if (pivots[i] < n) v[pivots[i]] = z - m.a[i][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class K>
K mat_det(Mat<K> m) {
    if (m.nrows() != m.ncols()) throw ComputationError("det of non-square matrix");
    if (m.nrows() == 0) throw ComputationError("det of empty matrix");
    K det = ring_one(m.a[0][0]);
    bool neg = false;
    size_t n = m.nrows();
    for (size_t col = 0; col < n; ++col) {
        size_t sel = col;
        while (sel < n && m.a[sel][col] == ring_zero(det)) ++sel;
        if (sel == n) return ring_zero(det);
        if (sel != col) {
            std::swap(m.a[sel], m.a[col]);
            neg = !neg;
        }
        det = det * m.a[col][col];
        K inv = ring_one(det) / m.a[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            K f = m.a[i][col] * inv;
            if (f == ring_zero(f)) continue;
            for (size_t j = col; j < n; ++j) m.a[i][j] = m.a[i][j] - f * m.a[col][j];
        }
    }
    if (neg) det = ring_zero(det) - det;
    return det;
}

// Row space spanned by given vectors, reduced; rows sorted by pivot.
template <class K>
std::vector<std::vector<K>> row_space_basis(std::vector<std::vector<K>> rows, const K& sample) {
    if (rows.empty()) return rows;
    Mat<K> m(std::move(rows));
    auto pivots = mat_rref(m);
    std::vector<std::vector<K>> out;
    for (size_t i = 0; i < pivots.size(); ++i) out.push_back(m.a[i]);
    (void)sample;
    return out;
}

// Does v lie in the row space of basis?
template <class K>
bool in_row_space(const std::vector<std::vector<K>>& basis, const std::vector<K>& v,
                  const K& sample) {
    std::vector<std::vector<K>> rows = basis;
    size_t r0 = mat_rank(Mat<K>(rows));
    rows.push_back(v);
    size_t r1 = mat_rank(Mat<K>(rows));
    (void)sample;
    return r0 == r1;
}

// Intersection of two row spaces in K^n.
template <class K>
std::vector<std::vector<K>> row_space_intersection(const std::vector<std::vector<K>>& A,
                                                   const std::vector<std::vector<K>>& B,
                                                   const K& sample) {
    if (A.empty() || B.empty()) return {};
    size_t n = A[0].size();
    // x*A = y*B  <=>  [A^T | -B^T] (x,y)^T = 0
    Mat<K> m;
    m.a.assign(n, std::vector<K>(A.size() + B.size(), ring_zero(sample)));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < A.size(); ++i) m.a[j][i] = A[i][j];
        for (size_t i = 0; i < B.size(); ++i) m.a[j][A.size() + i] = ring_zero(sample) - B[i][j];
    }
    auto ker = mat_kernel(m, sample);
    std::vector<std::vector<K>> rows;
    for (auto& k : ker) {
        std::vector<K> v(n, ring_zero(sample));
        for (size_t i = 0; i < A.size(); ++i)
            for (size_t j = 0; j < n; ++j) v[j] = v[j] + k[i] * A[i][j];
        rows.push_back(std::move(v));
    }
    return row_space_basis(std::move(rows), sample);
}

}  // namespace selmer
