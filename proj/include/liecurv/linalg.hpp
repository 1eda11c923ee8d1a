#pragma once

#include "liecurv/scalar.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <numeric>
#include <vector>

namespace liecurv {

/// Relative pivot threshold used on the float path.
inline constexpr double default_singularity_threshold = 1e-12;

// ---------------------------------------------------------------------------
// exact row reduction

/// In-place reduced row echelon form over the rationals. Returns pivot columns.
inline std::vector<int> rref_in_place(MatQ& m) {
    std::vector<int> pivots;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r) m.row(p).swap(m.row(r));
        const Rational inv = 1 / m(r, c);
        for (Eigen::Index k = c; k < cols; ++k)
            if (m(r, k) != 0) m(r, k) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Rational f = m(i, c);
            for (Eigen::Index k = c; k < cols; ++k)
                if (m(r, k) != 0) m(i, k) -= f * m(r, k);
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

/// Null space basis from a matrix already in RREF with the given pivots.
inline MatQ nullspace_from_rref(const MatQ& reduced, const std::vector<int>& pivots) {
    const Eigen::Index cols = reduced.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<int> free;
    for (Eigen::Index c = 0; c < cols; ++c)
        if (!is_pivot[c]) free.push_back(static_cast<int>(c));
    MatQ basis = MatQ::Zero(cols, static_cast<Eigen::Index>(free.size()));
    for (std::size_t f = 0; f < free.size(); ++f) {
        basis(free[f], f) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (reduced(r, free[f]) != 0) basis(pivots[r], f) = -reduced(r, free[f]);
    }
    return basis;
}

// ---------------------------------------------------------------------------
// rank, kernel, inverse on either backend

template <class S>
int rank(const Mat<S>& m, double threshold = default_singularity_threshold) {
    if (m.size() == 0) return 0;
    if constexpr (is_exact_v<S>) {
        MatQ copy = m;
        return static_cast<int>(rref_in_place(copy).size());
    } else {
        Eigen::FullPivLU<MatD> lu(m);
        lu.setThreshold(threshold);
        return static_cast<int>(lu.rank());
    }
}

/// Columns span the kernel of m. Exact backend returns the RREF-derived basis.
template <class S>
Mat<S> nullspace(const Mat<S>& m, double threshold = default_singularity_threshold) {
    if (m.rows() == 0) return Mat<S>::Identity(m.cols(), m.cols());
    if constexpr (is_exact_v<S>) {
        MatQ copy = m;
        auto piv = rref_in_place(copy);
        return nullspace_from_rref(copy, piv);
    } else {
        Eigen::FullPivLU<MatD> lu(m);
        lu.setThreshold(threshold);
        if (lu.rank() == m.cols()) return MatD(m.cols(), 0);
        return lu.kernel();
    }
}

/// Inverse of a nondegenerate square matrix; throws MathRejection otherwise.
template <class S>
Mat<S> inverse(const Mat<S>& m, double threshold = default_singularity_threshold) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw InvalidArgument("inverse: matrix is not square");
    if constexpr (is_exact_v<S>) {
        MatQ aug(n, 2 * n);
        aug << m, MatQ::Identity(n, n);
        auto piv = rref_in_place(aug);
        if (static_cast<Eigen::Index>(piv.size()) < n || (n > 0 && piv[n - 1] != n - 1))
            throw MathRejection("inverse: matrix is singular");
        return aug.rightCols(n);
    } else {
        Eigen::FullPivLU<MatD> lu(m);
        lu.setThreshold(threshold);
        if (!lu.isInvertible()) throw MathRejection("inverse: matrix is singular");
        return lu.inverse();
    }
}

/// Reduced column echelon form with zero columns dropped: a canonical basis of
/// the column space (exact backend).
inline MatQ column_echelon(const MatQ& m) {
    MatQ t = m.transpose();
    auto piv = rref_in_place(t);
    return t.topRows(static_cast<Eigen::Index>(piv.size())).transpose();
}

template <class S>
bool same_column_space(const Mat<S>& a, const Mat<S>& b, double threshold = default_singularity_threshold) {
    if (a.rows() != b.rows()) return false;
    const int ra = rank(a, threshold);
    if (ra != rank(b, threshold)) return false;
    Mat<S> both(a.rows(), a.cols() + b.cols());
    both << a, b;
    return rank(both, threshold) == ra;
}

/// True when every column of `sub` lies in the column space of `space`.
template <class S>
bool column_space_contains(const Mat<S>& space, const Mat<S>& sub, double threshold = default_singularity_threshold) {
    Mat<S> both(space.rows(), space.cols() + sub.cols());
    both << space, sub;
    return rank(both, threshold) == rank(space, threshold);
}

// ---------------------------------------------------------------------------
// block decomposition of sparse square operators

/// Connected components of the symmetrized sparsity graph of a square matrix.
/// Each component is a sorted list of indices; the matrix is block diagonal
/// after the corresponding permutation.
template <class S>
std::vector<std::vector<int>> square_blocks(const SpMat<S>& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int k = 0; k < m.outerSize(); ++k)
        for (typename SpMat<S>::InnerIterator it(m, k); it; ++it)
            if (!is_zero(it.value())) {
                int a = find(static_cast<int>(it.row())), b = find(static_cast<int>(it.col()));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    std::vector<int> label(n, -1);
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        if (label[root] < 0) {
            label[root] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[label[root]].push_back(i);
    }
    return blocks;
}

/// Dense principal submatrix on `idx`.
template <class S>
Mat<S> principal_block(const SpMat<S>& m, const std::vector<int>& idx) {
    const int b = static_cast<int>(idx.size());
    std::vector<int> local(m.rows(), -1);
    for (int a = 0; a < b; ++a) local[idx[a]] = a;
    Mat<S> out = Mat<S>::Zero(b, b);
    for (int c : idx)
        for (typename SpMat<S>::InnerIterator it(m, c); it; ++it)
            if (local[it.row()] >= 0) out(local[it.row()], local[c]) = it.value();
    return out;
}

/// Null space of a square sparse matrix, computed block by block.
template <class S>
Mat<S> sparse_nullspace(const SpMat<S>& m, double threshold = default_singularity_threshold) {
    const auto blocks = square_blocks(m);
    std::vector<Vec<S>> cols;
    for (const auto& idx : blocks) {
        Mat<S> ker = nullspace(principal_block(m, idx), threshold);
        for (Eigen::Index c = 0; c < ker.cols(); ++c) {
            Vec<S> v = Vec<S>::Zero(m.cols());
            for (std::size_t a = 0; a < idx.size(); ++a) v(idx[a]) = ker(a, c);
            cols.push_back(std::move(v));
        }
    }
    Mat<S> out(m.cols(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) out.col(c) = cols[c];
    return out;
}

template <class S>
int sparse_nullity(const SpMat<S>& m, double threshold = default_singularity_threshold) {
    int nullity = 0;
    for (const auto& idx : square_blocks(m)) {
        const auto block = principal_block(m, idx);
        nullity += static_cast<int>(idx.size()) - rank(block, threshold);
    }
    return nullity;
}

/// Sparse view of a dense matrix keeping exact nonzeros.
template <class S>
SpMat<S> to_sparse(const Mat<S>& m) {
    std::vector<Eigen::Triplet<S>> trips;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (!is_zero(m(r, c))) trips.emplace_back(r, c, m(r, c));
    SpMat<S> out(m.rows(), m.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

/// Dense inverse computed block by block (Killing forms in Chevalley bases are
/// block sparse, which keeps exact inversion cheap).
template <class S>
Mat<S> blockwise_inverse(const Mat<S>& m, double threshold = default_singularity_threshold) {
    const SpMat<S> sp = to_sparse(m);
    Mat<S> out = Mat<S>::Zero(m.rows(), m.cols());
    for (const auto& idx : square_blocks(sp)) {
        Mat<S> inv = inverse(principal_block(sp, idx), threshold);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b) out(idx[a], idx[b]) = inv(a, b);
    }
    return out;
}

/// Exact kernel of a rational sparse matrix by elimination modulo word-size
/// primes, Chinese remaindering and rational reconstruction, certified by an
/// exact product before returning. Columns are in reduced echelon form.
MatQ modular_nullspace(const SpMat<Rational>& m);

/// Exact kernel of a rational sparse matrix, split into groups of columns that
/// share no rows. Small groups use dense elimination, large ones
/// modular_nullspace.
MatQ exact_sparse_kernel(const SpMat<Rational>& m, int dense_limit = 40);

} // namespace liecurv
