#pragma once

#include "liecurv/caps.hpp"
#include "liecurv/liecore.hpp"

#include <cstdint>

namespace liecurv {

// ---------------------------------------------------------------------------
// Omega and T

/// (Omega sigma)_ij = 2 tr(A_i A_j Sigma), Sigma = sharp(sigma).
/// Passing `transpose_input` evaluates T on a general 2-tensor instead.
template <class S>
Mat<S> trace_contraction(const LieContext<S>& ctx, const Mat<S>& tau, bool transpose_input) {
    const int d = ctx.dim();
    if (tau.rows() != d || tau.cols() != d) throw InvalidArgument("curvature operator: tensor has wrong shape");
    const Mat<S> in = transpose_input ? Mat<S>(tau.transpose()) : tau;
    Mat<S> big = Mat<S>::Zero(d, d);
    for (int r = 0; r < d; ++r)
        for (const auto& [c, b] : ctx.beta_inv_row(r)) big.row(r) += b * in.row(c);
    // M_j = A_j Sigma, then tr(A_i M_j) = sum (A_i)(a, b) (M_j)(b, a)
    std::vector<Mat<S>> m(d);
    for (int j = 0; j < d; ++j) {
        m[j] = Mat<S>::Zero(d, d);
        for (const auto& e : ctx.ad_entries(j)) m[j].row(e.a) += e.value * big.row(e.b);
    }
    Mat<S> out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            S acc(0);
            for (const auto& e : ctx.ad_entries(i)) acc += e.value * m[j](e.b, e.a);
            out(i, j) = 2 * acc;
        }
    return out;
}

template <class S>
SymmetricForm<S> omega_apply(const LieContext<S>& ctx, const SymmetricForm<S>& sigma) {
    return trace_contraction(ctx, sigma, false);
}

/// (T tau)_ij = T_ij^kl tau_kl for an arbitrary 2-tensor tau.
template <class S>
Mat<S> t_apply(const LieContext<S>& ctx, const Mat<S>& tau) {
    return trace_contraction(ctx, tau, true);
}

/// Nonzero entries of T grouped by the upper index pair: column k*d + l
/// holds (i, j, T_ij^kl).
template <class S>
struct TColumns {
    struct Entry {
        int i;
        int j;
        S value;
    };
    int dim = 0;
    std::vector<std::vector<Entry>> columns;

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& c : columns) n += c.size();
        return n;
    }
};

template <class S>
TColumns<S> t_columns(const LieContext<S>& ctx) {
    const int d = ctx.dim();
    std::vector<std::map<std::pair<int, int>, S>> acc(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (const auto& e : ctx.ad_entries(i))
            for (int l = 0; l < d; ++l)
                for (const auto& [j, v] : ctx.raised_by_lp(l, e.b))
                    acc[static_cast<std::size_t>(e.a) * d + l][{i, j}] += 2 * e.value * v;
    TColumns<S> t;
    t.dim = d;
    t.columns.resize(acc.size());
    for (std::size_t c = 0; c < acc.size(); ++c)
        for (const auto& [ij, v] : acc[c])
            if (!is_zero(v)) t.columns[c].push_back({ij.first, ij.second, v});
    return t;
}

/// Omega on sym2 coordinates without assembling a matrix.
template <class S>
class OmegaOperator {
  public:
    explicit OmegaOperator(const LieContext<S>& ctx) : d_(ctx.dim()), ix_{ctx.dim()} {
        const TColumns<S> t = t_columns(ctx);
        cols_.resize(ix_.size());
        std::vector<std::map<int, S>> acc(ix_.size());
        for (int k = 0; k < d_; ++k)
            for (int l = 0; l < d_; ++l)
                for (const auto& e : t.columns[static_cast<std::size_t>(k) * d_ + l])
                    if (e.i <= e.j) acc[ix_(k, l)][ix_(e.i, e.j)] += e.value;
        for (int c = 0; c < ix_.size(); ++c)
            for (const auto& [r, v] : acc[c])
                if (!is_zero(v)) cols_[c].emplace_back(r, v);
    }

    int size() const { return ix_.size(); }
    int dim() const { return d_; }
    const SparseVec<S>& column(int c) const { return cols_[c]; }

    S diagonal(int c) const {
        for (const auto& [r, v] : cols_[c])
            if (r == c) return v;
        return S(0);
    }

    Vec<S> apply(const Vec<S>& x) const {
        Vec<S> y = Vec<S>::Zero(size());
        for (int c = 0; c < size(); ++c)
            if (!is_zero(x(c)))
                for (const auto& [r, v] : cols_[c]) y(r) += v * x(c);
        return y;
    }

    SpMat<S> assemble() const {
        std::vector<Eigen::Triplet<S>> trips;
        for (int c = 0; c < size(); ++c)
            for (const auto& [r, v] : cols_[c]) trips.emplace_back(r, c, v);
        SpMat<S> m(size(), size());
        m.setFromTriplets(trips.begin(), trips.end());
        return m;
    }

  private:
    int d_;
    Sym2Index ix_;
    std::vector<SparseVec<S>> cols_;
};

/// Omega on the canonical sym2 basis; column n is the image of the n-th basis form.
template <class S>
SpMat<S> omega_matrix(const LieContext<S>& ctx, std::int64_t cap = caps().omega_sym2) {
    const std::int64_t n = static_cast<std::int64_t>(ctx.dim()) * (ctx.dim() + 1) / 2;
    if (n > cap)
        throw CapExceeded("omega_matrix: sym2 dimension " + std::to_string(n) + " exceeds cap " + std::to_string(cap) +
                          "; use matrix-free mode or raise LIE_CURV_CAPS");
    return OmegaOperator<S>(ctx).assemble();
}

// ---------------------------------------------------------------------------
// Lambda and Pi

/// (Lambda sigma)_ijkl = sigma([e_i,e_j],[e_k,e_l]) + sigma([e_j,e_k],[e_i,e_l])
///                     + sigma([e_k,e_i],[e_j,e_l]).
template <class S>
FourForm<S> lambda_apply(const StructureConstants<S>& sc, const SymmetricForm<S>& sigma) {
    const int d = sc.dim();
    if (sigma.rows() != d || sigma.cols() != d) throw InvalidArgument("lambda_apply: form has wrong shape");
    FourForm<S> out(d);
    if (d < 4) return out;

    // Pairs with nonzero bracket, and for each output index s the pairs hitting it.
    std::vector<std::pair<int, int>> pairs;
    std::vector<const SparseVec<S>*> brackets;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (!sc.bracket(i, j).empty()) {
                pairs.emplace_back(i, j);
                brackets.push_back(&sc.bracket(i, j));
            }
    const int np = static_cast<int>(pairs.size());
    std::vector<std::vector<std::pair<int, S>>> hitting(d); // s -> (pair index, C_pair^s)
    for (int q = 0; q < np; ++q)
        for (const auto& [s, c] : *brackets[q]) hitting[s].emplace_back(q, c);
    std::vector<SparseVec<S>> sigma_rows(d);
    for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s)
            if (!is_zero(sigma(r, s))) sigma_rows[r].emplace_back(s, sigma(r, s));

    std::vector<S> g(np, S(0));
    std::vector<int> touched;
    std::vector<char> mark(np, 0);
    std::vector<S> v(d, S(0));
    std::vector<int> vtouched;
    for (int p = 0; p < np; ++p) {
        // v = sigma b_p
        for (const auto& [r, c] : *brackets[p])
            for (const auto& [s, x] : sigma_rows[r]) {
                if (is_zero(v[s])) vtouched.push_back(s);
                v[s] += c * x;
            }
        for (int s : vtouched) {
            if (!is_zero(v[s]))
                for (const auto& [q, c] : hitting[s]) {
                    if (q <= p) continue;
                    if (!mark[q]) {
                        mark[q] = 1;
                        touched.push_back(q);
                    }
                    g[q] += v[s] * c;
                }
            v[s] = S(0);
        }
        vtouched.clear();
        const auto [i, j] = pairs[p];
        for (int q : touched) {
            const auto [k, l] = pairs[q];
            if (!is_zero(g[q]) && k != i && k != j && l != i && l != j) out.add({i, j, k, l}, g[q]);
            g[q] = S(0);
            mark[q] = 0;
        }
        touched.clear();
    }
    return out;
}

/// (Pi zeta)_pq = C^{ij}_p C^{kl}_q zeta_ijkl summed over all ordered i, j, k, l.
template <class S>
SymmetricForm<S> pi_apply(const LieContext<S>& ctx, const FourForm<S>& zeta) {
    const int d = ctx.dim();
    Mat<S> out = Mat<S>::Zero(d, d);
    static constexpr int parts[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    static constexpr int signs[3] = {1, -1, 1};
    zeta.for_each([&](const std::array<int, 4>& idx, const S& z) {
        for (int t = 0; t < 3; ++t) {
            const auto& x = ctx.doubly_raised(idx[parts[t][0]], idx[parts[t][1]]);
            const auto& y = ctx.doubly_raised(idx[parts[t][2]], idx[parts[t][3]]);
            if (x.empty() || y.empty()) continue;
            const S w = 4 * signs[t] * z;
            for (const auto& [p, a] : x)
                for (const auto& [q, b] : y) {
                    const S ab = w * a * b;
                    out(p, q) += ab;
                    out(q, p) += ab;
                }
        }
    });
    return out;
}

/// max |2 Pi Lambda sigma + Omega^2 sigma - Omega sigma - 2 sigma|.
template <class S>
double theorem_a_residual(const LieContext<S>& ctx, const SymmetricForm<S>& sigma) {
    const Mat<S> pl = pi_apply(ctx, lambda_apply(ctx.algebra(), sigma));
    const Mat<S> o1 = omega_apply(ctx, sigma);
    const Mat<S> o2 = omega_apply(ctx, o1);
    return max_abs(Mat<S>(2 * pl + o2 - o1 - 2 * sigma));
}

/// Colex rank of a sorted quadruple a < b < c < e.
inline std::int64_t quad_rank(const std::array<int, 4>& q) {
    auto binom = [](std::int64_t n, int k) {
        std::int64_t r = 1;
        for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
        return n < k ? std::int64_t{0} : r;
    };
    return binom(q[0], 1) + binom(q[1], 2) + binom(q[2], 3) + binom(q[3], 4);
}

inline std::int64_t four_form_dimension(int d) {
    if (d < 4) return 0;
    const std::int64_t n = d;
    return n * (n - 1) * (n - 2) * (n - 3) / 24;
}

/// Lambda on the canonical sym2 basis: C(d,4) x d(d+1)/2, rows in colex order.
template <class S>
SpMat<S> lambda_matrix(const StructureConstants<S>& sc, std::int64_t cap = caps().lambda_rows) {
    const int d = sc.dim();
    const std::int64_t rows = four_form_dimension(d);
    if (rows > cap)
        throw CapExceeded("lambda_matrix: C(" + std::to_string(d) + ",4) = " + std::to_string(rows) + " exceeds cap " +
                          std::to_string(cap) + "; use matrix-free residual checks or raise LIE_CURV_CAPS");
    const Sym2Index ix{d};
    std::vector<Eigen::Triplet<S>> trips;
    for (int n = 0; n < ix.size(); ++n) {
        const auto [i, j] = ix.pair(n);
        lambda_apply(sc, sym2_basis_form<S>(d, i, j)).for_each([&](const std::array<int, 4>& q, const S& v) {
            trips.emplace_back(static_cast<int>(quad_rank(q)), n, v);
        });
    }
    SpMat<S> m(static_cast<Eigen::Index>(rows), ix.size());
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

// ---------------------------------------------------------------------------
// Structural checks

/// Quadratic curvature identity: 2 C^{ij}_p C^{kl}_q Lambda_ijkl^{rs} = 2 delta_p^r delta_q^s + T_pq^rs - T_pq^ik T_ik^rs,
/// evaluated on every (p, q, r, s). Returns the maximal absolute difference.
template <class S>
double identity_32_residual(const LieContext<S>& ctx) {
    const auto& sc = ctx.algebra();
    const int d = ctx.dim();
    if (d > caps().identity32_dim)
        throw CapExceeded("identity_32_residual: d = " + std::to_string(d) + " exceeds cap " +
                          std::to_string(caps().identity32_dim) + " (identity32_dim)");
    const Mat<S> t = t_tensor(ctx);
    const Mat<S> rhs = 2 * Mat<S>::Identity(d * d, d * d) + t - t * t;
    double worst = 0.0;
    Mat<S> lhs(d * d, 1);
    for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) {
            // Lambda_ijkl^{rs} over all ordered quadruples
            std::map<std::array<int, 4>, S> lam;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    const S cr = sc.coefficient(i, j, r);
                    if (is_zero(cr)) continue;
                    for (int k = 0; k < d; ++k)
                        for (int l = 0; l < d; ++l) {
                            // C_ij^r C_kl^s
                            const S a = sc.coefficient(k, l, s);
                            if (!is_zero(a)) lam[{i, j, k, l}] += cr * a;
                        }
                }
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    const S cr = sc.coefficient(j, k, r);
                    if (is_zero(cr)) continue;
                    for (int i = 0; i < d; ++i)
                        for (int l = 0; l < d; ++l) {
                            const S a = sc.coefficient(i, l, s);
                            if (!is_zero(a)) lam[{i, j, k, l}] += cr * a;
                        }
                }
            for (int k = 0; k < d; ++k)
                for (int i = 0; i < d; ++i) {
                    const S cr = sc.coefficient(k, i, r);
                    if (is_zero(cr)) continue;
                    for (int j = 0; j < d; ++j)
                        for (int l = 0; l < d; ++l) {
                            const S a = sc.coefficient(j, l, s);
                            if (!is_zero(a)) lam[{i, j, k, l}] += cr * a;
                        }
                }
            lhs.setZero();
            for (const auto& [q, v] : lam) {
                if (is_zero(v)) continue;
                for (const auto& [p, x] : ctx.doubly_raised(q[0], q[1]))
                    for (const auto& [qq, y] : ctx.doubly_raised(q[2], q[3])) lhs(p * d + qq, 0) += 2 * v * x * y;
            }
            for (int pq = 0; pq < d * d; ++pq)
                worst = std::max(worst, std::abs(to_double(S(lhs(pq, 0) - rhs(pq, r * d + s)))));
        }
    return worst;
}

/// Gram matrix of <sigma, tau> = sigma_ij tau_kl beta^ik beta^jl on sym2 coordinates.
template <class S>
Mat<S> sym2_pairing(const LieContext<S>& ctx) {
    const int d = ctx.dim();
    const Sym2Index ix{d};
    const Mat<S>& b = ctx.beta_inv();
    Mat<S> g(ix.size(), ix.size());
    for (int m = 0; m < ix.size(); ++m) {
        const auto [a1, b1] = ix.pair(m);
        for (int n = m; n < ix.size(); ++n) {
            const auto [c1, d1] = ix.pair(n);
            // tr(B E_m B E_n), E_(a,b) = e_a e_b^T + e_b e_a^T (single term when a = b)
            S v(0);
            const int la[2] = {a1, b1}, lc[2] = {c1, d1};
            const int nm = a1 == b1 ? 1 : 2, nn = c1 == d1 ? 1 : 2;
            for (int u = 0; u < nm; ++u)
                for (int w = 0; w < nn; ++w) {
                    const int a = la[u], bb = la[1 - u], c = lc[w], dd = lc[1 - w];
                    v += b(dd, a) * b(bb, c);
                }
            g(m, n) = g(n, m) = v;
        }
    }
    return g;
}

/// max |M^T G - G M| for the assembled Omega matrix M and the symmetric pairing G.
template <class S>
double omega_self_adjoint_residual(const LieContext<S>& ctx) {
    const SpMat<S> m = OmegaOperator<S>(ctx).assemble();
    const Mat<S> gm = sym2_pairing(ctx) * m;
    return max_abs(Mat<S>(gm - gm.transpose()));
}

} // namespace liecurv
