#pragma once

#include "liecurv/forms.hpp"
#include "liecurv/linalg.hpp"
#include "liecurv/structure_constants.hpp"

#include <map>
#include <memory>

namespace liecurv {

// ---------------------------------------------------------------------------
// Killing form and semisimplicity

/// beta_ij = C_ip^q C_jq^p = tr(ad e_i ad e_j).
template <class S>
SymmetricForm<S> killing_form(const StructureConstants<S>& sc) {
    const int d = sc.dim();
    // by_pq[(p, q)] lists (j, C_jq^p)
    std::vector<SparseVec<S>> by_pq(static_cast<std::size_t>(d) * d);
    for (int j = 0; j < d; ++j)
        for (int q = 0; q < d; ++q)
            for (const auto& [p, c] : sc.bracket(j, q)) by_pq[static_cast<std::size_t>(p) * d + q].emplace_back(j, c);
    SymmetricForm<S> beta = SymmetricForm<S>::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int p = 0; p < d; ++p)
            for (const auto& [q, c1] : sc.bracket(i, p))
                for (const auto& [j, c2] : by_pq[static_cast<std::size_t>(p) * d + q])
                    if (j >= i) beta(i, j) += c1 * c2;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) beta(i, j) = beta(j, i);
    return beta;
}

/// Rank of a symmetric form, block by block.
template <class S>
int form_rank(const SymmetricForm<S>& form, double threshold = default_singularity_threshold) {
    const SpMat<S> sp = to_sparse(form);
    return static_cast<int>(form.rows()) - sparse_nullity(sp, threshold);
}

/// Cartan's criterion: Killing form nondegenerate.
template <class S>
bool is_semisimple(const StructureConstants<S>& sc, double threshold = default_singularity_threshold) {
    if (sc.dim() == 0) return false;
    return form_rank(killing_form(sc), threshold) == sc.dim();
}

// ---------------------------------------------------------------------------
// ad matrices

/// (ad e_i)^k_j = C_ij^k, as matrix entry (k, j).
template <class S>
Endomorphism<S> ad_matrix(const StructureConstants<S>& sc, int i) {
    if (i < 0 || i >= sc.dim()) throw InvalidArgument("ad_matrix: index " + std::to_string(i) + " out of range");
    const int d = sc.dim();
    Endomorphism<S> a = Endomorphism<S>::Zero(d, d);
    for (int j = 0; j < d; ++j)
        for (const auto& [k, c] : sc.bracket(i, j)) a(k, j) = c;
    return a;
}

// ---------------------------------------------------------------------------
// Shared index structures for semisimple algebras

/// Everything the curvature operators need about one semisimple algebra:
/// beta, its inverse, and sparse contraction indices. Built once; immutable.
template <class S>
class LieContext {
  public:
    struct Triple {
        int a;
        int b;
        S value;
    };

    explicit LieContext(const StructureConstants<S>& sc, double threshold = default_singularity_threshold)
        : sc_(sc), d_(sc.dim()), threshold_(threshold) {
        beta_ = killing_form(sc_);
        const int r = form_rank(beta_, threshold_);
        if (r < d_) throw NotSemisimple(d_, r);
        beta_inv_ = blockwise_inverse(beta_, threshold_);
        build_indices();
    }

    const StructureConstants<S>& algebra() const { return sc_; }
    int dim() const { return d_; }
    double threshold() const { return threshold_; }
    const SymmetricForm<S>& beta() const { return beta_; }
    const SymmetricForm<S>& beta_inv() const { return beta_inv_; }
    /// Nonzero entries of row `r` of beta^-1.
    const SparseVec<S>& beta_inv_row(int r) const { return beta_inv_rows_[r]; }

    /// (ad e_i) entries as (row k, col p, C_ip^k).
    const std::vector<Triple>& ad_entries(int i) const { return ad_[i]; }

    /// C_j^{lp} = beta^{ls} C_js^p, indexed by (l, p): list of (j, value).
    const SparseVec<S>& raised_by_lp(int l, int p) const { return raised_lp_[static_cast<std::size_t>(l) * d_ + p]; }

    /// X^{ij}_p = C^{ij}_p = beta^{ia} C_pa^j as a sparse vector over p.
    const SparseVec<S>& doubly_raised(int i, int j) const { return raised_ij_[static_cast<std::size_t>(i) * d_ + j]; }

  private:
    void build_indices() {
        beta_inv_rows_.assign(d_, {});
        for (int r = 0; r < d_; ++r)
            for (int c = 0; c < d_; ++c)
                if (!is_zero(beta_inv_(r, c))) beta_inv_rows_[r].emplace_back(c, beta_inv_(r, c));

        ad_.assign(d_, {});
        for (int i = 0; i < d_; ++i)
            for (int p = 0; p < d_; ++p)
                for (const auto& [k, c] : sc_.bracket(i, p)) ad_[i].push_back({k, p, c});

        // C_j^{lp} = sum_s beta^{ls} C_js^p
        std::vector<std::map<int, S>> lp(static_cast<std::size_t>(d_) * d_);
        for (int j = 0; j < d_; ++j)
            for (int s = 0; s < d_; ++s)
                for (const auto& [p, c] : sc_.bracket(j, s))
                    for (const auto& [l, b] : beta_inv_rows_[s]) lp[static_cast<std::size_t>(l) * d_ + p][j] += b * c;
        raised_lp_ = compress(lp);

        // X^{ij}_p = sum_a beta^{ia} C_pa^j
        std::vector<std::map<int, S>> ij(static_cast<std::size_t>(d_) * d_);
        for (int p = 0; p < d_; ++p)
            for (int a = 0; a < d_; ++a)
                for (const auto& [j, c] : sc_.bracket(p, a))
                    for (const auto& [i, b] : beta_inv_rows_[a]) ij[static_cast<std::size_t>(i) * d_ + j][p] += b * c;
        raised_ij_ = compress(ij);
    }

    static std::vector<SparseVec<S>> compress(const std::vector<std::map<int, S>>& in) {
        std::vector<SparseVec<S>> out(in.size());
        for (std::size_t n = 0; n < in.size(); ++n)
            for (const auto& [k, v] : in[n])
                if (!is_zero(v)) out[n].emplace_back(k, v);
        return out;
    }

    StructureConstants<S> sc_;
    int d_;
    double threshold_;
    SymmetricForm<S> beta_;
    SymmetricForm<S> beta_inv_;
    std::vector<SparseVec<S>> beta_inv_rows_;
    std::vector<std::vector<Triple>> ad_;
    std::vector<SparseVec<S>> raised_lp_;
    std::vector<SparseVec<S>> raised_ij_;
};

// ---------------------------------------------------------------------------
// Cartan three-form, index gymnastics

/// C_ijk = C_ij^r beta_kr, stored over i < j < k (read from the pair (i, j)).
template <class S>
ThreeForm<S> cartan_three_form(const StructureConstants<S>& sc, const SymmetricForm<S>& beta) {
    const int d = sc.dim();
    ThreeForm<S> c(d);
    for (const auto& e : sc.entries())
        for (int k = e.j + 1; k < d; ++k)
            if (!is_zero(beta(k, e.k))) c.add({e.i, e.j, k}, e.value * beta(k, e.k));
    return c;
}

template <class S>
ThreeForm<S> cartan_three_form(const StructureConstants<S>& sc) {
    const LieContext<S> ctx(sc);
    return cartan_three_form(sc, ctx.beta());
}

/// Max |C_ijk + C_jik|, |C_ijk - C_jki| over all ordered triples with C_ijk
/// computed directly as C_ij^r beta_kr (no storage symmetry assumed).
template <class S>
double three_form_antisymmetry_residual(const StructureConstants<S>& sc, const SymmetricForm<S>& beta) {
    const int d = sc.dim();
    auto direct = [&](int i, int j, int k) {
        S v(0);
        for (const auto& [r, c] : sc.bracket(i, j)) v += c * beta(k, r);
        return v;
    };
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                const S v = direct(i, j, k);
                if (i == j || j == k || i == k) {
                    worst = std::max(worst, std::abs(to_double(v)));
                    continue;
                }
                worst = std::max(worst, std::abs(to_double(S(v + direct(j, i, k)))));
                worst = std::max(worst, std::abs(to_double(S(v - direct(j, k, i)))));
            }
    return worst;
}

/// sigma -> Sigma with sigma(x, y) = beta(Sigma x, y): Sigma = beta^-1 sigma.
template <class S>
Endomorphism<S> sharp(const LieContext<S>& ctx, const SymmetricForm<S>& sigma) {
    return ctx.beta_inv() * sigma;
}

/// Sigma -> sigma = Sigma^T beta.
template <class S>
SymmetricForm<S> flat(const LieContext<S>& ctx, const Endomorphism<S>& big_sigma) {
    return big_sigma.transpose() * ctx.beta();
}

/// Max |2 tr(ad_i ad_j ad_k) - C_ijk| over all ordered triples.
template <class S>
double cartan_identity_residual(const LieContext<S>& ctx) {
    const auto& sc = ctx.algebra();
    const int d = ctx.dim();
    // rows[i][q] = list of (p, (ad_i)(q, p))
    std::vector<std::vector<SparseVec<S>>> rows(d, std::vector<SparseVec<S>>(d));
    for (int i = 0; i < d; ++i)
        for (const auto& t : ctx.ad_entries(i)) rows[i][t.a].emplace_back(t.b, t.value);
    // by_rc[(r, c)] = list of (k, (ad_k)(c, r)) = C_kr^c
    std::vector<SparseVec<S>> by_rc(static_cast<std::size_t>(d) * d);
    for (int k = 0; k < d; ++k)
        for (const auto& t : ctx.ad_entries(k)) by_rc[static_cast<std::size_t>(t.b) * d + t.a].emplace_back(k, t.value);

    double worst = 0.0;
    std::map<std::pair<int, int>, S> prod;
    std::vector<S> tr(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            prod.clear();
            for (const auto& t : ctx.ad_entries(i))           // (ad_i)(q, p)
                for (const auto& [c2, w] : rows[j][t.b])       // (ad_j)(p, c2)
                    prod[{t.a, c2}] += t.value * w;
            std::fill(tr.begin(), tr.end(), S(0));
            for (const auto& [rc, x] : prod)                   // (ad_i ad_j)(q, c2)
                for (const auto& [k, v] : by_rc[static_cast<std::size_t>(rc.first) * d + rc.second])
                    tr[k] += x * v;                            // * (ad_k)(c2, q)
            for (int k = 0; k < d; ++k) {
                S cijk(0);
                for (const auto& [r, c] : sc.bracket(i, j)) cijk += c * ctx.beta()(k, r);
                worst = std::max(worst, std::abs(to_double(S(2 * tr[k] - cijk))));
            }
        }
    return worst;
}

// ---------------------------------------------------------------------------
// Curvature

/// Rank-(3,1) tensor R_ijk^l stored sparsely by (i, j, k, l).
template <class S>
using CurvatureTensor = std::map<std::array<int, 4>, S>;

/// 4 R_ijk^l = C_ij^p C_pk^l.
template <class S>
CurvatureTensor<S> curvature_tensor(const LieContext<S>& ctx) {
    const auto& sc = ctx.algebra();
    const int d = ctx.dim();
    CurvatureTensor<S> r;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (const auto& [p, c1] : sc.bracket(i, j))
                for (int k = 0; k < d; ++k)
                    for (const auto& [l, c2] : sc.bracket(p, k)) r[{i, j, k, l}] += c1 * c2 / S(4);
    for (auto it = r.begin(); it != r.end();)
        it = is_zero(it->second) ? r.erase(it) : std::next(it);
    return r;
}

/// T as a dense d^2 x d^2 matrix: row i*d + j, column k*d + l,
/// T_ij^kl = 2 C_ip^k C_j^{lp}.
template <class S>
Mat<S> t_tensor(const LieContext<S>& ctx) {
    const int d = ctx.dim();
    Mat<S> t = Mat<S>::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (const auto& e : ctx.ad_entries(i)) { // C_ip^k: e.a = k, e.b = p
            for (int l = 0; l < d; ++l)
                for (const auto& [j, v] : ctx.raised_by_lp(l, e.b)) t(i * d + j, e.a * d + l) += 2 * e.value * v;
        }
    return t;
}

/// Max |T_ij^kl + 8 beta^lp R_jpi^k| over all index quadruples. With the
/// upper pair read in the order (l, k) this is the relation T = -8 beta R;
/// both orders give the same operator on symmetric 2-tensors.
template <class S>
double curvature_t_residual(const LieContext<S>& ctx) {
    const int d = ctx.dim();
    const Mat<S> t = t_tensor(ctx);
    Mat<S> rhs = Mat<S>::Zero(d * d, d * d);
    for (const auto& [idx, val] : curvature_tensor(ctx)) {
        const int j = idx[0], p = idx[1], i = idx[2], k = idx[3];
        for (const auto& [l, b] : ctx.beta_inv_row(p)) rhs(i * d + j, k * d + l) -= 8 * b * val;
    }
    return max_abs(Mat<S>(t - rhs));
}

} // namespace liecurv
