#pragma once

#include "liecurv/curvops.hpp"
#include "liecurv/report.hpp"

#include <Eigen/Eigenvalues>

#include <optional>
#include <set>
#include <string>

namespace liecurv {

// ---------------------------------------------------------------------------
// Spectrum tables

struct SpectrumRow {
    Rational eigenvalue;
    std::int64_t multiplicity = 0;
};

/// Eigenvalues with multiplicities of Omega on Sym^2 of the dual.
/// Rows keep insertion order; eigenvalues are distinct, multiplicities positive.
struct SpectrumTable {
    std::int64_t space_dim = 0;
    std::vector<SpectrumRow> rows;

    /// Merges repeated eigenvalues and drops zero-multiplicity rows.
    /// Throws InvalidArgument on negative multiplicities or a wrong total.
    static SpectrumTable make(std::int64_t space_dim, const std::vector<SpectrumRow>& raw);

    std::int64_t total() const;
    std::int64_t multiplicity_of(const Rational& eigenvalue) const;
    bool contains(const Rational& eigenvalue) const { return multiplicity_of(eigenvalue) > 0; }
    /// sum m_i lambda_i^k
    Rational power_sum(int k) const;
    bool operator==(const SpectrumTable& o) const;
    std::string to_string() const;
};

/// Closed-form tables. `family` is one of "sl", "sp", "so" (with `param` = n)
/// or an exceptional-list name "sl2", "sl3", "g2", "so8", "f4", "e6", "e7", "e8".
SpectrumTable meyberg_table(const std::string& family, int param = 0);

/// Exceptional formula with w = sqrt((d + 242)/(d + 2)); requires w rational.
SpectrumTable exceptional_table(int d);

enum class RealFormCase { A, B };

/// Case A: a real form of h shares the table of h. Case B: the realification
/// of h doubles the multiplicities and adds eigenvalue 0 for the rest of
/// Sym^2 of the doubled space.
SpectrumTable real_form_spectrum(const SpectrumTable& base, RealFormCase c);

/// Table expected for a constructed algebra, read from its metadata
/// (split/compact/real forms and realifications of the named families,
/// direct sums excluded). Returns nullopt when no closed form applies.
std::optional<SpectrumTable> expected_spectrum(const nlohmann::json& metadata);

/// Whether 1 is an eigenvalue of Omega for the algebra described by the
/// metadata: true exactly when some simple summand has complexification
/// of type A_r with r >= 2 (sl(n, C) with n >= 3 and its real forms).
bool has_eigenvalue_one(const nlohmann::json& metadata);

// ---------------------------------------------------------------------------
// Verification

enum class SpectrumMode { Auto, Exact, Float, MatrixFree };

SpectrumMode parse_spectrum_mode(const std::string& s);
std::string to_string(SpectrumMode m);

/// Mode picked by "auto": exact for small d, float for moderate d, matrix-free beyond.
inline SpectrumMode resolve_mode(SpectrumMode m, int d) {
    if (m != SpectrumMode::Auto) return m;
    if (d <= caps().auto_exact_dim) return SpectrumMode::Exact;
    if (d <= caps().auto_float_dim) return SpectrumMode::Float;
    return SpectrumMode::MatrixFree;
}

inline constexpr double cluster_tolerance = 1e-7;

namespace detail {

template <class S>
Mat<S> shifted_block(const SpMat<S>& m, const std::vector<int>& idx, const S& lambda) {
    Mat<S> b = principal_block(m, idx);
    for (Eigen::Index a = 0; a < b.rows(); ++a) b(a, a) -= lambda;
    return b;
}

template <class S>
void check_block_cap(const std::vector<std::vector<int>>& blocks, std::int64_t cap, const char* what) {
    std::size_t largest = 0;
    for (const auto& b : blocks) largest = std::max(largest, b.size());
    if (static_cast<std::int64_t>(largest) > cap)
        throw CapExceeded(std::string(what) + ": largest invariant block has size " + std::to_string(largest) +
                          " (cap " + std::to_string(cap) + "); use matrix-free mode or raise LIE_CURV_CAPS");
}

inline nlohmann::json row_json(const Rational& lambda, std::int64_t expected, std::int64_t computed) {
    return {{"eigenvalue", to_string(lambda)}, {"expected", expected}, {"computed", computed}};
}

/// Solves the Vandermonde system sum_i m_i lambda_i^k = p_k, k = 0..K-1, exactly.
inline Vec<Rational> vandermonde_solve(const std::vector<Rational>& lambdas, const std::vector<Rational>& sums) {
    const int k = static_cast<int>(lambdas.size());
    MatQ v(k, k);
    Vec<Rational> rhs(k);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            Rational p = 1;
            for (int e = 0; e < r; ++e) p *= lambdas[c];
            v(r, c) = p;
        }
        rhs(r) = sums[r];
    }
    return inverse(v) * rhs;
}

} // namespace detail

/// Exact spectrum check: nullity(Omega - lambda Id) = m for every row, by
/// block-wise rational elimination.
template <class S>
CheckReport verify_spectrum_exact(const LieContext<S>& ctx, const SpectrumTable& expected) {
    static_assert(is_exact_v<S>, "exact verification needs the rational backend");
    CheckReport rep{"spectrum-exact"};
    const SpMat<S> m = omega_matrix(ctx);
    const auto blocks = square_blocks(m);
    detail::check_block_cap<S>(blocks, caps().exact_block, "exact spectrum");
    rep.pass = expected.space_dim == m.rows() && expected.total() == m.rows();
    nlohmann::json rows = nlohmann::json::array();
    std::int64_t found = 0;
    for (const auto& row : expected.rows) {
        std::int64_t nullity = 0;
        for (const auto& idx : blocks) {
            const Mat<S> b = detail::shifted_block(m, idx, S(row.eigenvalue));
            nullity += static_cast<std::int64_t>(idx.size()) - rank(b);
        }
        found += nullity;
        auto j = detail::row_json(row.eigenvalue, row.multiplicity, nullity);
        j["status"] = nullity == row.multiplicity ? "pass" : "fail";
        rows.push_back(j);
        if (nullity != row.multiplicity) rep.pass = false;
        rep.residual = std::max(rep.residual, std::abs(static_cast<double>(nullity - row.multiplicity)));
    }
    rep.details = {{"mode", "exact"},       {"space_dim", m.rows()},
                   {"blocks", blocks.size()}, {"rows", rows},
                   {"eigenvector_count", found}};
    return rep;
}

/// Float spectrum check: per-block dense eigenvalues clustered to the
/// expected eigenvalues within `cluster_tolerance`, plus exact traces of
/// Omega and Omega^2 against the table's power sums when S is exact.
template <class S>
CheckReport verify_spectrum_float(const LieContext<S>& ctx, const SpectrumTable& expected) {
    CheckReport rep{"spectrum-float"};
    const SpMat<S> m = omega_matrix(ctx);
    const auto blocks = square_blocks(m);
    detail::check_block_cap<S>(blocks, caps().float_block, "float spectrum");

    std::vector<double> targets;
    for (const auto& row : expected.rows) targets.push_back(to_double(row.eigenvalue));
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < targets.size(); ++a)
        for (std::size_t b = a + 1; b < targets.size(); ++b) min_gap = std::min(min_gap, std::abs(targets[a] - targets[b]));
    if (min_gap <= 10 * cluster_tolerance)
        throw InvalidArgument("verify_spectrum: expected eigenvalues are closer than the clustering tolerance allows");

    std::vector<std::int64_t> counts(targets.size(), 0);
    std::int64_t unmatched = 0;
    double worst = 0.0, worst_imag = 0.0;
    for (const auto& idx : blocks) {
        const MatD b = cast_matrix<double>(principal_block(m, idx));
        Eigen::VectorXcd ev;
        if (b.rows() == 1)
            ev = Eigen::VectorXcd::Constant(1, b(0, 0));
        else
            ev = Eigen::EigenSolver<MatD>(b, false).eigenvalues();
        for (Eigen::Index a = 0; a < ev.size(); ++a) {
            worst_imag = std::max(worst_imag, std::abs(ev(a).imag()));
            std::size_t best = 0;
            double dist = std::numeric_limits<double>::infinity();
            for (std::size_t t = 0; t < targets.size(); ++t)
                if (std::abs(ev(a).real() - targets[t]) < dist) {
                    dist = std::abs(ev(a).real() - targets[t]);
                    best = t;
                }
            if (dist <= cluster_tolerance && std::abs(ev(a).imag()) <= cluster_tolerance) {
                ++counts[best];
                worst = std::max(worst, dist);
            } else {
                ++unmatched;
            }
        }
    }
    rep.pass = unmatched == 0 && expected.space_dim == m.rows() && expected.total() == m.rows();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t t = 0; t < targets.size(); ++t) {
        auto j = detail::row_json(expected.rows[t].eigenvalue, expected.rows[t].multiplicity, counts[t]);
        j["status"] = counts[t] == expected.rows[t].multiplicity ? "pass" : "fail";
        rows.push_back(j);
        if (counts[t] != expected.rows[t].multiplicity) rep.pass = false;
    }
    rep.residual = worst;
    rep.details = {{"mode", "float"}, {"space_dim", m.rows()}, {"blocks", blocks.size()}, {"rows", rows},
                   {"unmatched", unmatched}, {"max_imag", worst_imag}, {"tolerance", cluster_tolerance}};

    // Traces: tr Omega from the diagonal, tr Omega^2 = sum_rc M_rc M_cr.
    S tr1(0), tr2(0);
    for (int c = 0; c < m.outerSize(); ++c)
        for (typename SpMat<S>::InnerIterator it(m, c); it; ++it) {
            if (it.row() == c) tr1 += it.value();
            tr2 += it.value() * m.coeff(c, it.row());
        }
    const double e1 = to_double(expected.power_sum(1)), e2 = to_double(expected.power_sum(2));
    bool traces_ok;
    if constexpr (is_exact_v<S>)
        traces_ok = tr1 == expected.power_sum(1) && tr2 == expected.power_sum(2);
    else
        traces_ok = std::abs(tr1 - e1) <= 1e-9 * std::max(1.0, std::abs(e1)) &&
                    std::abs(tr2 - e2) <= 1e-9 * std::max(1.0, std::abs(e2));
    rep.details["traces"] = {{"trace", to_string(tr1)},
                             {"trace_expected", to_string(expected.power_sum(1))},
                             {"trace_sq", to_string(tr2)},
                             {"trace_sq_expected", to_string(expected.power_sum(2))},
                             {"exact", is_exact_v<S>},
                             {"status", traces_ok ? "pass" : "fail"}};
    rep.pass = rep.pass && traces_ok;
    return rep;
}

/// Matrix-free check: prod (Omega - lambda_i) kills every canonical basis
/// form, and tr Omega^k = sum m_i lambda_i^k for k < number of eigenvalues
/// (which pins down the multiplicities), all from column applications.
template <class S>
CheckReport verify_spectrum_matrix_free(const LieContext<S>& ctx, const SpectrumTable& expected) {
    CheckReport rep{"spectrum-matrix-free"};
    const OmegaOperator<S> op(ctx);
    const int n = op.size();
    const int k = static_cast<int>(expected.rows.size());
    std::vector<S> lambdas;
    for (const auto& row : expected.rows) lambdas.push_back(S(row.eigenvalue));

    std::vector<S> scratch(n, S(0));
    std::vector<char> mark(n, 0);
    std::vector<int> touched;
    auto apply = [&](const SparseVec<S>& x, const S& shift) {
        for (const auto& [c, xv] : x) {
            for (const auto& [r, v] : op.column(c)) {
                if (!mark[r]) {
                    mark[r] = 1;
                    touched.push_back(r);
                }
                scratch[r] += v * xv;
            }
            if (!is_zero(shift)) {
                if (!mark[c]) {
                    mark[c] = 1;
                    touched.push_back(c);
                }
                scratch[c] -= shift * xv;
            }
        }
        SparseVec<S> y;
        std::sort(touched.begin(), touched.end());
        for (int r : touched) {
            if (!is_zero(scratch[r])) y.emplace_back(r, scratch[r]);
            scratch[r] = S(0);
            mark[r] = 0;
        }
        touched.clear();
        return y;
    };
    auto coordinate = [](const SparseVec<S>& x, int c) {
        for (const auto& [r, v] : x)
            if (r == c) return v;
        return S(0);
    };

    double scale = 1.0;
    for (const auto& l : lambdas) scale = std::max(scale, std::abs(to_double(l)));
    double worst = 0.0;
    std::int64_t failing = 0;
    std::vector<S> traces(std::max(k, 1), S(0));
    for (int c = 0; c < n; ++c) {
        const SparseVec<S> e{{c, S(1)}};
        // power traces
        SparseVec<S> u = e;
        traces[0] += S(1);
        for (int p = 1; p < k; ++p) {
            u = apply(u, S(0));
            traces[p] += coordinate(u, c);
        }
        // annihilating polynomial
        SparseVec<S> w = e;
        for (const auto& l : lambdas) w = apply(w, l);
        double r = 0.0;
        for (const auto& [idx, v] : w) r = std::max(r, std::abs(to_double(v)));
        if constexpr (!is_exact_v<S>) r /= std::pow(scale, k);
        if (r > (is_exact_v<S> ? 0.0 : 1e-9)) ++failing;
        worst = std::max(worst, r);
    }

    nlohmann::json rows = nlohmann::json::array();
    bool traces_ok = true;
    nlohmann::json trace_json = nlohmann::json::array();
    for (int p = 0; p < k; ++p) {
        const Rational want = expected.power_sum(p);
        bool ok;
        if constexpr (is_exact_v<S>)
            ok = traces[p] == want;
        else
            ok = std::abs(traces[p] - to_double(want)) <= 1e-9 * std::max(1.0, std::abs(to_double(want)));
        traces_ok = traces_ok && ok;
        trace_json.push_back({{"power", p}, {"computed", to_string(traces[p])}, {"expected", to_string(want)},
                              {"status", ok ? "pass" : "fail"}});
    }
    if constexpr (is_exact_v<S>) {
        std::vector<Rational> ls(expected.rows.size()), ts(traces.begin(), traces.begin() + k);
        for (int i = 0; i < k; ++i) ls[i] = expected.rows[i].eigenvalue;
        const Vec<Rational> mult = detail::vandermonde_solve(ls, ts);
        for (int i = 0; i < k; ++i) {
            const bool ok = mult(i) == expected.rows[i].multiplicity;
            auto j = detail::row_json(expected.rows[i].eigenvalue, expected.rows[i].multiplicity,
                                      is_integer(mult(i)) ? static_cast<std::int64_t>(to_double(mult(i))) : -1);
            j["status"] = ok ? "pass" : "fail";
            rows.push_back(j);
        }
    }
    rep.pass = failing == 0 && traces_ok && expected.space_dim == n && expected.total() == n;
    rep.residual = worst;
    rep.details = {{"mode", "matrix-free"},  {"space_dim", n},         {"annihilator_failures", failing},
                   {"traces", trace_json}, {"rows", rows},           {"exact", is_exact_v<S>}};
    return rep;
}

template <class S>
CheckReport verify_spectrum(const LieContext<S>& ctx, const SpectrumTable& expected, SpectrumMode mode) {
    const std::int64_t n = static_cast<std::int64_t>(ctx.dim()) * (ctx.dim() + 1) / 2;
    if (expected.space_dim != n)
        throw InvalidArgument("verify_spectrum: table is for a space of dimension " + std::to_string(expected.space_dim) +
                              ", Sym^2 has dimension " + std::to_string(n));
    SpectrumMode m = resolve_mode(mode, ctx.dim());
    if (!is_exact_v<S> && mode == SpectrumMode::Auto && m == SpectrumMode::Exact) m = SpectrumMode::Float;
    switch (m) {
    case SpectrumMode::Exact:
        if constexpr (is_exact_v<S>)
            return verify_spectrum_exact(ctx, expected);
        else
            throw InvalidArgument("verify_spectrum: exact mode needs rational structure constants");
    case SpectrumMode::Float:
        return verify_spectrum_float(ctx, expected);
    default:
        return verify_spectrum_matrix_free(ctx, expected);
    }
}

// ---------------------------------------------------------------------------
// Eigenspaces and the kernel of Lambda

/// Basis of Ker(Omega - lambda Id) as symmetric forms (exact, block-wise).
template <class S>
std::vector<SymmetricForm<S>> eigenspace(const LieContext<S>& ctx, const S& lambda) {
    const SpMat<S> m = omega_matrix(ctx);
    const auto blocks = square_blocks(m);
    detail::check_block_cap<S>(blocks, caps().exact_block, "eigenspace");
    std::vector<SymmetricForm<S>> out;
    for (const auto& idx : blocks) {
        const Mat<S> ker = nullspace(detail::shifted_block(m, idx, lambda), ctx.threshold());
        for (Eigen::Index c = 0; c < ker.cols(); ++c) {
            Vec<S> v = Vec<S>::Zero(m.rows());
            for (std::size_t a = 0; a < idx.size(); ++a) v(idx[a]) = ker(a, c);
            out.push_back(sym2_form(v, ctx.dim()));
        }
    }
    return out;
}

template <class S>
struct KerLambda {
    int dimension = 0;
    std::vector<SymmetricForm<S>> basis; ///< reduced: columns of an RREF-derived kernel basis
};

/// Kernel of Lambda on Sym^2: exact elimination on column groups of Lambda
/// (rational), or the Gram matrix Lambda^T Lambda (float).
template <class S>
KerLambda<S> ker_lambda(const StructureConstants<S>& sc) {
    const int d = sc.dim();
    const Sym2Index ix{d};
    if (ix.size() > caps().gram_sym2)
        throw CapExceeded("ker_lambda: Sym^2 dimension " + std::to_string(ix.size()) + " exceeds cap " +
                          std::to_string(caps().gram_sym2));
    KerLambda<S> out;
    if (d < 4) {
        for (int n = 0; n < ix.size(); ++n) {
            const auto [i, j] = ix.pair(n);
            out.basis.push_back(sym2_basis_form<S>(d, i, j));
        }
        out.dimension = ix.size();
        return out;
    }
    const SpMat<S> l = lambda_matrix(sc);
    Mat<S> ker;
    if constexpr (is_exact_v<S>)
        ker = exact_sparse_kernel(l);
    else
        ker = sparse_nullspace(SpMat<S>(l.transpose() * l));
    for (Eigen::Index c = 0; c < ker.cols(); ++c) out.basis.push_back(sym2_form(Vec<S>(ker.col(c)), d));
    out.dimension = static_cast<int>(ker.cols());
    return out;
}

/// Inclusion chain Ker(Omega - 2) in Ker Lambda in Ker(Omega - 2) + Ker(Omega + 1),
/// checked by exact residuals: Lambda kills the 2-eigenspace, and every
/// kernel element is annihilated by (Omega - 2)(Omega + 1).
template <class S>
CheckReport inclusion_chain(const LieContext<S>& ctx) {
    CheckReport rep{"inclusion-chain"};
    const auto e2 = eigenspace(ctx, S(2));
    const auto kl = ker_lambda(ctx.algebra());
    double r1 = 0.0, r2 = 0.0;
    for (const auto& v : e2) r1 = std::max(r1, lambda_apply(ctx.algebra(), v).max_abs());
    for (const auto& k : kl.basis) {
        const Mat<S> o = omega_apply(ctx, k);
        const Mat<S> q = omega_apply(ctx, o) - o - 2 * k;
        r2 = std::max(r2, max_abs(q));
    }
    // dimension bookkeeping: span(e2) inside span(ker)
    const Sym2Index ix{ctx.dim()};
    Mat<S> ks(ix.size(), kl.dimension), es(ix.size(), static_cast<Eigen::Index>(e2.size()));
    for (int c = 0; c < kl.dimension; ++c) ks.col(c) = sym2_coordinates(kl.basis[c]);
    for (std::size_t c = 0; c < e2.size(); ++c) es.col(c) = sym2_coordinates(e2[c]);
    const bool contained = e2.empty() || column_space_contains(ks, es, ctx.threshold());
    const double tol = is_exact_v<S> ? 0.0 : 1e-9;
    rep.pass = r1 <= tol && r2 <= tol && contained;
    rep.residual = std::max(r1, r2);
    rep.details = {{"dim_eigen_2", e2.size()},
                   {"dim_ker_lambda", kl.dimension},
                   {"lambda_on_eigen_2", r1},
                   {"ker_lambda_outside_2_plus_minus1", r2},
                   {"eigen_2_in_ker_lambda", contained}};
    return rep;
}

/// Presence of eigenvalue 1, computed: nullity(Omega - Id) > 0.
template <class S>
std::int64_t eigenvalue_one_nullity(const LieContext<S>& ctx) {
    return static_cast<std::int64_t>(eigenspace(ctx, S(1)).size());
}

} // namespace liecurv
