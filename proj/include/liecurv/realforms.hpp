#pragma once

#include "liecurv/linalg.hpp"
#include "liecurv/structure_constants.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace liecurv {

/// Multiplication by i on a realified complex algebra.
struct ComplexStructure {
    MatQ matrix;
    std::string parent;

    int dim() const { return static_cast<int>(matrix.rows()); }
};

struct Realification {
    StructureConstantsQ algebra;
    ComplexStructure complex_structure;
};

/// sl(n, R): basis D_1..D_{n-1} (D_i = E_ii - E_{i+1,i+1}) then E_jk, j != k, row-major.
StructureConstantsQ sl_real(int n);

/// su(p, q) for eta = diag(+1 x p, -1 x q). Basis, in order:
///   i(E_jj - E_{j+1,j+1}),
///   E_jk - eta_j eta_k E_kj   (j < k),
///   i(E_jk + eta_j eta_k E_kj) (j < k, interleaved after the real one).
StructureConstantsQ su_pq(int p, int q);

/// sl(m, H): real-traceless quaternionic m x m matrices. Basis: D_j (real
/// traceless diagonal), E_jj u for u in {i, j, k}, then E_jk u (j != k) for
/// u in {1, i, j, k}.
StructureConstantsQ sl_quaternion(int m);

/// su(2) in the cyclic basis [u_1,u_2] = u_3 and cyclic permutations.
StructureConstantsQ su2_cyclic();

/// Underlying real algebra of a complex algebra given in a complex basis
/// (metadata "complex_basis": true). Basis (e_1..e_d, f_1..f_d), f_a = i e_a.
Realification realify(const StructureConstantsQ& sc);

/// Block-diagonal sum; metadata "blocks" lists [offset, dim] per summand.
StructureConstantsQ direct_sum(const std::vector<StructureConstantsQ>& parts);

/// Structure constants in the basis e'_i = sum_a P(a, i) e_a:
/// C'_ij^k = (P^-1)^k_c C_ab^c P^a_i P^b_j. Throws MathRejection for singular P.
template <class S>
StructureConstants<S> change_basis(const StructureConstants<S>& sc, const Mat<S>& p) {
    const int d = sc.dim();
    if (p.rows() != d || p.cols() != d) throw InvalidArgument("change_basis: P has wrong shape");
    const Mat<S> pinv = inverse(p);
    // w[c] accumulates the antisymmetric matrix of c-components of [e'_i, e'_j].
    std::vector<Mat<S>> w(d, Mat<S>::Zero(d, d));
    std::vector<bool> used(d, false);
    for (const auto& e : sc.entries()) {
        const Vec<S> ra = p.row(e.i).transpose();
        const Vec<S> rb = p.row(e.j).transpose();
        w[e.k] += e.value * (ra * rb.transpose() - rb * ra.transpose());
        used[e.k] = true;
    }
    std::vector<BracketEntry<S>> out;
    Vec<S> v(d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            for (int c = 0; c < d; ++c) v(c) = used[c] ? w[c](i, j) : S(0);
            const Vec<S> coords = pinv * v;
            for (int k = 0; k < d; ++k)
                if (!is_zero(coords(k))) out.push_back({i, j, k, coords(k)});
        }
    auto md = sc.metadata();
    md["basis_changed"] = true;
    md.erase("blocks");
    return StructureConstants<S>::build(sc.name(), d, out, md);
}

/// Deterministic invertible rational matrix with small entries (integers in
/// [-3, 3] over denominators 1..3), seeded.
MatQ random_basis_change(int dim, std::uint64_t seed);

/// Deterministic random rational symmetric form with small entries.
MatQ random_symmetric_form(int dim, std::uint64_t seed);

} // namespace liecurv
