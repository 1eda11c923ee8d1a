#include "liecurv/chevalley.hpp"
#include "liecurv/liecore.hpp"
#include "liecurv/realforms.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace liecurv;

namespace {

/// (positive, negative) eigenvalue counts of the Killing form.
std::pair<int, int> signature(const StructureConstantsQ& sc) {
    const Eigen::SelfAdjointEigenSolver<MatD> es(cast_matrix<double>(killing_form(sc)));
    int pos = 0, neg = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) (es.eigenvalues()(i) > 0 ? pos : neg)++;
    return {pos, neg};
}

} // namespace

TEST_CASE("real forms are Lie algebras of the right dimension and signature") {
    struct Case {
        StructureConstantsQ sc;
        int dim;
        int pos;
        int neg;
    };
    const Case cases[] = {
        {sl_real(3), 8, 5, 3},       {sl_real(4), 15, 9, 6},      {su_pq(3, 0), 8, 0, 8},
        {su_pq(2, 1), 8, 4, 4},      {su_pq(2, 2), 15, 8, 7},     {sl_quaternion(2), 15, 5, 10},
        {su2_cyclic(), 3, 0, 3},     {sl_real(2), 3, 2, 1},
    };
    for (const auto& c : cases) {
        CAPTURE(c.sc.name());
        CHECK(c.sc.dim() == c.dim);
        CHECK(verify_jacobi(c.sc).ok());
        const auto [pos, neg] = signature(c.sc);
        CHECK(pos == c.pos);
        CHECK(neg == c.neg);
    }
}

TEST_CASE("su2 cyclic basis") {
    const StructureConstantsQ sc = su2_cyclic();
    CHECK(sc.coefficient(0, 1, 2) == 1);
    CHECK(sc.coefficient(1, 2, 0) == 1);
    CHECK(sc.coefficient(2, 0, 1) == 1);
    CHECK(killing_form(sc) == MatQ(-2 * MatQ::Identity(3, 3)));
}

TEST_CASE("realification carries a complex structure commuting with ad") {
    const Realification r = realify(chevalley_algebra('A', 2));
    const int d = r.algebra.dim();
    REQUIRE(d == 16);
    const MatQ& j = r.complex_structure.matrix;
    CHECK(MatQ(j * j) == MatQ(-MatQ::Identity(d, d)));
    CHECK(verify_jacobi(r.algebra).ok());
    for (int i = 0; i < d; ++i) {
        const MatQ ad = ad_matrix(r.algebra, i);
        CHECK(MatQ(j * ad) == MatQ(ad * j));
    }
    CHECK(r.algebra.metadata().value("kind", "") == "realified");
}

TEST_CASE("realify rejects algebras without a complex basis") {
    CHECK_THROWS_AS(realify(su2_cyclic()), InvalidArgument);
}

TEST_CASE("direct sums are block diagonal") {
    const StructureConstantsQ s = direct_sum({su2_cyclic(), su_pq(3, 0)});
    CHECK(s.dim() == 11);
    CHECK(verify_jacobi(s).ok());
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 11; ++j) CHECK(s.bracket(i, j).empty());
    CHECK(s.metadata()["blocks"] == nlohmann::json::array({nlohmann::json::array({0, 3}), nlohmann::json::array({3, 8})}));
}

TEST_CASE("basis changes are deterministic, invertible and preserve the Lie structure") {
    const StructureConstantsQ sc = su_pq(2, 1);
    const MatQ p = random_basis_change(8, 11);
    CHECK(p == random_basis_change(8, 11));
    CHECK(p != random_basis_change(8, 12));
    CHECK(rank(p) == 8);
    const StructureConstantsQ t = change_basis(sc, p);
    CHECK(verify_jacobi(t).ok());
    // Killing form transforms as P^T beta P
    CHECK(killing_form(t) == MatQ(p.transpose() * killing_form(sc) * p));
    CHECK(change_basis(t, inverse(p)).same_tensor(sc));
    CHECK_THROWS_AS(change_basis(sc, MatQ(MatQ::Zero(8, 8))), MathRejection);
}

TEST_CASE("random symmetric forms are seeded and symmetric") {
    const MatQ a = random_symmetric_form(7, 3);
    CHECK(a == a.transpose());
    CHECK(a == random_symmetric_form(7, 3));
    CHECK(a != random_symmetric_form(7, 4));
}

TEST_CASE("invalid real-form parameters") {
    CHECK_THROWS_AS(sl_real(1), InvalidArgument);
    CHECK_THROWS_AS(su_pq(1, 0), InvalidArgument);
    CHECK_THROWS_AS(sl_quaternion(0), InvalidArgument);
}
