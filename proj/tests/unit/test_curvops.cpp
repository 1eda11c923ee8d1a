#include "liecurv/chevalley.hpp"
#include "liecurv/curvops.hpp"
#include "liecurv/realforms.hpp"

#include <doctest.h>

using namespace liecurv;

TEST_CASE("Omega fixes the Killing form with eigenvalue 2") {
    for (const auto& sc : {chevalley_algebra('A', 1), chevalley_algebra('G', 2), su_pq(2, 1), sl_quaternion(2)}) {
        CAPTURE(sc.name());
        const LieContext<Rational> ctx(sc);
        CHECK(omega_apply(ctx, ctx.beta()) == MatQ(2 * ctx.beta()));
        CHECK(lambda_apply(sc, ctx.beta()).max_abs() == 0.0);
    }
}

TEST_CASE("Omega preserves symmetry and matches its assembled matrix") {
    const StructureConstantsQ sc = chevalley_algebra('B', 2);
    const LieContext<Rational> ctx(sc);
    const SpMat<Rational> m = omega_matrix(ctx);
    const MatQ sigma = random_symmetric_form(sc.dim(), 9);
    const MatQ image = omega_apply(ctx, sigma);
    CHECK(is_symmetric(image));
    const Vec<Rational> coords = sym2_coordinates(sigma);
    CHECK(sym2_form<Rational>(Vec<Rational>(m * coords), sc.dim()) == image);
}

TEST_CASE("Omega is self-adjoint for the induced pairing") {
    for (const auto& sc : {chevalley_algebra('A', 2), su_pq(2, 1)}) {
        const LieContext<Rational> ctx(sc);
        CHECK(omega_self_adjoint_residual(ctx) == 0.0);
    }
}

TEST_CASE("2 Pi Lambda + (Omega + Id)(Omega - 2 Id) vanishes") {
    for (const auto& sc : {chevalley_algebra('A', 2), chevalley_algebra('C', 3), sl_real(3),
                           realify(chevalley_algebra('A', 1)).algebra}) {
        CAPTURE(sc.name());
        const LieContext<Rational> ctx(sc);
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
            CHECK(theorem_a_residual(ctx, random_symmetric_form(sc.dim(), seed)) == 0.0);
    }
    const LieContext<double> f4(chevalley_algebra('F', 4).cast<double>());
    const MatD sigma = cast_matrix<double>(random_symmetric_form(52, 1));
    CHECK(theorem_a_residual(f4, sigma) / max_abs(sigma) < 1e-9);
}

TEST_CASE("Lambda lands in alternating 4-forms of the right size") {
    const StructureConstantsQ sc = chevalley_algebra('A', 2);
    CHECK(four_form_dimension(8) == 70);
    CHECK(four_form_dimension(3) == 0);
    const SpMat<Rational> l = lambda_matrix(sc);
    CHECK(l.rows() == 70);
    CHECK(l.cols() == 36);
    // Lambda sigma is alternating: swapping two slots flips the sign
    const FourForm<Rational> z = lambda_apply(sc, random_symmetric_form(8, 2));
    CHECK(z.get({0, 1, 2, 3}) == -z.get({1, 0, 2, 3}));
    CHECK(z.get({0, 0, 2, 3}) == 0);
}

TEST_CASE("colex ranks enumerate quadruples") {
    CHECK(quad_rank({0, 1, 2, 3}) == 0);
    CHECK(quad_rank({0, 1, 2, 4}) == 1);
    CHECK(quad_rank({1, 2, 3, 4}) == 4);
    CHECK(quad_rank({4, 5, 6, 7}) == 69);
}

TEST_CASE("the curvature identity holds exactly on small algebras") {
    for (const auto& sc : {chevalley_algebra('A', 1), su2_cyclic(), chevalley_algebra('A', 2), su_pq(2, 1)}) {
        CAPTURE(sc.name());
        CHECK(identity_32_residual(LieContext<Rational>(sc)) == 0.0);
    }
}

TEST_CASE("explicit caps raise CapExceeded") {
    const StructureConstantsQ sc = chevalley_algebra('A', 2);
    const LieContext<Rational> ctx(sc);
    CHECK_THROWS_AS(omega_matrix(ctx, 10), CapExceeded);
    CHECK_THROWS_AS(lambda_matrix(sc, 10), CapExceeded);
}

TEST_CASE("pairing Gram matrix is symmetric and nondegenerate") {
    const LieContext<Rational> ctx(chevalley_algebra('A', 1));
    const MatQ g = sym2_pairing(ctx);
    CHECK(g == g.transpose());
    CHECK(rank(g) == 6);
}
