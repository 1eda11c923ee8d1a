#include "liecurv/chevalley.hpp"
#include "liecurv/liecore.hpp"
#include "liecurv/realforms.hpp"

#include <doctest.h>

using namespace liecurv;

TEST_CASE("Killing form is symmetric and ad-invariant") {
    for (const auto& sc : {chevalley_algebra('B', 2), su_pq(2, 1), sl_quaternion(2)}) {
        CAPTURE(sc.name());
        const MatQ beta = killing_form(sc);
        CHECK(beta == beta.transpose());
        for (int i = 0; i < sc.dim(); ++i) {
            const MatQ ba = beta * ad_matrix(sc, i);
            CHECK(MatQ(ba + ba.transpose()).isZero());
        }
    }
}

TEST_CASE("ad is a representation") {
    const StructureConstantsQ sc = chevalley_algebra('A', 2);
    for (int i = 0; i < sc.dim(); ++i)
        for (int j = 0; j < sc.dim(); ++j) {
            MatQ lhs = ad_matrix(sc, i) * ad_matrix(sc, j) - ad_matrix(sc, j) * ad_matrix(sc, i);
            MatQ rhs = MatQ::Zero(sc.dim(), sc.dim());
            for (const auto& [k, c] : sc.bracket(i, j)) rhs += c * ad_matrix(sc, k);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("non-semisimple algebras are rejected") {
    // Heisenberg: [x, y] = z
    const auto heis = StructureConstantsQ::build("heisenberg", 3, {{0, 1, 2, Rational(1)}});
    CHECK_FALSE(is_semisimple(heis));
    CHECK_THROWS_AS(LieContext<Rational>{heis}, NotSemisimple);
    CHECK_THROWS_AS(LieContext<double>{heis.cast<double>()}, NotSemisimple);
}

TEST_CASE("Cartan three-form is totally antisymmetric") {
    for (const auto& sc : {chevalley_algebra('G', 2), su2_cyclic(), realify(chevalley_algebra('A', 1)).algebra}) {
        CAPTURE(sc.name());
        const MatQ beta = killing_form(sc);
        CHECK(three_form_antisymmetry_residual(sc, beta) == 0.0);
        const ThreeForm<Rational> c3 = cartan_three_form(sc, beta);
        // C(e_i, e_j, e_k) = beta([e_i, e_j], e_k)
        for (int i = 0; i < sc.dim(); ++i)
            for (int j = 0; j < sc.dim(); ++j)
                for (int k = 0; k < sc.dim(); ++k) {
                    Rational expect = 0;
                    for (const auto& [r, c] : sc.bracket(i, j)) expect += c * beta(r, k);
                    CHECK(c3.get({i, j, k}) == expect);
                }
    }
}

TEST_CASE("sharp and flat are inverse") {
    const StructureConstantsQ sc = su_pq(2, 1);
    const LieContext<Rational> ctx(sc);
    const MatQ sigma = random_symmetric_form(sc.dim(), 5);
    CHECK(flat(ctx, sharp(ctx, sigma)) == sigma);
    CHECK(sharp(ctx, ctx.beta()) == MatQ(MatQ::Identity(8, 8)));
}

TEST_CASE("Cartan identity and curvature correspondence hold exactly") {
    for (const auto& sc : {chevalley_algebra('A', 1), chevalley_algebra('A', 2), su2_cyclic(), sl_real(3),
                           direct_sum({su2_cyclic(), sl_real(2)})}) {
        CAPTURE(sc.name());
        const LieContext<Rational> ctx(sc);
        CHECK(cartan_identity_residual(ctx) == 0.0);
        CHECK(curvature_t_residual(ctx) == 0.0);
    }
}

TEST_CASE("float backend agrees with the exact backend") {
    const StructureConstantsQ sc = chevalley_algebra('B', 2);
    const LieContext<Rational> exact(sc);
    const LieContext<double> approx(sc.cast<double>());
    CHECK(max_abs(MatD(cast_matrix<double>(exact.beta()) - approx.beta())) < 1e-12);
    CHECK(cartan_identity_residual(approx) < 1e-10);
    CHECK(curvature_t_residual(approx) < 1e-10);
}
