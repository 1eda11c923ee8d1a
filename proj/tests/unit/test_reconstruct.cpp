#include "liecurv/chevalley.hpp"
#include "liecurv/realforms.hpp"
#include "liecurv/reconstruct.hpp"

#include <doctest.h>

#include <random>

using namespace liecurv;

namespace {

ThreeForm<Rational> c3_of(const StructureConstantsQ& sc) { return cartan_three_form(sc, killing_form(sc)); }

ThreeForm<Rational> random_threeform(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-3, 3);
    ThreeForm<Rational> c(d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k) c.add({i, j, k}, Rational(dist(rng)));
    return c;
}

/// Columns of P^-1 for the original coordinates in [offset, offset + n).
MatQ expected_block(const MatQ& p, int offset, int n) { return inverse(p).middleCols(offset, n); }

} // namespace

TEST_CASE("Phi vanishes on the inverse Killing form and matches Lambda of the 3-form bracket") {
    const StructureConstantsQ sc = su_pq(2, 1);
    const ThreeForm<Rational> c3 = c3_of(sc);
    CHECK(phi(c3, inverse(killing_form(sc))).max_abs() == 0.0);
    const StructureConstantsQ as_bracket = threeform_as_bracket(c3);
    const MatQ mu = random_symmetric_form(8, 4);
    CHECK(lambda_apply(as_bracket, mu).entries() == phi(c3, mu).entries());
}

TEST_CASE("Ker Delta dimensions") {
    CHECK(delta_kernel(c3_of(chevalley_algebra('A', 2))).size() == 1);
    CHECK(delta_kernel(c3_of(direct_sum({su2_cyclic(), su_pq(3, 0)}))).size() == 7);
    CHECK(delta_kernel(c3_of(direct_sum({su2_cyclic(), su2_cyclic()}))).size() == 12);
    CHECK(delta_kernel(c3_of(realify(chevalley_algebra('A', 2)).algebra)).size() == 2);
    for (const auto& mu : delta_kernel(c3_of(su_pq(3, 0)))) CHECK(mu == mu.transpose());
}

TEST_CASE("3-forms transform covariantly and restrict to subspaces") {
    const StructureConstantsQ sc = sl_real(3);
    const MatQ p = random_basis_change(8, 5);
    CHECK(transform_threeform(c3_of(sc), p).entries() == c3_of(change_basis(sc, p)).entries());
    CHECK(restrict_threeform(c3_of(sc), MatQ(MatQ::Identity(8, 8))).entries() == c3_of(sc).entries());
    const StructureConstantsQ s = direct_sum({su2_cyclic(), sc});
    CHECK(restrict_threeform(c3_of(s), MatQ(MatQ::Identity(11, 11).rightCols(8))).entries() == c3_of(sc).entries());
}

TEST_CASE("summands of a scrambled su(2) + sl(2,R)") {
    const StructureConstantsQ sum = direct_sum({su2_cyclic(), sl_real(2)});
    const MatQ p = random_basis_change(6, 21);
    const SummandReport rep = summands_from_threeform(c3_of(change_basis(sum, p)));
    CHECK(rep.dims() == std::vector<int>{3, 3});
    CHECK(rep.kernel_dim == 12);
    CHECK(rep.jacobi_ok);
    for (const auto& s : rep.summands) {
        CHECK_FALSE(s.has_complex_structure);
        CHECK(s.ker_lambda_dim == 6);
        CHECK(column_space_contains(s.basis, s.certificate));
        const bool first = same_column_space(s.basis, expected_block(p, 0, 3));
        const bool second = same_column_space(s.basis, expected_block(p, 3, 3));
        CHECK(first != second);
    }
    const nlohmann::json j = rep.to_json();
    CHECK(j["dims"] == nlohmann::json::array({3, 3}));
}

TEST_CASE("complex summands are detected") {
    const StructureConstantsQ sc = realify(chevalley_algebra('A', 1)).algebra;
    const SummandReport rep = summands_from_threeform(c3_of(sc), 3);
    REQUIRE(rep.summands.size() == 1);
    CHECK(rep.summands[0].has_complex_structure);
    CHECK(rep.summands[0].ker_lambda_dim == 12);
}

TEST_CASE("non-Cartan 3-forms are rejected") {
    CHECK_THROWS_AS(summands_from_threeform(random_threeform(7, 1)), MathRejection);
    CHECK_THROWS_AS(summands_from_threeform(ThreeForm<Rational>(5)), MathRejection);
}

TEST_CASE("recover_bracket inverts the Cartan 3-form and scales correctly") {
    const StructureConstantsQ sc = su_pq(2, 1);
    const MatQ beta = killing_form(sc);
    const RecoveredBracket rb = recover_bracket(c3_of(sc), beta);
    CHECK(rb.jacobi.ok());
    CHECK(rb.killing_matches);
    CHECK(rb.algebra.same_tensor(sc));
    for (int r : {2, 3}) {
        ThreeForm<Rational> scaled(8);
        for (const auto& [idx, v] : c3_of(sc).entries()) scaled.add(idx, Rational(r * r * r) * v);
        const RecoveredBracket rs = recover_bracket(scaled, MatQ(Rational(r * r) * beta));
        CHECK(rs.algebra.same_tensor(sc.scaled(Rational(r))));
        CHECK(rs.jacobi.ok());
    }
    CHECK_THROWS_AS(recover_bracket(c3_of(sc), MatQ(MatQ::Zero(8, 8))), MathRejection);
}

TEST_CASE("complex structure from a pencil") {
    const Realification r = realify(chevalley_algebra('A', 2));
    const MatQ beta = killing_form(r.algebra);
    const MatQ& j = r.complex_structure.matrix;
    const RecoveredComplexStructure cs = recover_complex_structure(beta, MatQ(beta * j));
    CHECK(cs.exact);
    CHECK(cs.residual == 0.0);
    CHECK(MatQ(cs.j_exact * cs.j_exact) == MatQ(-MatQ::Identity(16, 16)));
    CHECK((cs.j_exact == j || cs.j_exact == MatQ(-j)));
    CHECK_THROWS_AS(recover_complex_structure(beta, MatQ(3 * beta)), MathRejection);
}

TEST_CASE("summand fingerprints") {
    const StructureConstantsQ sum = direct_sum({su2_cyclic(), su_pq(3, 0)});
    const MatQ p = random_basis_change(11, 2);
    const ThreeForm<Rational> c3 = c3_of(change_basis(sum, p));
    const SummandReport rep = summands_from_threeform(c3);
    REQUIRE(rep.dims() == std::vector<int>{3, 8});
    const SummandFingerprint small = identify_summand(rep.summands[0].basis, c3);
    CHECK(small.match.find("undetermined") != std::string::npos);
    const SummandFingerprint big = identify_summand(rep.summands[1].basis, c3);
    CHECK(big.dim == 8);
    CHECK(big.ker_lambda_dim == 1);
    CHECK(big.spectrum_exact);
    REQUIRE(big.spectrum.has_value());
    CHECK(*big.spectrum == meyberg_table("sl", 3));
    CHECK(big.match == "real form of sl(3,C)");
    CHECK_FALSE(summand_complex_structure(c3, rep.summands[1].basis).has_value());
}
