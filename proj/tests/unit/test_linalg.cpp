#include "liecurv/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace liecurv;

namespace {

MatQ random_integer_matrix(int rows, int cols, std::uint64_t seed, int lo = -4, int hi = 4) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(lo, hi);
    MatQ m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = dist(rng);
    return m;
}

} // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == -4);
    CHECK(to_string(Rational(-2, 3)) == "-2/3");
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
    CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
}

TEST_CASE("rank, nullspace and inverse over the rationals") {
    MatQ m(3, 4);
    m << 1, 2, 3, 4, 2, 4, 6, 8, 0, 1, Rational(1, 2), 0;
    CHECK(rank(m) == 2);
    const MatQ k = nullspace(m);
    CHECK(k.cols() == 2);
    CHECK(MatQ(m * k).isZero());

    const MatQ a = random_integer_matrix(5, 5, 3);
    REQUIRE(rank(a) == 5);
    CHECK(MatQ(a * inverse(a)) == MatQ(MatQ::Identity(5, 5)));
    CHECK_THROWS_AS(inverse(m.leftCols(3).topRows(3).eval()), MathRejection);
}

TEST_CASE("float backend uses the singularity threshold") {
    MatD m(2, 2);
    m << 1, 1, 1, 1 + 1e-14;
    CHECK(rank(m) == 1);
    CHECK(rank(m, 1e-16) == 2);
}

TEST_CASE("column spaces") {
    const MatQ a = random_integer_matrix(6, 3, 7);
    const MatQ mixed = a * random_integer_matrix(3, 3, 8, 1, 5);
    REQUIRE(rank(mixed) == 3);
    CHECK(same_column_space(a, mixed));
    CHECK(column_space_contains(a, MatQ(a.col(1))));
    CHECK_FALSE(same_column_space(a, MatQ(a.leftCols(2))));
    CHECK(column_echelon(a) == column_echelon(mixed));
}

TEST_CASE("block structure of sparse matrices") {
    MatQ d = MatQ::Zero(5, 5);
    d(0, 0) = 1;
    d(0, 3) = 2;
    d(3, 0) = 2;
    d(3, 3) = 4;  // block {0, 3} is singular
    d(1, 1) = 1;
    d(2, 4) = 1;
    d(4, 2) = 1;
    const SpMat<Rational> s = to_sparse(d);
    const auto blocks = square_blocks(s);
    CHECK(blocks.size() == 3);
    CHECK(sparse_nullity(s) == 1);
    CHECK(MatQ(d * sparse_nullspace(s)).isZero());
}

TEST_CASE("blockwise inverse of a block-diagonal matrix") {
    MatQ d = MatQ::Zero(4, 4);
    d(0, 0) = 2;
    d(1, 2) = 3;
    d(2, 1) = 3;
    d(3, 3) = -1;
    CHECK(MatQ(d * blockwise_inverse(d)) == MatQ(MatQ::Identity(4, 4)));
}

TEST_CASE("multi-modular kernel equals the rational kernel") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        // rank-deficient with rational entries: A = B * C with inner dimension 6
        MatQ a = random_integer_matrix(12, 6, seed) * random_integer_matrix(6, 10, seed + 100);
        a.row(3) /= 7;
        a.row(5) *= Rational(5, 3);
        const MatQ exact = nullspace(a);
        const MatQ modular = modular_nullspace(to_sparse(a));
        CAPTURE(seed);
        CHECK(modular.cols() == exact.cols());
        CHECK(MatQ(a * modular).isZero());
        CHECK(same_column_space(modular, exact));
    }
}

TEST_CASE("multi-modular kernel with large entries and full rank") {
    MatQ a = random_integer_matrix(4, 4, 11);
    a(0, 0) = Rational("123456789012345678901234567890");
    const MatQ k = modular_nullspace(to_sparse(a));
    CHECK(k.cols() == 4 - rank(a));
    MatQ b = MatQ::Zero(2, 3);
    b(0, 0) = Rational(1, 1000003);
    b(0, 2) = Rational("98765432109876543210");
    const MatQ kb = modular_nullspace(to_sparse(b));
    CHECK(kb.cols() == 2);
    CHECK(MatQ(b * kb).isZero());
}
