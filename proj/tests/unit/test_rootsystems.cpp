#include "liecurv/rootsystems.hpp"

#include <doctest.h>

using namespace liecurv;

TEST_CASE("Cartan matrices follow the <alpha_i, alpha_j^vee> convention") {
    const CartanMatrix g2 = cartan_matrix('G', 2);
    CHECK(g2.entries(0, 1) == -1);
    CHECK(g2.entries(1, 0) == -3);
    const CartanMatrix b2 = cartan_matrix('B', 2);
    CHECK(b2.entries(0, 1) == -2);
    CHECK(b2.entries(1, 0) == -1);
    const CartanMatrix a3 = cartan_matrix('A', 3);
    CHECK(a3.entries(0, 2) == 0);
    CHECK(a3.entries(1, 2) == -1);
    CHECK(a3.label() == "A3");
}

TEST_CASE("positive root counts and algebra dimensions") {
    struct Case {
        char family;
        int rank;
        int positive;
        int dim;
    };
    const Case cases[] = {{'A', 1, 1, 3},   {'A', 4, 10, 24},  {'B', 2, 4, 10},   {'B', 4, 16, 36},
                          {'C', 3, 9, 21},  {'D', 4, 12, 28},  {'D', 5, 20, 45},  {'G', 2, 6, 14},
                          {'F', 4, 24, 52}, {'E', 6, 36, 78},  {'E', 7, 63, 133}, {'E', 8, 120, 248}};
    for (const auto& c : cases) {
        CAPTURE(c.family);
        CAPTURE(c.rank);
        const RootSystem rs = generate_positive_roots(cartan_matrix(c.family, c.rank));
        CHECK(rs.num_positive() == c.positive);
        CHECK(algebra_dimension(rs) == c.dim);
    }
}

TEST_CASE("roots are ordered by height with simple roots first") {
    const RootSystem rs = generate_positive_roots(cartan_matrix('G', 2));
    for (int i = 0; i < rs.rank(); ++i) CHECK(root_height(rs.positive_roots[i]) == 1);
    for (int i = 1; i < rs.num_positive(); ++i)
        CHECK(root_height(rs.positive_roots[i - 1]) <= root_height(rs.positive_roots[i]));
    const RootVector& top = rs.highest_root();
    CHECK(top[0] == 3);
    CHECK(top[1] == 2);
}

TEST_CASE("highest roots of the exceptional types") {
    CHECK(root_height(generate_positive_roots(cartan_matrix('F', 4)).highest_root()) == 11);
    CHECK(root_height(generate_positive_roots(cartan_matrix('E', 6)).highest_root()) == 11);
    CHECK(root_height(generate_positive_roots(cartan_matrix('E', 8)).highest_root()) == 29);
}

TEST_CASE("the symmetrized inner product reproduces the Cartan matrix") {
    for (char f : {'B', 'C', 'G', 'F'}) {
        const RootSystem rs = generate_positive_roots(cartan_matrix(f, f == 'G' ? 2 : (f == 'F' ? 4 : 3)));
        CAPTURE(f);
        for (int i = 0; i < rs.rank(); ++i)
            for (int j = 0; j < rs.rank(); ++j) {
                const auto& ai = rs.positive_roots[i];
                const auto& aj = rs.positive_roots[j];
                CHECK(2 * rs.inner(aj, ai) == rs.cartan.entries(j, i) * rs.inner(ai, ai));
                CHECK(rs.coroot_pairing(aj, i) == rs.cartan.entries(j, i));
            }
    }
}

TEST_CASE("every positive root has a positive norm") {
    const RootSystem rs = generate_positive_roots(cartan_matrix('E', 6));
    for (const auto& r : rs.positive_roots) CHECK(rs.inner(r, r) > 0);
}

TEST_CASE("invalid families and ranks are rejected") {
    CHECK_THROWS_AS(cartan_matrix('X', 2), InvalidArgument);
    CHECK_THROWS_AS(cartan_matrix('A', 0), InvalidArgument);
    CHECK_THROWS_AS(cartan_matrix('D', 3), InvalidArgument);
    CHECK_THROWS_AS(cartan_matrix('E', 5), InvalidArgument);
    CHECK_THROWS_AS(cartan_matrix('G', 3), InvalidArgument);
}
