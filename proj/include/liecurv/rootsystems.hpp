#pragma once

#include "liecurv/scalar.hpp"

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

namespace liecurv {

/// Finite-type Cartan matrix, Bourbaki numbering.
///
/// Entry convention: a(i, j) = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
/// With it G2 is [[2,-1],[-3,2]] with alpha_1 short, and the root-string
/// pairing <beta, alpha_i^vee> is sum_j beta_j a(j, i).
struct CartanMatrix {
    char family = 'A';
    int rank = 1;
    Eigen::MatrixXi entries;

    std::string label() const { return std::string(1, family) + std::to_string(rank); }
};

using RootVector = std::vector<int>;

struct RootSystem {
    CartanMatrix cartan;
    /// Coordinates in the simple-root basis, sorted by height then lexicographically.
    std::vector<RootVector> positive_roots;
    std::map<RootVector, int> root_index;
    /// Squared lengths (alpha_i, alpha_i) of the simple roots, shortest = 2.
    std::vector<int> simple_lengths;

    int rank() const { return cartan.rank; }
    int num_positive() const { return static_cast<int>(positive_roots.size()); }

    /// Index of a positive root, -1 if `v` is not one.
    int find(const RootVector& v) const {
        auto it = root_index.find(v);
        return it == root_index.end() ? -1 : it->second;
    }
    /// Symmetric inner product (a, b) in the normalization of simple_lengths.
    int inner(const RootVector& a, const RootVector& b) const;
    /// <beta, alpha_i^vee>.
    int coroot_pairing(const RootVector& beta, int i) const;
    const RootVector& highest_root() const { return positive_roots.back(); }
};

/// Throws InvalidArgument for pairs outside A1+, B2+, C3+, D4+, E6-8, F4, G2.
CartanMatrix cartan_matrix(char family, int rank);

RootSystem generate_positive_roots(const CartanMatrix& cartan);

/// rank + 2 * #positive roots.
int algebra_dimension(const RootSystem& rs);

int root_height(const RootVector& v);

} // namespace liecurv
