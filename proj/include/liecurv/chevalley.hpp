#pragma once

#include "liecurv/rootsystems.hpp"
#include "liecurv/structure_constants.hpp"

namespace liecurv {

/// Integer structure constants of the split form in a Chevalley basis.
///
/// Basis order: h_1..h_r (simple coroots), x_beta for positive beta in root
/// order, then x_{-beta} in the same order. Signs of N_{alpha,beta} follow the
/// extraspecial-pair convention (N = +(p+1) on extraspecial pairs) with
/// N_{-alpha,-beta} = -N_{alpha,beta}.
///
/// Metadata carries family, rank, `"complex_basis": true` and
/// `"kind": "split"`, so the result may be realified.
StructureConstantsQ chevalley_basis(const RootSystem& rs);

/// Convenience: chevalley_basis(generate_positive_roots(cartan_matrix(f, n))).
StructureConstantsQ chevalley_algebra(char family, int rank);

} // namespace liecurv
