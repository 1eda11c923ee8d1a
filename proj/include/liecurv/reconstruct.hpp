#pragma once

#include "liecurv/spectra.hpp"

#include <optional>

namespace liecurv {

/// [Phi(C, mu)]_ijkl = mu(C(e_i,e_j), C(e_k,e_l)) + mu(C(e_j,e_k), C(e_i,e_l)) + mu(C(e_k,e_i), C(e_j,e_l)),
/// where C(x, y) is the covector C(x, y, .) and mu is a symmetric 2-tensor on the dual.
FourForm<Rational> phi(const ThreeForm<Rational>& c3, const MatQ& mu);

/// The three-form read as a (generally non-Lie) bracket with lowered output
/// index: "C_ij^k" := C_ijk. Lambda of this bracket is Phi(C, .).
StructureConstantsQ threeform_as_bracket(const ThreeForm<Rational>& c3);

/// Basis of Ker Delta = {mu : Phi(C, mu) = 0}, exact.
std::vector<MatQ> delta_kernel(const ThreeForm<Rational>& c3);

struct Summand {
    MatQ basis;                  ///< d x k, reduced column echelon form
    int dim = 0;
    bool has_complex_structure = false;
    int ker_lambda_dim = 0;      ///< dim of {mu in Ker Delta : image of mu inside the summand}
    MatQ certificate;            ///< element of Ker Delta whose image is exactly this summand
};

struct SummandReport {
    std::vector<Summand> summands;
    int kernel_dim = 0;          ///< dim Ker Delta
    int center_dim = 0;          ///< dim of the commutative part used to split Ker Delta
    bool jacobi_ok = false;      ///< bracket recovered from C and a generic kernel element is Lie

    std::vector<int> dims() const {
        std::vector<int> out;
        for (const auto& s : summands) out.push_back(s.dim);
        return out;
    }
    nlohmann::json to_json() const;
};

/// Simple ideals of the (unknown) semisimple algebra whose Cartan 3-form is
/// `c3`, from the 3-form alone. Throws MathRejection("input is not a
/// semisimple Cartan 3-form ...") when no valid decomposition exists.
SummandReport summands_from_threeform(const ThreeForm<Rational>& c3, std::uint64_t seed = 1);

struct RecoveredBracket {
    StructureConstantsQ algebra;
    JacobiReport jacobi;
    bool killing_matches = false;  ///< Killing form of the output equals beta
    double killing_residual = 0.0;
};

/// C_ij^k = C_ijr beta^{rk}. Throws MathRejection for degenerate beta.
RecoveredBracket recover_bracket(const ThreeForm<Rational>& c3, const MatQ& beta);

struct RecoveredComplexStructure {
    bool exact = false;
    MatQ j_exact;      ///< filled when exact
    MatD j_float;      ///< always filled
    Rational square_scalar; ///< c with M0^2 = c Id
    double residual = 0.0;  ///< max |J^2 + Id|
};

/// J from the traceless part M0 of kappa^{-1} lambda, scaled by 1/sqrt(-c)
/// where M0^2 = c Id. Defined up to sign. Throws MathRejection("pencil not
/// of complex type") when M0^2 is not a negative multiple of Id.
RecoveredComplexStructure recover_complex_structure(const MatQ& kappa, const MatQ& lambda);

/// Complex structure of a recovered summand (columns of `basis`), in the
/// summand's own coordinates, from the centralizer of Ker Delta restricted to
/// it. nullopt for absolutely simple summands. Defined up to sign.
std::optional<RecoveredComplexStructure> summand_complex_structure(const ThreeForm<Rational>& c3, const MatQ& basis,
                                                                   std::uint64_t seed = 1);

struct SummandFingerprint {
    int dim = 0;
    int ker_lambda_dim = 0;
    bool has_complex_structure = false;
    std::optional<SpectrumTable> spectrum; ///< Omega spectrum of the reconstructed summand bracket
    bool spectrum_exact = true;            ///< exact nullities; false: float eigenvalues plus traces
    std::string match;                     ///< catalog name, "unrecognized", or the dim-3 note

    nlohmann::json to_json() const;
};

/// Restricts `c3` to the subspace (columns of `basis`), rebuilds a bracket from
/// a kernel element, and matches its Omega spectrum against the catalog of
/// constructible families.
/// Largest summand dimension fingerprinted with exact arithmetic.
inline constexpr int exact_fingerprint_dim = 10;

SummandFingerprint identify_summand(const MatQ& basis, const ThreeForm<Rational>& c3);

/// Restriction of a 3-form to the span of the columns of `basis`.
ThreeForm<Rational> restrict_threeform(const ThreeForm<Rational>& c3, const MatQ& basis);

/// Three-form after the basis change e'_i = sum_a P(a, i) e_a.
ThreeForm<Rational> transform_threeform(const ThreeForm<Rational>& c3, const MatQ& p);

} // namespace liecurv
