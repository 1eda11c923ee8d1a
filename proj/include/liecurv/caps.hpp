#pragma once

#include <cstdint>
#include <string>

namespace liecurv {

/// Size limits guarding the expensive assemblies. Defaults can be overridden
/// through the environment variable LIE_CURV_CAPS, a comma-separated list of
/// key=value pairs, e.g. "omega_sym2=20000,exact_block=800".
struct Caps {
    std::int64_t omega_sym2 = 10000;     ///< assembled Omega: d(d+1)/2
    std::int64_t lambda_rows = 2000000;  ///< assembled Lambda: C(d,4)
    std::int64_t gram_sym2 = 10000;      ///< Gram matrix Lambda^T Lambda: d(d+1)/2
    std::int64_t exact_block = 600;      ///< largest block handled by exact elimination
    std::int64_t float_block = 4000;     ///< largest block handed to the dense eigensolver
    std::int64_t auto_exact_dim = 21;    ///< mode "auto": exact up to this d
    std::int64_t auto_float_dim = 140;   ///< mode "auto": float up to this d, matrix-free beyond
    std::int64_t identity32_dim = 16;    ///< full (p, q, r, s) sweep of the quadratic curvature identity: d
};

/// Parses a LIE_CURV_CAPS string on top of `base`. Throws InvalidArgument on
/// unknown keys or malformed values.
Caps parse_caps(const std::string& text, Caps base = {});

/// Process-wide caps: defaults plus LIE_CURV_CAPS, read once.
const Caps& caps();

} // namespace liecurv
