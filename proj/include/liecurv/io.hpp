#pragma once

#include "liecurv/forms.hpp"
#include "liecurv/realforms.hpp"
#include "liecurv/spectra.hpp"
#include "liecurv/structure_constants.hpp"

#include <json.hpp>

#include <string>

namespace liecurv {

// JSON tensor files:
//   {"name", "dim", "scalar": "rational"|"float64", "kind": "structure-constants"|"form",
//    "degree" (forms), "symmetric" (degree 2), "entries": [[indices..., "value"], ...], "metadata"}
// Structure constants list [i, j, k, "C_ij^k"] with i < j. Alternating forms list
// strictly increasing indices. Symmetric degree-2 forms list i <= j; general
// matrices list every nonzero (i, j).

struct TensorFile {
    std::string name;
    int dim = 0;
    bool rational = true;
    std::string kind;
    int degree = 0;
    bool symmetric = false;
    nlohmann::json entries = nlohmann::json::array();
    nlohmann::json metadata = nlohmann::json::object();

    nlohmann::json to_json() const;
    static TensorFile from_json(const nlohmann::json& j); ///< throws InvalidArgument on schema errors
};

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

template <class S>
std::string scalar_name() {
    return is_exact_v<S> ? "rational" : "float64";
}

template <class S>
S parse_scalar(const nlohmann::json& v) {
    if constexpr (is_exact_v<S>) {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
        throw InvalidArgument("rational tensor values must be strings \"p/q\"");
    } else {
        if (v.is_number()) return v.get<double>();
        if (!v.is_string()) throw InvalidArgument("tensor value is neither a string nor a number");
        const std::string s = v.get<std::string>();
        if (s.find('/') != std::string::npos) return to_double(parse_rational(s));
        try {
            std::size_t used = 0;
            const double x = std::stod(s, &used);
            if (used != s.size()) throw InvalidArgument("bad float value \"" + s + "\"");
            return x;
        } catch (const std::logic_error&) {
            throw InvalidArgument("bad float value \"" + s + "\"");
        }
    }
}

template <class S>
TensorFile to_tensor_file(const StructureConstants<S>& sc) {
    TensorFile f;
    f.name = sc.name();
    f.dim = sc.dim();
    f.rational = is_exact_v<S>;
    f.kind = "structure-constants";
    f.degree = 3;
    f.metadata = sc.metadata();
    for (const auto& e : sc.entries()) f.entries.push_back({e.i, e.j, e.k, to_string(e.value)});
    return f;
}

template <class S, std::size_t N>
TensorFile to_tensor_file(const AlternatingForm<S, N>& form, const std::string& name,
                          nlohmann::json metadata = nlohmann::json::object()) {
    TensorFile f;
    f.name = name;
    f.dim = form.dim();
    f.rational = is_exact_v<S>;
    f.kind = "form";
    f.degree = static_cast<int>(N);
    f.metadata = std::move(metadata);
    for (const auto& [idx, v] : form.entries()) {
        nlohmann::json row = nlohmann::json::array();
        for (int i : idx) row.push_back(i);
        row.push_back(to_string(v));
        f.entries.push_back(row);
    }
    return f;
}

/// Degree-2 form. Symmetric input is written as its upper triangle.
template <class S>
TensorFile to_tensor_file(const Mat<S>& m, const std::string& name, nlohmann::json metadata = nlohmann::json::object()) {
    if (m.rows() != m.cols()) throw InvalidArgument("degree-2 tensor must be square");
    TensorFile f;
    f.name = name;
    f.dim = static_cast<int>(m.rows());
    f.rational = is_exact_v<S>;
    f.kind = "form";
    f.degree = 2;
    f.symmetric = m == m.transpose();
    f.metadata = std::move(metadata);
    for (int i = 0; i < f.dim; ++i)
        for (int j = f.symmetric ? i : 0; j < f.dim; ++j)
            if (!is_zero(m(i, j))) f.entries.push_back({i, j, to_string(m(i, j))});
    return f;
}

template <class S>
StructureConstants<S> structure_constants_from(const TensorFile& f) {
    if (f.kind != "structure-constants") throw InvalidArgument("expected kind \"structure-constants\", got \"" + f.kind + "\"");
    if constexpr (is_exact_v<S>)
        if (!f.rational) throw InvalidArgument("float64 tensor cannot be read exactly");
    std::vector<BracketEntry<S>> entries;
    for (const auto& e : f.entries) {
        if (!e.is_array() || e.size() != 4) throw InvalidArgument("structure-constant entries have the form [i, j, k, value]");
        entries.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), parse_scalar<S>(e[3])});
    }
    return StructureConstants<S>::build(f.name, f.dim, entries, f.metadata);
}

template <class S, std::size_t N>
AlternatingForm<S, N> alternating_form_from(const TensorFile& f) {
    if (f.kind != "form" || f.degree != static_cast<int>(N))
        throw InvalidArgument("expected a form of degree " + std::to_string(N));
    if constexpr (is_exact_v<S>)
        if (!f.rational) throw InvalidArgument("float64 tensor cannot be read exactly");
    AlternatingForm<S, N> out(f.dim);
    for (const auto& e : f.entries) {
        if (!e.is_array() || e.size() != N + 1) throw InvalidArgument("form entry has the wrong length");
        std::array<int, N> idx{};
        for (std::size_t a = 0; a < N; ++a) {
            idx[a] = e[a].get<int>();
            if (idx[a] < 0 || idx[a] >= f.dim) throw InvalidArgument("form index out of range");
            if (a > 0 && idx[a] <= idx[a - 1]) throw InvalidArgument("form indices must be strictly increasing");
        }
        out.add(idx, parse_scalar<S>(e[N]));
    }
    return out;
}

template <class S>
Mat<S> matrix_from(const TensorFile& f) {
    if (f.kind != "form" || f.degree != 2) throw InvalidArgument("expected a form of degree 2");
    if constexpr (is_exact_v<S>)
        if (!f.rational) throw InvalidArgument("float64 tensor cannot be read exactly");
    Mat<S> m = Mat<S>::Zero(f.dim, f.dim);
    for (const auto& e : f.entries) {
        if (!e.is_array() || e.size() != 3) throw InvalidArgument("degree-2 entries have the form [i, j, value]");
        const int i = e[0].get<int>(), j = e[1].get<int>();
        if (i < 0 || j < 0 || i >= f.dim || j >= f.dim) throw InvalidArgument("form index out of range");
        if (f.symmetric && i > j) throw InvalidArgument("symmetric entries must have i <= j");
        m(i, j) = parse_scalar<S>(e[2]);
        if (f.symmetric) m(j, i) = m(i, j);
    }
    return m;
}

/// Complex structure sidecar: a degree-2 form with metadata {"role": "complex-structure", "parent": name}.
TensorFile to_tensor_file(const ComplexStructure& j);
ComplexStructure complex_structure_from(const TensorFile& f);

nlohmann::json to_json(const SpectrumTable& t);
/// Inverse of to_json; `space_dim` is checked against the multiplicities when positive.
SpectrumTable spectrum_from_json(const nlohmann::json& j, int space_dim = 0);

} // namespace liecurv
