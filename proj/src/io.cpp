#include "liecurv/io.hpp"

#include <fstream>
#include <sstream>

namespace liecurv {

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw InvalidArgument(std::string("tensor file is missing \"") + key + "\"");
    return j.at(key);
}

} // namespace

nlohmann::json TensorFile::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["dim"] = dim;
    j["scalar"] = rational ? "rational" : "float64";
    j["kind"] = kind;
    if (kind == "form") {
        j["degree"] = degree;
        if (degree == 2) j["symmetric"] = symmetric;
    }
    j["entries"] = entries;
    j["metadata"] = metadata;
    return j;
}

TensorFile TensorFile::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("tensor file must be a JSON object");
    TensorFile f;
    try {
        f.name = j.value("name", std::string());
        f.dim = require(j, "dim").get<int>();
        const std::string scalar = require(j, "scalar").get<std::string>();
        if (scalar != "rational" && scalar != "float64") throw InvalidArgument("scalar must be \"rational\" or \"float64\"");
        f.rational = scalar == "rational";
        f.kind = require(j, "kind").get<std::string>();
        if (f.kind == "structure-constants") {
            f.degree = 3;
        } else if (f.kind == "form") {
            f.degree = require(j, "degree").get<int>();
            if (f.degree < 2 || f.degree > 4) throw InvalidArgument("form degree must be 2, 3 or 4");
            f.symmetric = f.degree == 2 && j.value("symmetric", false);
        } else {
            throw InvalidArgument("kind must be \"structure-constants\" or \"form\"");
        }
        f.entries = require(j, "entries");
        if (!f.entries.is_array()) throw InvalidArgument("entries must be an array");
        f.metadata = j.value("metadata", nlohmann::json::object());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed tensor file: ") + e.what());
    }
    if (f.dim < 0) throw InvalidArgument("dim must be non-negative");
    return f;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << j.dump(1) << '\n';
}

TensorFile to_tensor_file(const ComplexStructure& j) {
    TensorFile f = to_tensor_file(j.matrix, j.parent + ".J", {{"role", "complex-structure"}, {"parent", j.parent}});
    return f;
}

ComplexStructure complex_structure_from(const TensorFile& f) {
    if (f.metadata.value("role", std::string()) != "complex-structure")
        throw InvalidArgument("file is not a complex-structure sidecar");
    return {matrix_from<Rational>(f), f.metadata.value("parent", std::string())};
}

nlohmann::json to_json(const SpectrumTable& t) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : t.rows) out.push_back({{"eigenvalue", to_string(r.eigenvalue)}, {"multiplicity", r.multiplicity}});
    return out;
}

SpectrumTable spectrum_from_json(const nlohmann::json& j, int space_dim) {
    if (!j.is_array()) throw InvalidArgument("spectrum must be a JSON array");
    std::vector<SpectrumRow> rows;
    std::int64_t total = 0;
    try {
        for (const auto& r : j) {
            SpectrumRow row{parse_scalar<Rational>(r.at("eigenvalue")), r.at("multiplicity").get<std::int64_t>()};
            if (row.multiplicity < 0) throw InvalidArgument("negative multiplicity");
            total += row.multiplicity;
            rows.push_back(row);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed spectrum: ") + e.what());
    }
    return SpectrumTable::make(space_dim > 0 ? space_dim : total, rows);
}

} // namespace liecurv
