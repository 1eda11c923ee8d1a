#include "liecurv/spectra.hpp"

#include <map>
#include <sstream>

namespace liecurv {

namespace {

Rational q(std::int64_t p, std::int64_t r = 1) { return Rational(p, r); }

std::int64_t to_count(const Rational& x, const std::string& what) {
    if (!is_integer(x) || x < 0) throw InvalidArgument(what + ": non-integral multiplicity " + to_string(x));
    return boost::multiprecision::numerator(x).convert_to<std::int64_t>();
}

std::int64_t sym2_dim(std::int64_t d) { return d * (d + 1) / 2; }

std::optional<Rational> rational_sqrt(const Rational& x) {
    using boost::multiprecision::mpz_int;
    if (x < 0) return std::nullopt;
    const mpz_int a = boost::multiprecision::numerator(x), b = boost::multiprecision::denominator(x);
    const mpz_int sa = boost::multiprecision::sqrt(a), sb = boost::multiprecision::sqrt(b);
    if (sa * sa != a || sb * sb != b) return std::nullopt;
    return Rational(sa, sb);
}

const std::map<std::string, int>& exceptional_dims() {
    static const std::map<std::string, int> m = {{"sl2", 3},  {"sl3", 8},  {"g2", 14},  {"so8", 28},
                                                 {"f4", 52},  {"e6", 78},  {"e7", 133}, {"e8", 248}};
    return m;
}

SpectrumTable sl_table(int n) {
    if (n < 2) throw InvalidArgument("meyberg_table: sl_n needs n >= 2 (got " + std::to_string(n) + ")");
    if (n == 2) return exceptional_table(3);
    const std::int64_t m = n;
    const std::int64_t d = m * m - 1;
    return SpectrumTable::make(sym2_dim(d), {{2, 1},
                                             {1, m * m - 1},
                                             {q(2, m), m * m * (m - 3) * (m + 1) / 4},
                                             {q(-2, m), m * m * (m + 3) * (m - 1) / 4}});
}

SpectrumTable sp_table(int n) {
    if (n < 4 || n % 2 != 0) throw InvalidArgument("meyberg_table: sp_n needs even n >= 4 (got " + std::to_string(n) + ")");
    const std::int64_t m = n;
    const std::int64_t d = m * (m + 1) / 2;
    return SpectrumTable::make(sym2_dim(d), {{2, 1},
                                             {q(m + 4, m + 2), (m - 2) * (m + 1) / 2},
                                             {q(-4, m + 2), m * (m + 1) * (m + 2) * (m + 3) / 24},
                                             {q(2, m + 2), m * (m - 1) * (m - 2) * (m + 3) / 12}});
}

SpectrumTable so_table(int n) {
    if (n < 5) throw InvalidArgument("meyberg_table: so_n needs n >= 5 (got " + std::to_string(n) + ")");
    const std::int64_t m = n;
    const std::int64_t d = m * (m - 1) / 2;
    return SpectrumTable::make(sym2_dim(d), {{2, 1},
                                             {q(m - 4, m - 2), (m + 2) * (m - 1) / 2},
                                             {q(4, m - 2), m * (m - 1) * (m - 2) * (m - 3) / 24},
                                             {q(-2, m - 2), m * (m + 1) * (m + 2) * (m - 3) / 12}});
}

std::optional<SpectrumTable> split_table(char family, int rank) {
    switch (family) {
    case 'A': return meyberg_table("sl", rank + 1);
    case 'B': return meyberg_table("so", 2 * rank + 1);
    case 'C': return meyberg_table("sp", 2 * rank);
    case 'D': return meyberg_table("so", 2 * rank);
    case 'G': return meyberg_table("g2");
    case 'F': return meyberg_table("f4");
    case 'E': return meyberg_table("e" + std::to_string(rank));
    default: return std::nullopt;
    }
}

} // namespace

SpectrumTable SpectrumTable::make(std::int64_t space_dim, const std::vector<SpectrumRow>& raw) {
    SpectrumTable t;
    t.space_dim = space_dim;
    for (const auto& r : raw) {
        if (r.multiplicity < 0) throw InvalidArgument("spectrum table: negative multiplicity");
        if (r.multiplicity == 0) continue;
        auto it = std::find_if(t.rows.begin(), t.rows.end(), [&](const SpectrumRow& x) { return x.eigenvalue == r.eigenvalue; });
        if (it != t.rows.end())
            it->multiplicity += r.multiplicity;
        else
            t.rows.push_back(r);
    }
    if (t.total() != space_dim)
        throw InvalidArgument("spectrum table: multiplicities sum to " + std::to_string(t.total()) + ", expected " +
                              std::to_string(space_dim));
    return t;
}

std::int64_t SpectrumTable::total() const {
    std::int64_t s = 0;
    for (const auto& r : rows) s += r.multiplicity;
    return s;
}

std::int64_t SpectrumTable::multiplicity_of(const Rational& eigenvalue) const {
    for (const auto& r : rows)
        if (r.eigenvalue == eigenvalue) return r.multiplicity;
    return 0;
}

Rational SpectrumTable::power_sum(int k) const {
    Rational s = 0;
    for (const auto& r : rows) {
        Rational p = 1;
        for (int e = 0; e < k; ++e) p *= r.eigenvalue;
        s += p * r.multiplicity;
    }
    return s;
}

bool SpectrumTable::operator==(const SpectrumTable& o) const {
    if (space_dim != o.space_dim || rows.size() != o.rows.size()) return false;
    for (const auto& r : rows)
        if (o.multiplicity_of(r.eigenvalue) != r.multiplicity) return false;
    return true;
}

std::string SpectrumTable::to_string() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < rows.size(); ++i)
        os << (i ? ", " : "") << liecurv::to_string(rows[i].eigenvalue) << ":" << rows[i].multiplicity;
    os << "}";
    return os.str();
}

SpectrumTable exceptional_table(int d) {
    if (d <= 0) throw InvalidArgument("exceptional_table: dimension must be positive");
    const std::int64_t dd = d;
    const auto w = rational_sqrt(q(dd + 242, dd + 2));
    if (!w) throw MathRejection("exceptional_table: w = sqrt((d+242)/(d+2)) is irrational for d = " + std::to_string(d));
    const Rational m1 = 3 * dd * ((dd + 2) * *w - (dd + 32)) / (*w * (11 - *w));
    const Rational m2 = 3 * dd * ((dd + 2) * *w + (dd + 32)) / (*w * (11 + *w));
    const std::string what = "exceptional_table(d=" + std::to_string(d) + ")";
    return SpectrumTable::make(sym2_dim(dd), {{2, 1},
                                              {(1 + *w) / 6, to_count(m1, what)},
                                              {(1 - *w) / 6, to_count(m2, what)}});
}

SpectrumTable meyberg_table(const std::string& family, int param) {
    if (family == "sl") return sl_table(param);
    if (family == "sp") return sp_table(param);
    if (family == "so") return so_table(param);
    const auto it = exceptional_dims().find(family);
    if (it != exceptional_dims().end()) return exceptional_table(it->second);
    throw InvalidArgument("meyberg_table: unknown family '" + family + "'");
}

SpectrumTable real_form_spectrum(const SpectrumTable& base, RealFormCase c) {
    if (base.total() != base.space_dim) throw InvalidArgument("real_form_spectrum: malformed base table");
    if (c == RealFormCase::A) return base;
    // base.space_dim = d(d+1)/2
    std::int64_t d = 0;
    while (sym2_dim(d) < base.space_dim) ++d;
    if (sym2_dim(d) != base.space_dim) throw InvalidArgument("real_form_spectrum: base dimension is not d(d+1)/2");
    const std::int64_t real_dim = sym2_dim(2 * d);
    std::vector<SpectrumRow> rows;
    for (const auto& r : base.rows) rows.push_back({r.eigenvalue, 2 * r.multiplicity});
    rows.push_back({0, real_dim - 2 * base.total()});
    return SpectrumTable::make(real_dim, rows);
}

std::optional<SpectrumTable> expected_spectrum(const nlohmann::json& md) {
    const std::string kind = md.value("kind", "");
    if (kind == "split") {
        const std::string fam = md.value("family", "");
        if (fam.size() != 1) return std::nullopt;
        return split_table(fam[0], md.value("rank", 0));
    }
    if (kind == "real-a") return meyberg_table("sl", md.value("complex_rank", 0) + 1);
    if (kind == "realified" && md.contains("parent_metadata")) {
        const auto base = expected_spectrum(md["parent_metadata"]);
        if (!base) return std::nullopt;
        return real_form_spectrum(*base, RealFormCase::B);
    }
    return std::nullopt;
}

bool has_eigenvalue_one(const nlohmann::json& md) {
    const std::string kind = md.value("kind", "");
    if (kind == "split") return md.value("family", "") == "A" && md.value("rank", 0) >= 2;
    if (kind == "real-a") return md.value("complex_rank", 0) >= 2;
    if (kind == "realified" && md.contains("parent_metadata")) return has_eigenvalue_one(md["parent_metadata"]);
    if (kind == "sum" && md.contains("summands"))
        for (const auto& s : md["summands"])
            if (has_eigenvalue_one(s)) return true;
    return false;
}

SpectrumMode parse_spectrum_mode(const std::string& s) {
    if (s == "auto") return SpectrumMode::Auto;
    if (s == "exact") return SpectrumMode::Exact;
    if (s == "float") return SpectrumMode::Float;
    if (s == "matrix-free") return SpectrumMode::MatrixFree;
    throw InvalidArgument("unknown spectrum mode '" + s + "' (expected auto, exact, float, matrix-free)");
}

std::string to_string(SpectrumMode m) {
    switch (m) {
    case SpectrumMode::Auto: return "auto";
    case SpectrumMode::Exact: return "exact";
    case SpectrumMode::Float: return "float";
    default: return "matrix-free";
    }
}

} // namespace liecurv
