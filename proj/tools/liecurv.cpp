#include "liecurv/chevalley.hpp"
#include "liecurv/curvops.hpp"
#include "liecurv/io.hpp"
#include "liecurv/liecore.hpp"
#include "liecurv/realforms.hpp"
#include "liecurv/reconstruct.hpp"
#include "liecurv/report.hpp"
#include "liecurv/spectra.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace liecurv;
using json = nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_cap = 3;
constexpr int exit_math = 4;

enum class Format { Json, Table, Csv };

Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "table") return Format::Table;
    if (s == "csv") return Format::Csv;
    throw InvalidArgument("unknown format '" + s + "'");
}

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

/// Prints `doc` as JSON, or `rows` (flat objects with the given columns) as an
/// aligned table / CSV; `notes` follow a table.
void emit(Format fmt, const json& doc, const std::vector<std::string>& columns, const json& rows,
          const std::vector<std::string>& notes = {}) {
    if (fmt == Format::Json) {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    if (fmt == Format::Csv) {
        for (std::size_t c = 0; c < columns.size(); ++c) std::cout << (c ? "," : "") << csv_quote(columns[c]);
        std::cout << '\n';
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < columns.size(); ++c)
                std::cout << (c ? "," : "") << csv_quote(cell(r.value(columns[c], json())));
            std::cout << '\n';
        }
        return;
    }
    std::vector<std::size_t> width;
    for (const auto& c : columns) width.push_back(c.size());
    for (const auto& r : rows)
        for (std::size_t c = 0; c < columns.size(); ++c) width[c] = std::max(width[c], cell(r.value(columns[c], json())).size());
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            std::cout << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
        std::cout << '\n';
    };
    line(columns);
    std::vector<std::string> rule;
    for (auto w : width) rule.push_back(std::string(w, '-'));
    line(rule);
    for (const auto& r : rows) {
        std::vector<std::string> cells;
        for (const auto& c : columns) cells.push_back(cell(r.value(c, json())));
        line(cells);
    }
    for (const auto& n : notes) std::cout << n << '\n';
}

TensorFile load_tensor(const std::string& path) { return TensorFile::from_json(read_json_file(path)); }

void write_tensor(const std::string& path, const TensorFile& f) {
    if (path == "-")
        std::cout << f.to_json().dump(1) << '\n';
    else
        write_json_file(path, f.to_json());
}

/// Runs `fn` with the structure constants of `f` in their stored scalar type.
template <class Fn>
int with_algebra(const TensorFile& f, Fn&& fn) {
    if (f.rational) return fn(structure_constants_from<Rational>(f));
    return fn(structure_constants_from<double>(f));
}

std::string residual_text(double r, bool exact) {
    if (exact && r == 0.0) return "exact-zero";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", r);
    return buf;
}

// ---------------------------------------------------------------------------
// construct

struct ConstructArgs {
    std::string family;
    int rank = 0, p = -1, q = -1, m = 0, n = 0;
    bool realify = false;
    std::vector<std::string> sums;
    std::optional<std::uint64_t> scramble_seed;
    std::string output = "-";
    std::string j_output;
    std::string emit = "algebra";
    std::string scalar = "rational";
};

StructureConstantsQ base_algebra(const ConstructArgs& a) {
    const std::string& f = a.family;
    if (f.size() == 1 && f[0] >= 'A' && f[0] <= 'G') {
        if (a.rank < 1) throw InvalidArgument("--family " + f + " needs --rank >= 1");
        return chevalley_algebra(f[0], a.rank);
    }
    if (f == "sl-real") {
        const int n = a.n > 0 ? a.n : a.rank + 1;
        if (n < 2) throw InvalidArgument("--family sl-real needs --n >= 2 (or --rank)");
        return sl_real(n);
    }
    if (f == "su") {
        if (a.p < 0 || a.q < 0) throw InvalidArgument("--family su needs --p and --q");
        return su_pq(a.p, a.q);
    }
    if (f == "sl-quat") {
        if (a.m < 1) throw InvalidArgument("--family sl-quat needs --m >= 1");
        return sl_quaternion(a.m);
    }
    if (f == "su2") return su2_cyclic();
    throw InvalidArgument("unknown family '" + f + "' (A..G, sl-real, su, sl-quat, su2)");
}

int cmd_construct(const ConstructArgs& a) {
    if (a.family.empty() && a.sums.empty()) throw InvalidArgument("give --family and/or --sum files");
    if (a.realify && a.family.empty()) throw InvalidArgument("--realify applies to --family");
    if (a.realify && !a.sums.empty()) throw InvalidArgument("--realify cannot be combined with --sum; realify the summand first");
    if (a.emit != "algebra" && a.emit != "three-form" && a.emit != "killing")
        throw InvalidArgument("--emit must be algebra, three-form or killing");
    if (a.scalar != "rational" && a.scalar != "float64") throw InvalidArgument("--scalar must be rational or float64");

    std::vector<StructureConstantsQ> parts;
    std::optional<ComplexStructure> j;
    if (!a.family.empty()) {
        StructureConstantsQ base = base_algebra(a);
        if (a.realify) {
            auto r = realify(base);
            base = r.algebra;
            j = r.complex_structure;
        }
        parts.push_back(base);
    }
    for (const auto& path : a.sums) parts.push_back(structure_constants_from<Rational>(load_tensor(path)));
    StructureConstantsQ sc = parts.size() == 1 ? parts.front() : direct_sum(parts);

    if (a.scramble_seed) {
        const MatQ p = random_basis_change(sc.dim(), *a.scramble_seed);
        sc = change_basis(sc, p);
        auto md = sc.metadata();
        md["scramble_seed"] = *a.scramble_seed;
        sc = sc.with_metadata(md);
        if (j) j->matrix = inverse(p) * j->matrix * p;
    }

    TensorFile out;
    if (a.emit == "algebra") {
        out = a.scalar == "rational" ? to_tensor_file(sc) : to_tensor_file(sc.cast<double>());
    } else if (a.emit == "three-form") {
        out = to_tensor_file(cartan_three_form(sc), sc.name() + ".C3", {{"role", "cartan-three-form"}});
    } else {
        out = to_tensor_file(killing_form(sc), sc.name() + ".killing", {{"role", "killing-form"}});
    }
    write_tensor(a.output, out);

    if (j) {
        std::string path = a.j_output;
        if (path.empty() && a.output != "-") {
            path = a.output;
            const auto dot = path.rfind(".json");
            path = (dot != std::string::npos && dot + 5 == path.size() ? path.substr(0, dot) : path) + ".J.json";
        }
        if (!path.empty())
            write_tensor(path, to_tensor_file(*j));
        else
            std::cerr << "note: complex structure not written (use --j-output FILE)\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumArgs {
    std::string input;
    std::string expect = "auto";
    std::string mode = "auto";
    std::string format = "table";
};

int cmd_spectrum(const SpectrumArgs& a) {
    const Format fmt = parse_format(a.format);
    const TensorFile f = load_tensor(a.input);
    const SpectrumMode mode = parse_spectrum_mode(a.mode);
    const std::int64_t n = static_cast<std::int64_t>(f.dim) * (f.dim + 1) / 2;
    SpectrumTable expected;
    if (a.expect == "auto") {
        const auto t = expected_spectrum(f.metadata);
        if (!t) throw InvalidArgument("no closed-form spectrum for this algebra's metadata; pass --expect FILE");
        expected = *t;
    } else {
        expected = spectrum_from_json(read_json_file(a.expect), static_cast<int>(n));
    }
    return with_algebra(f, [&](const auto& sc) {
        using S = typename std::decay_t<decltype(sc)>::Scalar;
        const LieContext<S> ctx(sc);
        const CheckReport rep = verify_spectrum(ctx, expected, mode);
        json rows = json::array();
        for (const auto& r : rep.details.value("rows", json::array()))
            rows.push_back({{"eigenvalue", r["eigenvalue"]},
                            {"expected", r["expected"]},
                            {"verified", r["computed"]},
                            {"status", r["status"]}});
        if (rows.empty())
            for (const auto& r : expected.rows)
                rows.push_back({{"eigenvalue", to_string(r.eigenvalue)},
                                {"expected", r.multiplicity},
                                {"verified", "n/a"},
                                {"status", rep.status()}});
        emit(fmt, rep.to_json(), {"eigenvalue", "expected", "verified", "status"}, rows,
             {"mode: " + rep.details.value("mode", std::string()) + ", overall: " + rep.status()});
        return rep.pass ? exit_ok : exit_failed;
    });
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string input;
    std::string checks = "theorem-a,jacobi,killing,cartan-identity,lambda-beta,identity-32";
    int samples = 3;
    std::uint64_t seed = 1;
    std::string format = "table";
};

const std::vector<std::string> known_checks = {"theorem-a",   "jacobi",      "killing",
                                               "cartan-identity", "lambda-beta", "identity-32"};

template <class S>
double relative(double r, double scale) {
    if constexpr (is_exact_v<S>) return r;
    return r / std::max(1.0, scale);
}

template <class S>
CheckReport run_check(const std::string& name, const StructureConstants<S>& sc, const VerifyArgs& a,
                      std::optional<LieContext<S>>& ctx) {
    constexpr bool exact = is_exact_v<S>;
    const double tol = exact ? 0.0 : (name == "theorem-a" ? 1e-9 : 1e-10);
    CheckReport rep{name};
    auto context = [&]() -> const LieContext<S>& {
        if (!ctx) ctx.emplace(sc);
        return *ctx;
    };
    const double c_scale = [&] {
        double m = 0.0;
        for (const auto& e : sc.entries()) m = std::max(m, std::abs(to_double(e.value)));
        return m;
    }();
    if (name == "jacobi") {
        const JacobiReport j = verify_jacobi(sc);
        rep.residual = relative<S>(j.max_residual, c_scale * c_scale);
        rep.pass = exact ? j.ok() : rep.residual <= tol;
        json v = json::array();
        for (std::size_t i = 0; i < std::min<std::size_t>(j.violations.size(), 5); ++i)
            v.push_back({j.violations[i].i, j.violations[i].j, j.violations[i].k, j.violations[i].l, j.violations[i].value});
        rep.details = {{"violations", j.violation_count}, {"first", v}};
    } else if (name == "killing") {
        const Mat<S> beta = killing_form(sc);
        const int r = form_rank(beta);
        double skew = 0.0;
        for (int i = 0; i < sc.dim(); ++i) {
            const Mat<S> ba = beta * ad_matrix(sc, i);
            skew = std::max(skew, max_abs(Mat<S>(ba + ba.transpose())));
        }
        const double sym = max_abs(Mat<S>(beta - beta.transpose()));
        rep.residual = relative<S>(std::max(skew, sym), max_abs(beta) * std::max(1.0, c_scale));
        rep.pass = r == sc.dim() && rep.residual <= tol;
        rep.details = {{"rank", r}, {"dim", sc.dim()}, {"ad_skew_residual", skew}, {"symmetry_residual", sym}};
    } else if (name == "cartan-identity") {
        rep.residual = relative<S>(cartan_identity_residual(context()), max_abs(context().beta()) * std::max(1.0, c_scale));
        rep.pass = rep.residual <= tol;
    } else if (name == "lambda-beta") {
        const auto& c = context();
        rep.residual = relative<S>(lambda_apply(sc, c.beta()).max_abs(), max_abs(c.beta()) * std::max(1.0, c_scale * c_scale));
        rep.pass = rep.residual <= tol;
        rep.details = {{"claim", "Lambda beta = 0"}};
    } else if (name == "identity-32") {
        rep.residual = relative<S>(identity_32_residual(context()), 1.0);
        rep.pass = rep.residual <= (exact ? 0.0 : 1e-9);
    } else if (name == "theorem-a") {
        const auto& c = context();
        double worst = 0.0;
        for (int s = 0; s < a.samples; ++s) {
            const MatQ sigma_q = random_symmetric_form(sc.dim(), a.seed + static_cast<std::uint64_t>(s));
            const Mat<S> sigma = cast_matrix<S>(sigma_q);
            worst = std::max(worst, relative<S>(theorem_a_residual(c, sigma), max_abs(sigma)));
        }
        rep.residual = worst;
        rep.pass = worst <= tol;
        rep.details = {{"samples", a.samples}, {"seed", a.seed}};
    }
    rep.details["backend"] = exact ? "exact" : "float";
    return rep;
}

int cmd_verify(const VerifyArgs& a) {
    const Format fmt = parse_format(a.format);
    std::vector<std::string> checks;
    {
        std::stringstream ss(a.checks);
        std::string c;
        while (std::getline(ss, c, ','))
            if (!c.empty()) {
                if (std::find(known_checks.begin(), known_checks.end(), c) == known_checks.end())
                    throw InvalidArgument("unknown check '" + c + "'");
                checks.push_back(c);
            }
    }
    if (checks.empty()) throw InvalidArgument("no checks selected");
    if (a.samples < 1) throw InvalidArgument("--samples must be positive");
    const TensorFile f = load_tensor(a.input);
    return with_algebra(f, [&](const auto& sc) {
        using S = typename std::decay_t<decltype(sc)>::Scalar;
        std::optional<LieContext<S>> ctx;
        std::vector<CheckReport> reports;
        for (const auto& c : checks) reports.push_back(run_check(c, sc, a, ctx));
        json rows = json::array();
        for (const auto& r : reports)
            rows.push_back({{"check", r.check}, {"status", r.status()}, {"residual", residual_text(r.residual, is_exact_v<S>)}});
        emit(fmt, to_json(reports), {"check", "status", "residual"}, rows);
        return all_pass(reports) ? exit_ok : exit_failed;
    });
}

// ---------------------------------------------------------------------------
// ker-lambda

struct KerArgs {
    std::string input;
    bool classify = false;
    std::string format = "table";
};

bool proportional(const MatQ& a, const MatQ& b) {
    MatQ both(a.size(), 2);
    both.col(0) = a.reshaped();
    both.col(1) = b.reshaped();
    return rank(both) <= 1;
}

std::string classify_kernel(const StructureConstantsQ& sc, const KerLambda<Rational>& kl, json& details) {
    const int d = sc.dim();
    const int n = kl.dimension;
    if (d == 3) return "dim " + std::to_string(n) + ", dim-3 case: all of Sym^2";
    const MatQ beta = killing_form(sc);
    if (n == 1 && proportional(kl.basis[0], beta)) return "dim 1, spanned by Killing form";
    if (d == 6 && n == 12 && summands_from_threeform(cartan_three_form(sc, beta)).summands.size() == 1)
        return "dim 12, dim-6 special case";
    if (n == 2) {
        const MatQ& other = proportional(kl.basis[0], beta) ? kl.basis[1] : kl.basis[0];
        try {
            const auto cs = recover_complex_structure(beta, other);
            details["complex_structure_exact"] = cs.exact;
            return "dim 2, pencil Re/Im beta^h";
        } catch (const MathRejection&) {
        }
    }
    // Not simple: classify each summand of the Cartan 3-form.
    const SummandReport rep = summands_from_threeform(cartan_three_form(sc, beta));
    if (rep.summands.size() < 2) throw MathRejection("kernel of Lambda does not match any case for a simple algebra");
    std::string text = "dim " + std::to_string(n) + ", direct sum:";
    int total = 0;
    json parts = json::array();
    for (const auto& s : rep.summands) {
        std::string c = s.dim == 3 ? "dim-3 (6)"
                        : s.dim == 6 && s.ker_lambda_dim == 12 ? "dim-6 special (12)"
                        : s.has_complex_structure ? "pencil (2)"
                                                  : "Killing (1)";
        text += " " + c;
        total += s.ker_lambda_dim;
        parts.push_back({{"dim", s.dim}, {"ker_lambda_dim", s.ker_lambda_dim}, {"case", c}});
    }
    details["summands"] = parts;
    if (total != n) throw MathRejection("summand contributions do not add up to dim Ker Lambda");
    return text;
}

int cmd_ker_lambda(const KerArgs& a) {
    const Format fmt = parse_format(a.format);
    const TensorFile f = load_tensor(a.input);
    if (!f.rational) throw InvalidArgument("ker-lambda needs rational structure constants");
    const StructureConstantsQ sc = structure_constants_from<Rational>(f);
    const LieContext<Rational> ctx(sc); // semisimplicity gate
    const auto kl = ker_lambda(sc);
    CheckReport rep{"ker-lambda"};
    rep.pass = true;
    json basis = json::array();
    for (const auto& b : kl.basis) basis.push_back(to_tensor_file(b, "sigma").entries);
    rep.details = {{"dimension", kl.dimension}, {"basis", basis}};
    json row = {{"dimension", kl.dimension}};
    if (a.classify) {
        const std::string c = classify_kernel(sc, kl, rep.details);
        rep.details["classification"] = c;
        row["classification"] = c;
    }
    std::vector<std::string> cols{"dimension"};
    if (a.classify) cols.push_back("classification");
    emit(fmt, rep.to_json(), cols, json::array({row}));
    return exit_ok;
}

// ---------------------------------------------------------------------------
// decompose

struct DecomposeArgs {
    std::string three_form;
    std::string killing;
    std::uint64_t seed = 1;
    std::string format = "table";
};

json matrix_json(const MatQ& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        out.push_back(row);
    }
    return out;
}

json matrix_json(const MatD& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(row);
    }
    return out;
}

int cmd_decompose(const DecomposeArgs& a) {
    const Format fmt = parse_format(a.format);
    const TensorFile f = load_tensor(a.three_form);
    if (!f.rational) throw InvalidArgument("decompose needs a rational 3-form");
    const auto c3 = alternating_form_from<Rational, 3>(f);

    const SummandReport rep = summands_from_threeform(c3, a.seed);
    json doc = rep.to_json();
    json rows = json::array();
    bool certified = rep.jacobi_ok;
    for (std::size_t k = 0; k < rep.summands.size(); ++k) {
        const auto& s = rep.summands[k];
        const SummandFingerprint fp = identify_summand(s.basis, c3);
        doc["summands"][k]["fingerprint"] = fp.to_json();
        if (s.has_complex_structure) {
            const auto cs = summand_complex_structure(c3, s.basis, a.seed);
            if (cs) {
                doc["summands"][k]["complex_structure"] = {
                    {"sign", "+-"}, {"exact", cs->exact}, {"residual", cs->residual},
                    {"matrix", cs->exact ? matrix_json(cs->j_exact) : matrix_json(cs->j_float)}};
            }
        }
        rows.push_back({{"summand", k},
                        {"dim", s.dim},
                        {"complex", s.has_complex_structure},
                        {"ker_lambda_dim", s.ker_lambda_dim},
                        {"type", fp.match}});
    }
    std::vector<std::string> notes{"kernel dim " + std::to_string(rep.kernel_dim) + ", jacobi " +
                                   (rep.jacobi_ok ? "pass" : "fail")};
    if (!a.killing.empty()) {
        const MatQ beta = matrix_from<Rational>(load_tensor(a.killing));
        const auto rb = recover_bracket(c3, beta);
        certified = certified && rb.jacobi.ok();
        doc["reconstruction"] = {{"jacobi", rb.jacobi.ok() ? "pass" : "fail"},
                                 {"killing_matches", rb.killing_matches},
                                 {"killing_residual", rb.killing_residual},
                                 {"algebra", to_tensor_file(rb.algebra).to_json()}};
        notes.push_back(std::string("reconstructed bracket: jacobi ") + (rb.jacobi.ok() ? "pass" : "fail") +
                        ", killing form " + (rb.killing_matches ? "matches" : "differs"));
    }
    doc["certified"] = certified;
    emit(fmt, doc, {"summand", "dim", "complex", "ker_lambda_dim", "type"}, rows, notes);
    return certified ? exit_ok : exit_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"liecurv: curvature operators of semisimple Lie algebras"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "liecurv 1.0");

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "build an algebra and write its tensor file");
    construct->add_option("--family", ca.family, "A..G (Chevalley), sl-real, su, sl-quat, su2");
    construct->add_option("--rank", ca.rank, "rank for A..G");
    construct->add_option("--p", ca.p, "su(p,q): p");
    construct->add_option("--q", ca.q, "su(p,q): q");
    construct->add_option("--m", ca.m, "sl(m,H): m");
    construct->add_option("--n", ca.n, "sl(n,R): n");
    construct->add_flag("--realify", ca.realify, "underlying real algebra; writes the J sidecar");
    construct->add_option("--sum", ca.sums, "tensor files to add as direct summands")->check(CLI::ExistingFile);
    construct->add_option("--scramble-seed", ca.scramble_seed, "apply a seeded random rational basis change");
    construct->add_option("-o,--output", ca.output, "output file ('-' for stdout)");
    construct->add_option("--j-output", ca.j_output, "complex-structure sidecar file");
    construct->add_option("--emit", ca.emit, "algebra | three-form | killing")->check(CLI::IsMember({"algebra", "three-form", "killing"}));
    construct->add_option("--scalar", ca.scalar, "rational | float64")->check(CLI::IsMember({"rational", "float64"}));

    const std::vector<std::string> formats{"json", "table", "csv"};

    SpectrumArgs sa;
    auto* spectrum = app.add_subcommand("spectrum", "verify the Omega spectrum against a table");
    spectrum->add_option("--input", sa.input, "algebra tensor file")->required()->check(CLI::ExistingFile);
    spectrum->add_option("--expect", sa.expect, "auto | spectrum JSON file");
    spectrum->add_option("--mode", sa.mode, "auto | exact | float | matrix-free")
        ->check(CLI::IsMember({"auto", "exact", "float", "matrix-free"}));
    spectrum->add_option("--format", sa.format)->check(CLI::IsMember(formats));

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run identity checks");
    verify->add_option("--input", va.input, "algebra tensor file")->required()->check(CLI::ExistingFile);
    verify->add_option("--checks", va.checks, "comma list: theorem-a,jacobi,killing,cartan-identity,lambda-beta,identity-32");
    verify->add_option("--samples", va.samples, "random forms for theorem-a");
    verify->add_option("--seed", va.seed, "seed for sampled forms");
    verify->add_option("--format", va.format)->check(CLI::IsMember(formats));

    KerArgs ka;
    auto* ker = app.add_subcommand("ker-lambda", "kernel of Lambda on symmetric 2-forms");
    ker->add_option("--input", ka.input, "algebra tensor file")->required()->check(CLI::ExistingFile);
    ker->add_flag("--classify", ka.classify, "name the structural case");
    ker->add_option("--format", ka.format)->check(CLI::IsMember(formats));

    DecomposeArgs da;
    auto* decompose = app.add_subcommand("decompose", "recover simple summands from a Cartan 3-form");
    decompose->add_option("--three-form", da.three_form, "degree-3 form file")->required()->check(CLI::ExistingFile);
    decompose->add_option("--killing", da.killing, "Killing form file; enables bracket reconstruction")->check(CLI::ExistingFile);
    decompose->add_option("--seed", da.seed, "seed for generic kernel elements");
    decompose->add_option("--format", da.format)->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*construct) return cmd_construct(ca);
        if (*spectrum) return cmd_spectrum(sa);
        if (*verify) return cmd_verify(va);
        if (*ker) return cmd_ker_lambda(ka);
        if (*decompose) return cmd_decompose(da);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_cap;
    } catch (const MathRejection& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_math;
    }
    return exit_usage;
}
