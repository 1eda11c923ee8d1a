#include "liecurv/realforms.hpp"

#include <random>

namespace liecurv {

namespace {

// Real structure constants of the Lie algebra spanned by the given real
// matrices under the commutator.
StructureConstantsQ from_matrix_basis(const std::string& name, const std::vector<MatQ>& basis, nlohmann::json md) {
    const int d = static_cast<int>(basis.size());
    const Eigen::Index n = basis.front().rows();
    const Eigen::Index flat = n * n;
    MatQ coords(flat, d);
    for (int a = 0; a < d; ++a) coords.col(a) = basis[a].reshaped();

    // Choose d independent matrix positions; coordinates are read off there.
    MatQ t = coords.transpose();
    const auto rows = rref_in_place(t);
    if (static_cast<int>(rows.size()) != d) throw std::logic_error(name + ": matrix basis is dependent");
    MatQ square(d, d);
    for (int r = 0; r < d; ++r) square.row(r) = coords.row(rows[r]);
    const MatQ solve = inverse(square);

    std::vector<BracketEntry<Rational>> entries;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const MatQ comm = basis[i] * basis[j] - basis[j] * basis[i];
            const Vec<Rational> v = comm.reshaped();
            Vec<Rational> picked(d);
            for (int r = 0; r < d; ++r) picked(r) = v(rows[r]);
            const Vec<Rational> x = solve * picked;
            if (coords * x != v) throw std::logic_error(name + ": basis is not closed under the commutator");
            for (int k = 0; k < d; ++k)
                if (x(k) != 0) entries.push_back({i, j, k, x(k)});
        }
    return StructureConstantsQ::build(name, d, entries, std::move(md));
}

MatQ unit(int n, int j, int k) {
    MatQ m = MatQ::Zero(n, n);
    m(j, k) = 1;
    return m;
}

// A + iB as the real matrix [[A, -B], [B, A]].
MatQ complex_block(const MatQ& re, const MatQ& im) {
    const Eigen::Index n = re.rows();
    MatQ out(2 * n, 2 * n);
    out << re, -im, im, re;
    return out;
}

// Left multiplication by the quaternion unit u in {1, i, j, k} on R^4 = (1, i, j, k).
MatQ quaternion_unit(int u) {
    // table[u][x] = (sign, index) of u * e_x
    static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    MatQ m = MatQ::Zero(4, 4);
    for (int x = 0; x < 4; ++x) m(idx[u][x], x) = sgn[u][x];
    return m;
}

// Quaternionic m x m matrix E_jk * u as a 4m x 4m real matrix.
MatQ quaternion_entry(int m, int j, int k, int u) {
    MatQ out = MatQ::Zero(4 * m, 4 * m);
    out.block(4 * j, 4 * k, 4, 4) = quaternion_unit(u);
    return out;
}

} // namespace

StructureConstantsQ sl_real(int n) {
    if (n < 2) throw InvalidArgument("sl_real: n must be >= 2 (got " + std::to_string(n) + ")");
    std::vector<MatQ> basis;
    for (int i = 0; i + 1 < n; ++i) basis.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k) basis.push_back(unit(n, j, k));
    nlohmann::json md = {{"family", "sl-real"}, {"n", n}, {"kind", "real-a"}, {"complex_type", "A"},
                         {"complex_rank", n - 1}, {"complex_basis", true}};
    return from_matrix_basis("sl(" + std::to_string(n) + ",R)", basis, md);
}

StructureConstantsQ su_pq(int p, int q) {
    if (p < q || q < 0 || p + q < 2)
        throw InvalidArgument("su_pq: need p >= q >= 0 and p + q >= 2 (got p=" + std::to_string(p) +
                              ", q=" + std::to_string(q) + ")");
    const int n = p + q;
    auto eta = [&](int j) { return j < p ? 1 : -1; };
    const MatQ zero = MatQ::Zero(n, n);
    std::vector<MatQ> basis;
    for (int j = 0; j + 1 < n; ++j) basis.push_back(complex_block(zero, unit(n, j, j) - unit(n, j + 1, j + 1)));
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            const int s = eta(j) * eta(k);
            basis.push_back(complex_block(unit(n, j, k) - s * unit(n, k, j), zero));
            basis.push_back(complex_block(zero, unit(n, j, k) + s * unit(n, k, j)));
        }
    nlohmann::json md = {{"family", "su"}, {"p", p}, {"q", q}, {"kind", "real-a"}, {"complex_type", "A"},
                         {"complex_rank", n - 1}};
    return from_matrix_basis("su(" + std::to_string(p) + "," + std::to_string(q) + ")", basis, md);
}

StructureConstantsQ sl_quaternion(int m) {
    if (m < 1) throw InvalidArgument("sl_quaternion: m must be >= 1 (got " + std::to_string(m) + ")");
    std::vector<MatQ> basis;
    for (int j = 0; j + 1 < m; ++j) basis.push_back(quaternion_entry(m, j, j, 0) - quaternion_entry(m, j + 1, j + 1, 0));
    for (int j = 0; j < m; ++j)
        for (int u = 1; u < 4; ++u) basis.push_back(quaternion_entry(m, j, j, u));
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
            if (j != k)
                for (int u = 0; u < 4; ++u) basis.push_back(quaternion_entry(m, j, k, u));
    nlohmann::json md = {{"family", "sl-quat"}, {"m", m}, {"kind", "real-a"}, {"complex_type", "A"},
                         {"complex_rank", 2 * m - 1}};
    return from_matrix_basis("sl(" + std::to_string(m) + ",H)", basis, md);
}

StructureConstantsQ su2_cyclic() {
    std::vector<BracketEntry<Rational>> e = {{0, 1, 2, 1}, {1, 2, 0, 1}, {0, 2, 1, -1}};
    nlohmann::json md = {{"family", "su"}, {"p", 2}, {"q", 0}, {"kind", "real-a"}, {"complex_type", "A"},
                         {"complex_rank", 1}, {"basis", "cyclic"}};
    return StructureConstantsQ::build("su(2)", 3, e, md);
}

Realification realify(const StructureConstantsQ& sc) {
    const auto& md = sc.metadata();
    if (!md.contains("complex_basis") || !md["complex_basis"].get<bool>())
        throw InvalidArgument("realify: '" + sc.name() + "' is not tagged as a complex algebra in a complex basis");
    const int d = sc.dim();
    std::vector<BracketEntry<Rational>> out;
    for (const auto& e : sc.entries()) {
        out.push_back({e.i, e.j, e.k, e.value});                 // [e_a, e_b] = c e_k
        out.push_back({e.i, d + e.j, d + e.k, e.value});         // [e_a, f_b] = c f_k
        out.push_back({d + e.i, e.j, d + e.k, e.value});         // [f_a, e_b] = c f_k
        out.push_back({d + e.i, d + e.j, e.k, Rational(-e.value)}); // [f_a, f_b] = -c e_k
    }
    nlohmann::json m = {{"family", "realified"}, {"kind", "realified"}, {"complex_basis", false},
                        {"parent", sc.name()}, {"parent_metadata", md}};
    Realification r;
    r.algebra = StructureConstantsQ::build(sc.name() + "_R", 2 * d, out, m);
    r.complex_structure.matrix = MatQ::Zero(2 * d, 2 * d);
    for (int a = 0; a < d; ++a) {
        r.complex_structure.matrix(d + a, a) = 1;  // e_a -> f_a
        r.complex_structure.matrix(a, d + a) = -1; // f_a -> -e_a
    }
    r.complex_structure.parent = r.algebra.name();
    return r;
}

StructureConstantsQ direct_sum(const std::vector<StructureConstantsQ>& parts) {
    if (parts.empty()) throw InvalidArgument("direct_sum: empty list");
    if (parts.size() == 1) return parts.front();
    std::vector<BracketEntry<Rational>> out;
    nlohmann::json blocks = nlohmann::json::array();
    nlohmann::json summands = nlohmann::json::array();
    std::string name;
    int offset = 0;
    for (const auto& p : parts) {
        for (const auto& e : p.entries()) out.push_back({offset + e.i, offset + e.j, offset + e.k, e.value});
        blocks.push_back({offset, p.dim()});
        summands.push_back(p.metadata());
        name += (name.empty() ? "" : "+") + p.name();
        offset += p.dim();
    }
    nlohmann::json md = {{"family", "sum"}, {"kind", "sum"}, {"blocks", blocks}, {"summands", summands}};
    return StructureConstantsQ::build(name, offset, out, md);
}

MatQ random_basis_change(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    for (;;) {
        MatQ p(dim, dim);
        for (int c = 0; c < dim; ++c)
            for (int r = 0; r < dim; ++r) p(r, c) = Rational(num(rng), den(rng));
        if (rank(p) == dim) return p;
    }
}

MatQ random_symmetric_form(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    MatQ s(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) s(i, j) = s(j, i) = Rational(num(rng), den(rng));
    return s;
}

} // namespace liecurv
