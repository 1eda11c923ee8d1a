#include "liecurv/chevalley.hpp"

#include <map>
#include <stdexcept>

namespace liecurv {

namespace {

RootVector negate(RootVector v) {
    for (auto& x : v) x = -x;
    return v;
}

RootVector add(const RootVector& a, const RootVector& b) {
    RootVector s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return s;
}

bool is_positive(const RootVector& v) {
    for (int x : v)
        if (x < 0) return false;
    return true;
}

/// Structure constants N_{a,b} for arbitrary roots, driven by the stored
/// values on special pairs of positive roots.
class ChevalleyConstants {
  public:
    explicit ChevalleyConstants(const RootSystem& rs) : rs_(rs) { compute(); }

    bool is_root(const RootVector& v) const {
        if (rs_.find(v) >= 0) return true;
        return rs_.find(negate(v)) >= 0;
    }

    int norm(const RootVector& v) const { return rs_.inner(v, v); }

    /// Largest p with b - p a a root.
    int string_below(const RootVector& a, const RootVector& b) const {
        int p = 0;
        RootVector cur = b;
        while (true) {
            for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= a[i];
            if (!is_root(cur)) return p;
            ++p;
        }
    }

    Rational n(const RootVector& a, const RootVector& b) const {
        const RootVector s = add(a, b);
        if (!is_root(s)) return 0;
        const bool pa = is_positive(a), pb = is_positive(b);
        if (pa && pb) {
            const int ia = rs_.find(a), ib = rs_.find(b);
            if (ia < ib) return special_.at({ia, ib});
            return -special_.at({ib, ia});
        }
        if (!pa && !pb) return -n(negate(a), negate(b));
        if (!pa) return -n(b, a);
        // a > 0, b < 0; g = -(a + b)
        const RootVector g = negate(s);
        if (is_positive(s)) return Rational(norm(g), norm(a)) * n(b, g);
        return Rational(norm(g), norm(b)) * n(g, a);
    }

  private:
    void compute() {
        const int np = rs_.num_positive();
        for (int x = 0; x < np; ++x) {
            const RootVector& xi = rs_.positive_roots[x];
            int ex_a = -1, ex_b = -1;
            Rational n_ex = 0;
            for (int a = 0; a < x; ++a) {
                RootVector rest = xi;
                for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= rs_.positive_roots[a][i];
                const int b = rs_.find(rest);
                if (b < 0 || b <= a) continue;
                const RootVector& alpha = rs_.positive_roots[a];
                const RootVector& beta = rs_.positive_roots[b];
                const int p = string_below(alpha, beta);
                if (ex_a < 0) {
                    ex_a = a;
                    ex_b = b;
                    n_ex = p + 1;
                    special_[{a, b}] = n_ex;
                    continue;
                }
                const RootVector& a1 = rs_.positive_roots[ex_a];
                const RootVector& b1 = rs_.positive_roots[ex_b];
                Rational bracket = 0;
                const RootVector bm = add(beta, negate(a1));
                if (is_root(bm)) bracket += n(beta, negate(a1)) * n(alpha, negate(b1)) / norm(bm);
                const RootVector am = add(alpha, negate(a1));
                if (is_root(am)) bracket += n(negate(a1), alpha) * n(beta, negate(b1)) / norm(am);
                const Rational value = Rational(norm(xi)) / n_ex * bracket;
                if (value != p + 1 && value != -(p + 1))
                    throw std::logic_error("chevalley: inconsistent structure constant for " + rs_.cartan.label());
                special_[{a, b}] = value;
            }
        }
    }

    const RootSystem& rs_;
    std::map<std::pair<int, int>, Rational> special_;
};

} // namespace

StructureConstantsQ chevalley_basis(const RootSystem& rs) {
    const int r = rs.rank();
    const int np = rs.num_positive();
    const int d = r + 2 * np;
    ChevalleyConstants nc(rs);

    // Signed roots by basis index.
    std::vector<RootVector> root_of(d);
    for (int k = 0; k < np; ++k) {
        root_of[r + k] = rs.positive_roots[k];
        root_of[r + np + k] = negate(rs.positive_roots[k]);
    }
    auto basis_index = [&](const RootVector& v) {
        int k = rs.find(v);
        if (k >= 0) return r + k;
        k = rs.find(negate(v));
        return k >= 0 ? r + np + k : -1;
    };

    std::vector<BracketEntry<Rational>> entries;
    // [h_i, x_beta] = <beta, alpha_i^vee> x_beta
    for (int i = 0; i < r; ++i)
        for (int b = r; b < d; ++b) {
            const int c = rs.coroot_pairing(root_of[b], i);
            if (c != 0) entries.push_back({i, b, b, Rational(c)});
        }
    // [x_beta, x_-beta] = h_beta = sum_j beta_j |alpha_j|^2 / |beta|^2 h_j
    for (int k = 0; k < np; ++k) {
        const RootVector& beta = rs.positive_roots[k];
        const int len = rs.inner(beta, beta);
        for (int j = 0; j < r; ++j)
            if (beta[j] != 0) {
                Rational c(beta[j] * rs.simple_lengths[j], len);
                if (!is_integer(c)) throw std::logic_error("chevalley: non-integral coroot expansion");
                entries.push_back({r + k, r + np + k, j, c});
            }
    }
    // [x_a, x_b] = N_{a,b} x_{a+b}
    for (int a = r; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            const RootVector s = add(root_of[a], root_of[b]);
            const int target = basis_index(s);
            if (target < 0) continue;
            entries.push_back({a, b, target, nc.n(root_of[a], root_of[b])});
        }

    nlohmann::json md = {{"family", std::string(1, rs.cartan.family)},
                         {"rank", r},
                         {"kind", "split"},
                         {"complex_basis", true}};
    return StructureConstantsQ::build(rs.cartan.label(), d, entries, md);
}

StructureConstantsQ chevalley_algebra(char family, int rank) {
    return chevalley_basis(generate_positive_roots(cartan_matrix(family, rank)));
}

} // namespace liecurv
