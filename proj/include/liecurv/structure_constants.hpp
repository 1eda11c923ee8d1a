#pragma once

#include "liecurv/scalar.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace liecurv {

template <class S>
using SparseVec = std::vector<std::pair<int, S>>;

/// C_ij^k with i < j; the (j, i) component is implied by antisymmetry.
template <class S>
struct BracketEntry {
    int i;
    int j;
    int k;
    S value;

    bool operator==(const BracketEntry&) const = default;
};

/// A real Lie algebra in a fixed basis, stored as a sparse rank-(2,1) tensor.
///
/// Immutable once built; `build` canonicalizes (orients i < j, merges duplicate
/// entries, drops zeros) and indexes the bracket table so that [e_i, e_j] is
/// an O(1) lookup.
template <class S>
class StructureConstants {
  public:
    using Scalar = S;
    using Entry = BracketEntry<S>;

    StructureConstants() = default;

    static StructureConstants build(std::string name, int dim, const std::vector<Entry>& raw,
                                    nlohmann::json metadata = nlohmann::json::object()) {
        StructureConstants sc;
        sc.name_ = std::move(name);
        sc.dim_ = dim;
        sc.metadata_ = std::move(metadata);
        std::map<std::tuple<int, int, int>, S> acc;
        for (const auto& e : raw) {
            if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= dim || e.j >= dim || e.k >= dim)
                throw InvalidArgument("structure constant index out of range");
            if (e.i == e.j) {
                if (!is_zero(e.value)) throw InvalidArgument("nonzero diagonal bracket [e_i, e_i]");
                continue;
            }
            if (e.i < e.j)
                acc[{e.i, e.j, e.k}] += e.value;
            else
                acc[{e.j, e.i, e.k}] -= e.value;
        }
        for (auto& [key, v] : acc)
            if (!is_zero(v)) sc.entries_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
        sc.index();
        return sc;
    }

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const std::vector<Entry>& entries() const { return entries_; }
    const nlohmann::json& metadata() const { return metadata_; }

    StructureConstants with_name(std::string name) const {
        auto out = *this;
        out.name_ = std::move(name);
        return out;
    }
    StructureConstants with_metadata(nlohmann::json md) const {
        auto out = *this;
        out.metadata_ = std::move(md);
        return out;
    }

    /// [e_i, e_j] as a sparse vector sorted by index.
    const SparseVec<S>& bracket(int i, int j) const { return table_[static_cast<std::size_t>(i) * dim_ + j]; }

    /// C_ij^k for any ordered pair.
    S coefficient(int i, int j, int k) const {
        for (const auto& [kk, v] : bracket(i, j))
            if (kk == k) return v;
        return S(0);
    }

    /// All (i, j, value) with C_ij^k != 0 over ordered pairs (both orientations).
    const std::vector<std::tuple<int, int, S>>& with_output(int k) const { return by_output_[k]; }

    /// Number of stored (i < j) entries.
    std::size_t nnz() const { return entries_.size(); }

    template <class T>
    StructureConstants<T> cast() const {
        std::vector<BracketEntry<T>> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back({e.i, e.j, e.k, scalar_cast<T>(e.value)});
        return StructureConstants<T>::build(name_, dim_, out, metadata_);
    }

    /// Same tensor scaled by r (the bracket r[., .]).
    StructureConstants scaled(const S& r) const {
        auto raw = entries_;
        for (auto& e : raw) e.value *= r;
        return build(name_, dim_, raw, metadata_);
    }

    bool same_tensor(const StructureConstants& other) const {
        if (dim_ != other.dim_ || entries_.size() != other.entries_.size()) return false;
        for (std::size_t n = 0; n < entries_.size(); ++n) {
            const auto &a = entries_[n], &b = other.entries_[n];
            if (a.i != b.i || a.j != b.j || a.k != b.k || a.value != b.value) return false;
        }
        return true;
    }

  private:
    void index() {
        table_.assign(static_cast<std::size_t>(dim_) * dim_, {});
        by_output_.assign(dim_, {});
        for (const auto& e : entries_) {
            table_[static_cast<std::size_t>(e.i) * dim_ + e.j].emplace_back(e.k, e.value);
            table_[static_cast<std::size_t>(e.j) * dim_ + e.i].emplace_back(e.k, S(-e.value));
            by_output_[e.k].emplace_back(e.i, e.j, e.value);
            by_output_[e.k].emplace_back(e.j, e.i, S(-e.value));
        }
        for (auto& v : table_) std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    }

    std::string name_;
    int dim_ = 0;
    std::vector<Entry> entries_;
    nlohmann::json metadata_ = nlohmann::json::object();
    std::vector<SparseVec<S>> table_;
    std::vector<std::vector<std::tuple<int, int, S>>> by_output_;
};

using StructureConstantsQ = StructureConstants<Rational>;
using StructureConstantsD = StructureConstants<double>;

/// Violations of C_ij^q C_qk^l + C_jk^q C_qi^l + C_ki^q C_qj^l = 0.
struct JacobiViolation {
    int i, j, k, l;
    double value;
};

struct JacobiReport {
    std::vector<JacobiViolation> violations; ///< truncated to `max_listed`
    std::size_t violation_count = 0;
    double max_residual = 0.0;
    bool all_integer = true;

    bool ok() const { return violation_count == 0; }
};

namespace detail {
template <class S>
void add_bracket_of(const StructureConstants<S>& sc, const SparseVec<S>& x, int k, std::vector<S>& out,
                    std::vector<int>& touched, std::vector<char>& mark) {
    // out += [x, e_k]
    for (const auto& [q, xq] : x)
        for (const auto& [l, c] : sc.bracket(q, k)) {
            if (!mark[l]) {
                mark[l] = 1;
                touched.push_back(l);
            }
            out[l] += xq * c;
        }
}
} // namespace detail

/// Evaluates the Jacobi identity over all i < j < k (sufficient by total
/// antisymmetry of the Jacobiator). Exact zero test on rationals; on floats a
/// violation is any |residual| > tol.
template <class S>
JacobiReport verify_jacobi(const StructureConstants<S>& sc, double tol = 1e-10, std::size_t max_listed = 50) {
    JacobiReport rep;
    const int d = sc.dim();
    if constexpr (is_exact_v<S>) {
        for (const auto& e : sc.entries())
            if (!is_integer(e.value)) rep.all_integer = false;
        if (!rep.all_integer) {
            // integer multiple; the Jacobiator scales by l^2
            boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off> l = 1;
            for (const auto& e : sc.entries()) l = boost::multiprecision::lcm(l, decltype(l)(boost::multiprecision::denominator(e.value)));
            JacobiReport scaled = verify_jacobi(sc.scaled(S(l)), tol, max_listed);
            const double f = 1.0 / (to_double(S(l)) * to_double(S(l)));
            scaled.all_integer = false;
            scaled.max_residual *= f;
            for (auto& v : scaled.violations) v.value *= f;
            return scaled;
        }
    }
    std::vector<S> acc(d, S(0));
    std::vector<int> touched;
    std::vector<char> mark(d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                detail::add_bracket_of(sc, sc.bracket(i, j), k, acc, touched, mark);
                detail::add_bracket_of(sc, sc.bracket(j, k), i, acc, touched, mark);
                detail::add_bracket_of(sc, sc.bracket(k, i), j, acc, touched, mark);
                std::sort(touched.begin(), touched.end());
                for (int l : touched) {
                    const S& v = acc[l];
                    const double a = std::abs(to_double(v));
                    const bool bad = is_exact_v<S> ? !is_zero(v) : a > tol;
                    rep.max_residual = std::max(rep.max_residual, a);
                    if (bad) {
                        ++rep.violation_count;
                        if (rep.violations.size() < max_listed) rep.violations.push_back({i, j, k, l, to_double(v)});
                    }
                    acc[l] = S(0);
                    mark[l] = 0;
                }
                touched.clear();
            }
    return rep;
}

} // namespace liecurv
