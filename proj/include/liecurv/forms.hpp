#pragma once

#include "liecurv/scalar.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace liecurv {

/// Sorts `idx` ascending in place; returns the permutation sign, or 0 when an
/// index repeats.
template <std::size_t N>
int sort_with_sign(std::array<int, N>& idx) {
    int sign = 1;
    for (std::size_t a = 1; a < N; ++a)
        for (std::size_t b = a; b > 0 && idx[b - 1] >= idx[b]; --b) {
            if (idx[b - 1] == idx[b]) return 0;
            std::swap(idx[b - 1], idx[b]);
            sign = -sign;
        }
    for (std::size_t a = 1; a < N; ++a)
        if (idx[a - 1] == idx[a]) return 0;
    return sign;
}

/// Exterior N-form stored sparsely by strictly increasing index tuples;
/// values at other orderings follow from the permutation sign.
template <class S, std::size_t N>
class AlternatingForm {
  public:
    using Index = std::array<int, N>;

    AlternatingForm() = default;
    explicit AlternatingForm(int dim) : dim_(dim) {}

    int dim() const { return dim_; }

    S get(Index idx) const {
        const int s = sort_with_sign(idx);
        if (s == 0) return S(0);
        auto it = data_.find(key(idx));
        if (it == data_.end()) return S(0);
        return s > 0 ? it->second : S(-it->second);
    }

    /// value at `idx` (any order) += v, respecting antisymmetry.
    void add(Index idx, const S& v) {
        const int s = sort_with_sign(idx);
        if (s == 0 || is_zero(v)) return;
        auto& slot = data_[key(idx)];
        if (s > 0)
            slot += v;
        else
            slot -= v;
    }

    void set_sorted(const Index& idx, const S& v) { data_[key(idx)] = v; }

    /// Sorted (index, value) list with zeros removed.
    std::vector<std::pair<Index, S>> entries() const {
        std::vector<std::pair<Index, S>> out;
        out.reserve(data_.size());
        for (const auto& [k, v] : data_)
            if (!is_zero(v)) out.emplace_back(unkey(k), v);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& kv : data_)
            if (!is_zero(kv.second)) ++n;
        return n;
    }

    bool is_zero_form() const { return nnz() == 0; }

    double max_abs() const {
        double m = 0;
        for (const auto& kv : data_) m = std::max(m, std::abs(to_double(kv.second)));
        return m;
    }

    AlternatingForm& operator+=(const AlternatingForm& o) {
        for (const auto& [k, v] : o.data_) data_[k] += v;
        return *this;
    }
    AlternatingForm& operator*=(const S& r) {
        for (auto& kv : data_) kv.second *= r;
        return *this;
    }
    friend AlternatingForm operator+(AlternatingForm a, const AlternatingForm& b) { return a += b; }
    friend AlternatingForm operator-(AlternatingForm a, const AlternatingForm& b) {
        for (const auto& [k, v] : b.data_) a.data_[k] -= v;
        return a;
    }
    friend AlternatingForm operator*(const S& r, AlternatingForm a) { return a *= r; }

    bool operator==(const AlternatingForm& o) const { return dim_ == o.dim_ && entries() == o.entries(); }

    /// Raw storage access for kernels that iterate every stored tuple.
    template <class F>
    void for_each(F&& f) const {
        for (const auto& [k, v] : data_)
            if (!is_zero(v)) f(unkey(k), v);
    }

  private:
    static std::uint64_t key(const Index& idx) {
        std::uint64_t k = 0;
        for (int x : idx) k = (k << 16) | static_cast<std::uint64_t>(x);
        return k;
    }
    static Index unkey(std::uint64_t k) {
        Index idx{};
        for (std::size_t a = N; a-- > 0;) {
            idx[a] = static_cast<int>(k & 0xffff);
            k >>= 16;
        }
        return idx;
    }

    int dim_ = 0;
    std::unordered_map<std::uint64_t, S> data_;
};

template <class S>
using ThreeForm = AlternatingForm<S, 3>;
template <class S>
using FourForm = AlternatingForm<S, 4>;

/// Symmetric bilinear forms and endomorphisms are dense d x d matrices.
template <class S>
using SymmetricForm = Mat<S>;
template <class S>
using Endomorphism = Mat<S>;

/// Canonical basis of symmetric 2-tensors: pairs (i, j), i <= j, row-major
/// over the upper triangle. The basis form for (i, j) has entries
/// sigma_ij = sigma_ji = 1, so coordinates equal tensor components.
struct Sym2Index {
    int dim = 0;

    int size() const { return dim * (dim + 1) / 2; }
    int operator()(int i, int j) const {
        if (i > j) std::swap(i, j);
        return i * dim - i * (i - 1) / 2 + (j - i);
    }
    std::pair<int, int> pair(int n) const {
        int i = 0;
        while (n >= dim - i) {
            n -= dim - i;
            ++i;
        }
        return {i, i + n};
    }
};

template <class S>
Vec<S> sym2_coordinates(const SymmetricForm<S>& sigma) {
    const int d = static_cast<int>(sigma.rows());
    Sym2Index ix{d};
    Vec<S> v(ix.size());
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) v(ix(i, j)) = sigma(i, j);
    return v;
}

template <class S>
SymmetricForm<S> sym2_form(const Vec<S>& coords, int d) {
    Sym2Index ix{d};
    SymmetricForm<S> s(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) s(i, j) = s(j, i) = coords(ix(i, j));
    return s;
}

template <class S>
SymmetricForm<S> sym2_basis_form(int d, int i, int j) {
    SymmetricForm<S> s = SymmetricForm<S>::Zero(d, d);
    s(i, j) = s(j, i) = S(1);
    return s;
}

template <class S>
bool is_symmetric(const Mat<S>& m) {
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

} // namespace liecurv
