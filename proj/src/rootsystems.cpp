#include "liecurv/rootsystems.hpp"

#include "liecurv/scalar.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace liecurv {

namespace {

bool valid_type(char family, int n) {
    switch (family) {
    case 'A': return n >= 1;
    case 'B': return n >= 2;
    case 'C': return n >= 3;
    case 'D': return n >= 4;
    case 'E': return n >= 6 && n <= 8;
    case 'F': return n == 4;
    case 'G': return n == 2;
    default: return false;
    }
}

// Squared lengths from the symmetrization a(i,j) d_j = a(j,i) d_i.
std::vector<int> symmetrize(const Eigen::MatrixXi& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<Rational> len(n, Rational(0));
    len[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < n; ++j)
            if (j != i && a(i, j) != 0 && len[j] == 0) {
                len[j] = len[i] * a(j, i) / a(i, j);
                stack.push_back(j);
            }
    }
    Rational smallest = *std::min_element(len.begin(), len.end());
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) {
        Rational v = 2 * len[i] / smallest;
        out[i] = static_cast<int>(boost::multiprecision::numerator(v));
    }
    return out;
}

} // namespace

int root_height(const RootVector& v) { return std::accumulate(v.begin(), v.end(), 0); }

CartanMatrix cartan_matrix(char family, int n) {
    if (!valid_type(family, n))
        throw InvalidArgument("invalid Cartan type (" + std::string(1, family) + ", " + std::to_string(n) + ")");
    CartanMatrix cm;
    cm.family = family;
    cm.rank = n;
    Eigen::MatrixXi a = 2 * Eigen::MatrixXi::Identity(n, n);
    auto link = [&](int i, int j) { a(i, j) = a(j, i) = -1; };
    switch (family) {
    case 'A':
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        break;
    case 'B':
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        a(n - 2, n - 1) = -2; // alpha_n short
        break;
    case 'C':
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        a(n - 1, n - 2) = -2; // alpha_n long
        break;
    case 'D':
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(n - 3, n - 1);
        break;
    case 'E':
        // Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4.
        link(0, 2);
        link(1, 3);
        for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
        break;
    case 'F':
        link(0, 1);
        link(2, 3);
        a(1, 2) = -2;
        a(2, 1) = -1;
        break;
    case 'G':
        a(0, 1) = -1;
        a(1, 0) = -3;
        break;
    }
    cm.entries = a;
    return cm;
}

int RootSystem::inner(const RootVector& a, const RootVector& b) const {
    // (alpha_i, alpha_j) = a(i,j) * d_j / 2
    const auto& c = cartan.entries;
    int s = 0;
    for (int i = 0; i < rank(); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < rank(); ++j)
            if (b[j] != 0) s += a[i] * b[j] * c(i, j) * simple_lengths[j];
    }
    return s / 2;
}

int RootSystem::coroot_pairing(const RootVector& beta, int i) const {
    int s = 0;
    for (int j = 0; j < rank(); ++j) s += beta[j] * cartan.entries(j, i);
    return s;
}

RootSystem generate_positive_roots(const CartanMatrix& cartan) {
    RootSystem rs;
    rs.cartan = cartan;
    rs.simple_lengths = symmetrize(cartan.entries);
    const int n = cartan.rank;

    std::set<RootVector> known;
    std::vector<RootVector> layer;
    for (int i = 0; i < n; ++i) {
        RootVector v(n, 0);
        v[i] = 1;
        known.insert(v);
        layer.push_back(v);
    }
    // Height-by-height closure under the root-string rule.
    while (!layer.empty()) {
        std::set<RootVector> next;
        for (const auto& beta : layer) {
            for (int i = 0; i < n; ++i) {
                int p = 0;
                RootVector down = beta;
                while (true) {
                    down[i] -= 1;
                    if (!known.count(down)) break;
                    ++p;
                }
                int pairing = 0;
                for (int j = 0; j < n; ++j) pairing += beta[j] * cartan.entries(j, i);
                if (p - pairing > 0) {
                    RootVector up = beta;
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer.clear();
        for (const auto& v : next)
            if (known.insert(v).second) layer.push_back(v);
    }

    rs.positive_roots.assign(known.begin(), known.end());
    std::stable_sort(rs.positive_roots.begin(), rs.positive_roots.end(), [](const RootVector& a, const RootVector& b) {
        int ha = root_height(a), hb = root_height(b);
        if (ha != hb) return ha < hb;
        // Simple roots first in node order: reverse lexicographic puts e_1 before e_2.
        return a > b;
    });
    for (int k = 0; k < rs.num_positive(); ++k) rs.root_index[rs.positive_roots[k]] = k;
    return rs;
}

int algebra_dimension(const RootSystem& rs) { return rs.rank() + 2 * rs.num_positive(); }

} // namespace liecurv
