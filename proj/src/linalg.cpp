#include "liecurv/linalg.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace liecurv {

namespace {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using u64 = std::uint64_t;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    for (; e; e >>= 1, a = mul_mod(a, a, p))
        if (e & 1) r = mul_mod(r, a, p);
    return r;
}

u64 reduce(const Integer& x, u64 p) {
    Integer r = x % Integer(p);
    if (r < 0) r += Integer(p);
    return r.convert_to<u64>();
}

class PrimeStream {
  public:
    u64 next() {
        do {
            candidate_ -= 2;
        } while (!boost::multiprecision::miller_rabin_test(Integer(candidate_), 25));
        return candidate_;
    }

  private:
    u64 candidate_ = (u64{1} << 62) + 1;
};

struct IntRow {
    std::vector<std::pair<int, Integer>> entries;
};

struct ModularRref {
    std::vector<int> pivots;              // pivot column per row, increasing
    std::vector<std::vector<u64>> rows;   // dense reduced rows
    std::vector<int> sources;             // input rows that raised the rank
};

ModularRref rref_mod(const std::vector<IntRow>& rows, int ncols, u64 p) {
    ModularRref out;
    std::vector<int> row_of_pivot(ncols, -1);
    std::vector<u64> v(ncols);
    for (std::size_t src = 0; src < rows.size(); ++src) {
        const auto& row = rows[src];
        std::fill(v.begin(), v.end(), 0);
        for (const auto& [c, x] : row.entries) v[c] = reduce(x, p);
        for (int c = 0; c < ncols; ++c) {
            if (v[c] == 0 || row_of_pivot[c] < 0) continue;
            const auto& pr = out.rows[row_of_pivot[c]];
            const u64 f = p - v[c];
            for (int k = c; k < ncols; ++k)
                if (pr[k]) v[k] = (v[k] + mul_mod(f, pr[k], p)) % p;
        }
        int lead = -1;
        for (int c = 0; c < ncols && lead < 0; ++c)
            if (v[c]) lead = c;
        if (lead < 0) continue;
        const u64 inv = pow_mod(v[lead], p - 2, p);
        for (int k = lead; k < ncols; ++k) v[k] = mul_mod(v[k], inv, p);
        for (auto& other : out.rows) {
            if (other[lead] == 0) continue;
            const u64 f = p - other[lead];
            for (int k = lead; k < ncols; ++k)
                if (v[k]) other[k] = (other[k] + mul_mod(f, v[k], p)) % p;
        }
        row_of_pivot[lead] = static_cast<int>(out.rows.size());
        out.rows.push_back(v);
        out.pivots.push_back(lead);
        out.sources.push_back(static_cast<int>(src));
        if (static_cast<int>(out.rows.size()) == ncols) break;
    }
    // order rows by pivot column
    std::vector<int> order(out.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return out.pivots[a] < out.pivots[b]; });
    ModularRref sorted;
    sorted.sources = out.sources;
    for (int i : order) {
        sorted.pivots.push_back(out.pivots[i]);
        sorted.rows.push_back(std::move(out.rows[i]));
    }
    return sorted;
}

std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
    const Integer bound = boost::multiprecision::sqrt(m / 2);
    Integer r0 = m, r1 = a, t0 = 0, t1 = 1;
    while (r1 > bound) {
        const Integer q = r0 / r1;
        Integer tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0 || boost::multiprecision::abs(t1) > bound) return std::nullopt;
    if (boost::multiprecision::gcd(r1, t1) != 1) return std::nullopt;
    return Rational(r1) / Rational(t1);
}

/// Exact test rows * ker == 0, with each kernel column scaled to integers.
bool kills(const std::vector<IntRow>& rows, const MatQ& ker) {
    for (Eigen::Index c = 0; c < ker.cols(); ++c) {
        Integer l = 1;
        for (Eigen::Index r = 0; r < ker.rows(); ++r)
            l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(ker(r, c))));
        std::vector<Integer> col(ker.rows());
        for (Eigen::Index r = 0; r < ker.rows(); ++r)
            col[r] = boost::multiprecision::numerator(ker(r, c)) * (l / boost::multiprecision::denominator(ker(r, c)));
        Integer acc;
        for (const auto& row : rows) {
            acc = 0;
            for (const auto& [j, x] : row.entries)
                if (col[j] != 0) acc += x * col[j];
            if (acc != 0) return false;
        }
    }
    return true;
}

} // namespace

MatQ modular_nullspace(const SpMat<Rational>& m) {
    const int ncols = static_cast<int>(m.cols());
    const Eigen::SparseMatrix<Rational, Eigen::RowMajor> rm(m);
    std::vector<IntRow> rows;
    for (Eigen::Index r = 0; r < rm.outerSize(); ++r) {
        Integer l = 1;
        for (Eigen::SparseMatrix<Rational, Eigen::RowMajor>::InnerIterator it(rm, r); it; ++it)
            l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(it.value())));
        IntRow row;
        for (Eigen::SparseMatrix<Rational, Eigen::RowMajor>::InnerIterator it(rm, r); it; ++it)
            if (it.value() != 0)
                row.entries.emplace_back(static_cast<int>(it.col()),
                                         Integer(boost::multiprecision::numerator(it.value()) *
                                                 (l / boost::multiprecision::denominator(it.value()))));
        if (!row.entries.empty()) rows.push_back(std::move(row));
    }

    PrimeStream primes;
    std::vector<int> pivots;
    std::vector<int> free_cols;
    std::vector<Integer> residues; // entry (i, f) at i * free + f: -R(i, free_cols[f])
    Integer modulus = 0;
    std::vector<IntRow> basis_rows; // rows found independent by the first prime
    MatQ previous;
    for (int round = 0; round < 400; ++round) {
        const u64 p = primes.next();
        const ModularRref red = rref_mod(round == 0 ? rows : basis_rows, ncols, p);
        if (round == 0)
            for (int src : red.sources) basis_rows.push_back(rows[src]);
        if (modulus != 0 && red.pivots != pivots) {
            if (red.pivots.size() < pivots.size() ||
                (red.pivots.size() == pivots.size() && red.pivots > pivots))
                continue; // unlucky prime
            modulus = 0;
        }
        if (modulus == 0) {
            pivots = red.pivots;
            free_cols.clear();
            std::vector<bool> is_pivot(ncols, false);
            for (int c : pivots) is_pivot[c] = true;
            for (int c = 0; c < ncols; ++c)
                if (!is_pivot[c]) free_cols.push_back(c);
            residues.assign(pivots.size() * free_cols.size(), Integer(0));
        }
        const std::size_t nf = free_cols.size();
        if (nf == 0) return MatQ(ncols, 0);
        if (modulus == 0) {
            for (std::size_t i = 0; i < pivots.size(); ++i)
                for (std::size_t f = 0; f < nf; ++f) residues[i * nf + f] = Integer((p - red.rows[i][free_cols[f]]) % p);
            modulus = p;
        } else {
            const u64 inv = pow_mod(reduce(modulus, p), p - 2, p);
            for (std::size_t i = 0; i < pivots.size(); ++i)
                for (std::size_t f = 0; f < nf; ++f) {
                    Integer& x = residues[i * nf + f];
                    const u64 target = (p - red.rows[i][free_cols[f]]) % p;
                    const u64 diff = (target + p - reduce(x, p)) % p;
                    x += modulus * Integer(mul_mod(diff, inv, p));
                }
            modulus *= p;
        }

        MatQ ker = MatQ::Zero(ncols, static_cast<Eigen::Index>(nf));
        bool ok = true;
        for (std::size_t f = 0; f < nf && ok; ++f) {
            ker(free_cols[f], f) = 1;
            for (std::size_t i = 0; i < pivots.size() && ok; ++i) {
                const Integer& x = residues[i * nf + f];
                if (x == 0) continue;
                const auto q = rational_reconstruct(x, modulus);
                if (!q) ok = false;
                else ker(pivots[i], f) = *q;
            }
        }
        if (!ok) continue;
        // the same reconstruction from two moduli before paying for the exact check
        if (ker.cols() != previous.cols() || ker.rows() != previous.rows() || ker != previous) {
            previous = ker;
            continue;
        }
        if (kills(rows, ker)) return ker;
        if (basis_rows.size() != rows.size()) {
            basis_rows = rows;
            modulus = 0;
        }
    }
    throw std::runtime_error("modular_nullspace: reconstruction did not converge");
}

MatQ exact_sparse_kernel(const SpMat<Rational>& m, int dense_limit) {
    const int ncols = static_cast<int>(m.cols());
    std::vector<int> parent(ncols);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const Eigen::SparseMatrix<Rational, Eigen::RowMajor> rm(m);
    for (Eigen::Index r = 0; r < rm.outerSize(); ++r) {
        int first = -1;
        for (Eigen::SparseMatrix<Rational, Eigen::RowMajor>::InnerIterator it(rm, r); it; ++it) {
            if (it.value() == 0) continue;
            const int c = static_cast<int>(it.col());
            if (first < 0) first = find(c);
            else parent[find(c)] = first;
        }
    }
    std::vector<std::vector<int>> groups;
    std::vector<int> group_of(ncols, -1);
    for (int c = 0; c < ncols; ++c) {
        const int root = find(c);
        if (group_of[root] < 0) {
            group_of[root] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[group_of[root]].push_back(c);
    }
    std::vector<std::vector<Eigen::Index>> rows_of(groups.size());
    for (Eigen::Index r = 0; r < rm.outerSize(); ++r)
        for (Eigen::SparseMatrix<Rational, Eigen::RowMajor>::InnerIterator it(rm, r); it; ++it)
            if (it.value() != 0) {
                rows_of[group_of[find(static_cast<int>(it.col()))]].push_back(r);
                break;
            }

    std::vector<Vec<Rational>> cols;
    std::vector<int> local(ncols, -1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& idx = groups[g];
        for (std::size_t a = 0; a < idx.size(); ++a) local[idx[a]] = static_cast<int>(a);
        const auto& rows = rows_of[g];
        MatQ ker;
        if (static_cast<int>(idx.size()) <= dense_limit) {
            MatQ sub = MatQ::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(idx.size()));
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (Eigen::SparseMatrix<Rational, Eigen::RowMajor>::InnerIterator it(rm, rows[i]); it; ++it)
                    sub(static_cast<Eigen::Index>(i), local[it.col()]) = it.value();
            ker = nullspace(sub);
        } else {
            std::vector<Eigen::Triplet<Rational>> trips;
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (Eigen::SparseMatrix<Rational, Eigen::RowMajor>::InnerIterator it(rm, rows[i]); it; ++it)
                    if (it.value() != 0) trips.emplace_back(static_cast<int>(i), local[it.col()], it.value());
            SpMat<Rational> sub(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(idx.size()));
            sub.setFromTriplets(trips.begin(), trips.end());
            ker = modular_nullspace(sub);
        }
        for (Eigen::Index c = 0; c < ker.cols(); ++c) {
            Vec<Rational> v = Vec<Rational>::Zero(ncols);
            for (std::size_t a = 0; a < idx.size(); ++a) v(idx[a]) = ker(static_cast<Eigen::Index>(a), c);
            cols.push_back(std::move(v));
        }
    }
    MatQ out(ncols, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = cols[c];
    return out;
}

} // namespace liecurv
