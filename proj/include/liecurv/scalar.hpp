#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace liecurv {

/// Exact rational scalar (GMP backed, expression templates off so it
/// behaves as a plain value type inside Eigen kernels).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using SpMat = Eigen::SparseMatrix<S>;

using MatQ = Mat<Rational>;
using MatD = Mat<double>;

// ---------------------------------------------------------------------------
// errors

/// Bad user input: invalid family/parameters, malformed files.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size cap would be exceeded.
class CapExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The input is well-formed but mathematically unsuitable
/// (degenerate Killing form, non-Cartan three-form, ...).
class MathRejection : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotSemisimple : public MathRejection {
  public:
    NotSemisimple(int dim, int rank)
        : MathRejection("Killing form is degenerate: rank " + std::to_string(rank) + " < dim " +
                        std::to_string(dim) + " (rank defect " + std::to_string(dim - rank) + ")"),
          dim_(dim), rank_(rank) {}
    int rank_defect() const { return dim_ - rank_; }

  private:
    int dim_;
    int rank_;
};

// ---------------------------------------------------------------------------
// scalar helpers

template <class S>
inline bool is_zero(const S& x) {
    if constexpr (is_exact_v<S>)
        return x == 0;
    else
        return x == 0.0;
}

template <class S>
inline double to_double(const S& x) {
    if constexpr (is_exact_v<S>)
        return x.template convert_to<double>();
    else
        return static_cast<double>(x);
}

template <class S>
inline S abs_value(const S& x) {
    if constexpr (is_exact_v<S>)
        return x < 0 ? S(-x) : x;
    else
        return std::abs(x);
}

template <class To, class From>
inline To scalar_cast(const From& x) {
    if constexpr (std::is_same_v<To, From>)
        return x;
    else if constexpr (is_exact_v<From>)
        return x.template convert_to<To>();
    else
        return To(x);
}

/// "p/q" (or "p" for integers).
inline std::string to_string(const Rational& x) { return x.str(); }

/// Shortest round-trip decimal.
inline std::string to_string(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Parses "p/q", "p", or a decimal literal like "-0.25" into an exact rational.
Rational parse_rational(const std::string& text);

inline bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

template <class To, class From>
Mat<To> cast_matrix(const Mat<From>& m) {
    Mat<To> out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) out(r, c) = scalar_cast<To>(m(r, c));
    return out;
}

/// Max absolute entry as a double (0 for empty matrices).
template <class S>
double max_abs(const Mat<S>& m) {
    double best = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) best = std::max(best, std::abs(to_double(m(r, c))));
    return best;
}

} // namespace liecurv
