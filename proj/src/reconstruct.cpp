#include "liecurv/reconstruct.hpp"

#include <complex>
#include <random>

namespace liecurv {

namespace {

// ---------------------------------------------------------------------------
// polynomials over Q, coefficient i multiplies t^i

using Poly = std::vector<Rational>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

Rational eval(const Poly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

MatQ eval(const Poly& p, const MatQ& a) {
    MatQ acc = MatQ::Zero(a.rows(), a.cols());
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = MatQ(acc * a);
        for (Eigen::Index i = 0; i < a.rows(); ++i) acc(i, i) += *it;
    }
    return acc;
}

/// Quotient of p by the monic divisor m; throws when the division is inexact.
Poly divide_exact(const Poly& p, const Poly& m) {
    Poly rem = p, q(p.size() >= m.size() ? p.size() - m.size() + 1 : 1, Rational(0));
    for (int k = static_cast<int>(p.size()) - static_cast<int>(m.size()); k >= 0; --k) {
        const Rational c = rem[k + m.size() - 1];
        q[k] = c;
        for (std::size_t i = 0; i < m.size(); ++i) rem[k + i] -= c * m[i];
    }
    for (std::size_t i = 0; i + 1 < m.size() && i < rem.size(); ++i)
        if (rem[i] != 0) throw std::logic_error("polynomial division is not exact");
    return q;
}

/// Minimal polynomial of a square matrix (monic), via the first dependency
/// among I, A, A^2, ...
Poly minimal_polynomial(const MatQ& a) {
    const Eigen::Index n = a.rows();
    std::vector<MatQ> powers{MatQ::Identity(n, n)};
    for (int k = 1; k <= n; ++k) {
        powers.push_back(MatQ(powers.back() * a));
        MatQ cols(n * n, k + 1);
        for (int j = 0; j <= k; ++j) cols.col(j) = powers[j].reshaped();
        const MatQ ker = nullspace(cols);
        if (ker.cols() == 0) continue;
        Poly p(k + 1);
        for (int j = 0; j <= k; ++j) p[j] = ker(j, 0) / ker(k, 0);
        return p;
    }
    throw std::logic_error("minimal_polynomial: no dependency found");
}

Rational floor_q(const Rational& x) {
    
    const Integer n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
    Integer q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return Rational(q);
}

/// Rational with the smallest denominator in the closed interval [a, b].
Rational simplest_between(const Rational& a, const Rational& b) {
    const Rational fl = floor_q(a);
    if (fl == a) return a;
    if (fl + 1 <= b) return fl + 1;
    return fl + 1 / simplest_between(1 / (b - fl), 1 / (a - fl));
}

/// Largest denominator a rational root of p can have: the leading coefficient
/// of p scaled to a primitive integer polynomial.
Rational root_denominator_bound(const Poly& p) {
    
    Integer l = 1;
    for (const auto& c : p) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(c)));
    Integer g = 0;
    for (const auto& c : p) {
        const Integer v = boost::multiprecision::numerator(c) * (l / boost::multiprecision::denominator(c));
        g = boost::multiprecision::gcd(g, v);
    }
    const Integer lead = boost::multiprecision::numerator(p.back()) * (l / boost::multiprecision::denominator(p.back()));
    return abs_value(Rational(lead / g));
}

std::vector<std::complex<double>> numeric_roots(const Poly& p) {
    const int n = static_cast<int>(p.size()) - 1;
    if (n < 1) return {};
    MatD comp = MatD::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -to_double(Rational(p[i] / p.back()));
    const Eigen::VectorXcd ev = Eigen::EigenSolver<MatD>(comp, false).eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

/// Exact rational root near the approximation r, if any.
std::optional<Rational> refine_rational_root(const Poly& p, double r) {
    const Rational bound = root_denominator_bound(p);
    const Rational target = 1 / (2 * bound * bound);
    for (double delta = 1e-6 * (1 + std::abs(r)); delta < 1e2 * (1 + std::abs(r)); delta *= 16) {
        Rational lo(r - delta), hi(r + delta);
        Rational flo = eval(p, lo), fhi = eval(p, hi);
        if (flo == 0) return lo;
        if (fhi == 0) return hi;
        if ((flo < 0) == (fhi < 0)) continue;
        while (hi - lo > target) {
            const Rational mid = (lo + hi) / 2;
            const Rational fm = eval(p, mid);
            if (fm == 0) return mid;
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        const Rational cand = simplest_between(lo, hi);
        if (eval(p, cand) == 0) return cand;
        return std::nullopt;
    }
    return std::nullopt;
}

/// Best rational approximation with denominator <= limit (continued fractions).
Rational approximate(double x, long long limit) {
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(v);
        if (std::abs(a) > 9e15) break;
        const long long ai = static_cast<long long>(a);
        const long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > limit || k2 <= 0) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::abs(v - a) < 1e-14) break;
        v = 1.0 / (v - a);
    }
    return Rational(h1, k1 == 0 ? 1 : k1);
}

/// Splits a squarefree polynomial whose irreducible factors have degree 1 or 2
/// into those factors (monic). Rational roots are exact; quadratic factors are
/// found numerically and confirmed by exact division.
std::optional<std::vector<Poly>> split_factors(Poly p) {
    for (auto& c : p) c /= Rational(p.back());
    std::vector<Poly> out;
    for (const auto& z : numeric_roots(p)) {
        if (std::abs(z.imag()) > 1e-6 * (1 + std::abs(z.real()))) continue;
        const auto r = refine_rational_root(p, z.real());
        if (!r) continue;
        const Poly lin{-*r, Rational(1)};
        bool dup = false;
        for (const auto& f : out) dup = dup || f == lin;
        if (dup) continue;
        p = divide_exact(p, lin);
        out.push_back(lin);
    }
    if (p.size() <= 1) return out;
    if (p.size() == 3) {
        out.push_back(p);
        return out;
    }
    for (const auto& z : numeric_roots(p)) {
        if (z.imag() <= 0) continue;
        const Poly quad{approximate(std::norm(z), 1000000), approximate(-2 * z.real(), 1000000), Rational(1)};
        try {
            p = divide_exact(p, quad);
        } catch (const std::logic_error&) {
            return std::nullopt;
        }
        out.push_back(quad);
    }
    if (p.size() != 1) return std::nullopt;
    return out;
}

// ---------------------------------------------------------------------------

MatQ left_annihilator(const MatQ& basis) {
    // rows y with y^T basis = 0
    return nullspace(MatQ(basis.transpose())).transpose();
}

std::vector<Summand> sort_summands(std::vector<Summand> s) {
    auto first_pivot = [](const MatQ& b) {
        for (Eigen::Index r = 0; r < b.rows(); ++r)
            if (b(r, 0) != 0) return r;
        return b.rows();
    };
    std::sort(s.begin(), s.end(), [&](const Summand& a, const Summand& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return first_pivot(a.basis) < first_pivot(b.basis);
    });
    return s;
}

[[noreturn]] void reject(const std::string& why) {
    throw MathRejection("input is not a semisimple Cartan 3-form: " + why);
}

MatQ random_combination(const std::vector<MatQ>& basis, std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> coef(lo, hi);
    MatQ m = MatQ::Zero(basis.front().rows(), basis.front().cols());
    for (const auto& b : basis) m += Rational(coef(rng)) * b;
    return m;
}

/// Generic nondegenerate kernel element, or nullopt after a few seeded tries.
std::optional<MatQ> generic_nondegenerate(const std::vector<MatQ>& kernel, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 12; ++attempt) {
        MatQ m = random_combination(kernel, rng, -5, 5);
        if (rank(m) == m.rows()) return m;
    }
    return std::nullopt;
}

/// Kernel elements nu with nu mu0^-1 commuting with every rho mu0^-1.
std::vector<MatQ> central_part(const std::vector<MatQ>& kernel, const MatQ& mu0_inv) {
    const int m = static_cast<int>(kernel.size());
    const Eigen::Index d = mu0_inv.rows();
    std::vector<MatQ> ops;
    for (const auto& k : kernel) ops.push_back(k * mu0_inv);
    MatQ eqs(m * d * d, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) eqs.block(b * d * d, a, d * d, 1) = MatQ(ops[a] * ops[b] - ops[b] * ops[a]).reshaped();
    const MatQ zc = nullspace(eqs);
    std::vector<MatQ> center;
    for (Eigen::Index c = 0; c < zc.cols(); ++c) {
        MatQ z = MatQ::Zero(d, d);
        for (int a = 0; a < m; ++a)
            if (zc(a, c) != 0) z += zc(a, c) * kernel[a];
        center.push_back(z);
    }
    return center;
}

struct CatalogEntry {
    std::string name;
    SpectrumTable table;
};

std::vector<CatalogEntry> catalog_for_dim(int dim) {
    std::vector<CatalogEntry> out;
    auto add_complex = [&](const std::string& name, int hdim, const SpectrumTable& t) {
        if (hdim == dim) out.push_back({"real form of " + name, t});
        if (2 * hdim == dim) out.push_back({name + " as a real algebra", real_form_spectrum(t, RealFormCase::B)});
    };
    for (int n = 2; n * n - 1 <= dim; ++n) add_complex("sl(" + std::to_string(n) + ",C)", n * n - 1, meyberg_table("sl", n));
    for (int n = 4; n * (n + 1) / 2 <= dim; n += 2)
        add_complex("sp(" + std::to_string(n) + ",C)", n * (n + 1) / 2, meyberg_table("sp", n));
    for (int n = 7; n * (n - 1) / 2 <= dim; ++n)
        add_complex("so(" + std::to_string(n) + ",C)", n * (n - 1) / 2, meyberg_table("so", n));
    for (const auto& [name, hdim] : std::vector<std::pair<std::string, int>>{{"g2", 14}, {"f4", 52}, {"e6", 78}, {"e7", 133}, {"e8", 248}})
        add_complex(name, hdim, meyberg_table(name));
    return out;
}

} // namespace

// ---------------------------------------------------------------------------

StructureConstantsQ threeform_as_bracket(const ThreeForm<Rational>& c3) {
    std::vector<BracketEntry<Rational>> e;
    for (const auto& [idx, v] : c3.entries()) {
        const int a = idx[0], b = idx[1], c = idx[2];
        e.push_back({a, b, c, v});
        e.push_back({a, c, b, Rational(-v)});
        e.push_back({b, c, a, v});
    }
    return StructureConstantsQ::build("threeform", c3.dim(), e, {{"kind", "threeform"}});
}

FourForm<Rational> phi(const ThreeForm<Rational>& c3, const MatQ& mu) {
    if (mu.rows() != c3.dim() || mu.cols() != c3.dim()) throw InvalidArgument("phi: dimension mismatch");
    return lambda_apply(threeform_as_bracket(c3), mu);
}

std::vector<MatQ> delta_kernel(const ThreeForm<Rational>& c3) {
    const int d = c3.dim();
    if (d < 4) return ker_lambda(threeform_as_bracket(c3)).basis;
    const MatQ ker = modular_nullspace(lambda_matrix(threeform_as_bracket(c3)));
    std::vector<MatQ> out;
    for (Eigen::Index c = 0; c < ker.cols(); ++c) out.push_back(sym2_form(Vec<Rational>(ker.col(c)), d));
    return out;
}

ThreeForm<Rational> restrict_threeform(const ThreeForm<Rational>& c3, const MatQ& basis) {
    if (basis.rows() != c3.dim()) throw InvalidArgument("restrict_threeform: dimension mismatch");
    const int k = static_cast<int>(basis.cols());
    ThreeForm<Rational> out(k);
    for (const auto& [idx, v] : c3.entries()) {
        const auto r0 = basis.row(idx[0]), r1 = basis.row(idx[1]), r2 = basis.row(idx[2]);
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                for (int c = b + 1; c < k; ++c) {
                    const Rational det = r0(a) * (r1(b) * r2(c) - r1(c) * r2(b)) - r0(b) * (r1(a) * r2(c) - r1(c) * r2(a)) +
                                         r0(c) * (r1(a) * r2(b) - r1(b) * r2(a));
                    if (det != 0) out.add({a, b, c}, v * det);
                }
    }
    return out;
}

ThreeForm<Rational> transform_threeform(const ThreeForm<Rational>& c3, const MatQ& p) {
    if (p.rows() != p.cols()) throw InvalidArgument("transform_threeform: P must be square");
    return restrict_threeform(c3, p);
}

namespace {

StructureConstantsQ bracket_from(const ThreeForm<Rational>& c3, const MatQ& beta_inv) {
    const int d = c3.dim();
    std::vector<BracketEntry<Rational>> e;
    auto push = [&](int i, int j, int r, const Rational& v) {
        for (int k = 0; k < d; ++k)
            if (beta_inv(r, k) != 0) e.push_back({i, j, k, v * beta_inv(r, k)});
    };
    for (const auto& [idx, v] : c3.entries()) {
        push(idx[0], idx[1], idx[2], v);
        push(idx[0], idx[2], idx[1], Rational(-v));
        push(idx[1], idx[2], idx[0], v);
    }
    return StructureConstantsQ::build("recovered", d, e, {{"kind", "recovered"}});
}

/// Positive multiples with integer entries; the Jacobi identity is invariant
/// under rescaling either input.
MatQ integral(const MatQ& m) {
    Integer l = 1;
    for (Eigen::Index i = 0; i < m.size(); ++i)
        l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(m.data()[i])));
    return m * Rational(l);
}

ThreeForm<Rational> integral(const ThreeForm<Rational>& c3) {
    Integer l = 1;
    for (const auto& [idx, v] : c3.entries()) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(v)));
    ThreeForm<Rational> out(c3.dim());
    for (const auto& [idx, v] : c3.entries()) out.set_sorted(idx, v * Rational(l));
    return out;
}

} // namespace

RecoveredBracket recover_bracket(const ThreeForm<Rational>& c3, const MatQ& beta) {
    const int d = c3.dim();
    if (beta.rows() != d || beta.cols() != d) throw InvalidArgument("recover_bracket: dimension mismatch");
    RecoveredBracket out;
    out.algebra = bracket_from(c3, inverse(beta));
    out.jacobi = verify_jacobi(out.algebra);
    const MatQ kf = killing_form(out.algebra);
    out.killing_residual = max_abs(MatQ(kf - beta));
    out.killing_matches = kf == beta;
    return out;
}

RecoveredComplexStructure recover_complex_structure(const MatQ& kappa, const MatQ& lambda) {
    const Eigen::Index d = kappa.rows();
    if (lambda.rows() != d || kappa.cols() != d || lambda.cols() != d)
        throw InvalidArgument("recover_complex_structure: dimension mismatch");
    const MatQ m = inverse(kappa) * lambda;
    const MatQ m0 = m - (m.trace() / Rational(d)) * MatQ::Identity(d, d);
    const MatQ sq = m0 * m0;
    const Rational c = d > 0 ? sq(0, 0) : Rational(0);
    if (sq != c * MatQ::Identity(d, d) || c >= 0) throw MathRejection("pencil not of complex type");
    RecoveredComplexStructure out;
    out.square_scalar = c;
    
    const Rational neg = -c;
    const Integer a = boost::multiprecision::numerator(neg), b = boost::multiprecision::denominator(neg);
    const Integer sa = boost::multiprecision::sqrt(a), sb = boost::multiprecision::sqrt(b);
    if (sa * sa == a && sb * sb == b) {
        out.exact = true;
        out.j_exact = m0 * Rational(sb, sa);
        out.j_float = cast_matrix<double>(out.j_exact);
        out.residual = max_abs(MatQ(out.j_exact * out.j_exact + MatQ::Identity(d, d)));
    } else {
        out.j_float = cast_matrix<double>(m0) / std::sqrt(to_double(neg));
        out.residual = max_abs(MatD(out.j_float * out.j_float + MatD::Identity(d, d)));
    }
    return out;
}

SummandReport summands_from_threeform(const ThreeForm<Rational>& c3, std::uint64_t seed) {
    const int d = c3.dim();
    if (d == 0) reject("empty form");
    const std::vector<MatQ> kernel = delta_kernel(c3);
    if (kernel.empty()) reject("Ker Delta is trivial");
    std::mt19937_64 rng(seed);
    const auto mu0 = generic_nondegenerate(kernel, rng);
    if (!mu0) reject("Ker Delta has no nondegenerate element");
    const MatQ mu0_inv = inverse(*mu0);

    const int m = static_cast<int>(kernel.size());
    const std::vector<MatQ> center = central_part(kernel, mu0_inv);
    const int t = static_cast<int>(center.size());

    for (int attempt = 0; attempt < 12; ++attempt) {
        const MatQ z = random_combination(center, rng, 1, 9 + 4 * attempt);
        const MatQ az = z * mu0_inv;
        const auto factors = split_factors(minimal_polynomial(az));
        if (!factors) continue;
        int weight = 0;
        for (const auto& f : *factors) weight += static_cast<int>(f.size()) - 1;
        if (weight != t) continue; // two summands share an eigenvalue of az

        std::vector<Summand> parts;
        MatQ all(d, 0);
        for (const auto& f : *factors) {
            Summand s;
            s.basis = column_echelon(nullspace(eval(f, az)));
            s.dim = static_cast<int>(s.basis.cols());
            s.has_complex_structure = f.size() == 3;
            parts.push_back(std::move(s));
            MatQ grown(d, all.cols() + parts.back().dim);
            grown << all, parts.back().basis;
            all = grown;
        }
        if (all.cols() != d || rank(all) != d) continue;

        for (const auto& s : parts)
            if (s.dim != 3 && s.dim < 6) reject("summand of dimension " + std::to_string(s.dim));

        // Certificates: mu0 projected onto each summand along the others.
        const MatQ all_inv = inverse(all);
        Eigen::Index offset = 0;
        for (auto& s : parts) {
            MatQ proj = all.middleCols(offset, s.dim) * all_inv.middleRows(offset, s.dim);
            s.certificate = proj * *mu0;
            offset += s.dim;
            MatQ span(static_cast<Eigen::Index>(d) * d, m + 1);
            for (int a = 0; a < m; ++a) span.col(a) = kernel[a].reshaped();
            span.col(m) = s.certificate.reshaped();
            if (s.certificate != s.certificate.transpose() || rank(span) != m || rank(s.certificate) != s.dim)
                reject("kernel does not split along the candidate summands");
            const MatQ ann = left_annihilator(s.basis);
            MatQ sys(ann.rows() * d, m);
            for (int a = 0; a < m; ++a) sys.col(a) = MatQ(ann * kernel[a]).reshaped();
            s.ker_lambda_dim = ann.rows() == 0 ? m : static_cast<int>(nullspace(sys).cols());
        }
        // No cross terms between different summands.
        for (std::size_t a = 0; a < parts.size(); ++a)
            for (std::size_t b = a + 1; b < parts.size(); ++b) {
                MatQ joint(d, parts[a].dim + parts[b].dim);
                joint << parts[a].basis, parts[b].basis;
                const auto r = restrict_threeform(c3, joint);
                for (const auto& [idx, v] : r.entries()) {
                    const bool mixed = (idx[0] < parts[a].dim) != (idx[2] < parts[a].dim);
                    if (mixed) reject("3-form couples different candidate summands");
                }
            }

        SummandReport rep;
        rep.kernel_dim = m;
        rep.center_dim = t;
        rep.jacobi_ok = verify_jacobi(bracket_from(integral(c3), integral(*mu0))).ok();
        if (!rep.jacobi_ok) reject("bracket recovered from a kernel element violates Jacobi");
        rep.summands = sort_summands(std::move(parts));
        return rep;
    }
    reject("could not separate the kernel into simple summands");
}

std::optional<RecoveredComplexStructure> summand_complex_structure(const ThreeForm<Rational>& c3, const MatQ& basis,
                                                                   std::uint64_t seed) {
    const ThreeForm<Rational> local = restrict_threeform(c3, basis);
    const auto kernel = delta_kernel(local);
    std::mt19937_64 rng(seed);
    const auto mu0 = kernel.empty() ? std::nullopt : generic_nondegenerate(kernel, rng);
    if (!mu0) throw MathRejection("summand has no nondegenerate Ker Delta element");
    const MatQ mu0_inv = inverse(*mu0);
    const auto center = central_part(kernel, mu0_inv);
    if (center.size() != 2) return std::nullopt;
    // kappa^-1 lambda = z mu0^-1 for kappa = mu0^-1, lambda = mu0^-1 z mu0^-1
    for (const auto& z : center) {
        try {
            return recover_complex_structure(mu0_inv, MatQ(mu0_inv * z * mu0_inv));
        } catch (const MathRejection&) {
        }
    }
    return std::nullopt;
}

nlohmann::json SummandReport::to_json() const {
    nlohmann::json s = nlohmann::json::array();
    for (const auto& x : summands) {
        nlohmann::json basis = nlohmann::json::array();
        for (Eigen::Index c = 0; c < x.basis.cols(); ++c) {
            nlohmann::json col = nlohmann::json::array();
            for (Eigen::Index r = 0; r < x.basis.rows(); ++r) col.push_back(to_string(x.basis(r, c)));
            basis.push_back(col);
        }
        s.push_back({{"dim", x.dim},
                     {"has_complex_structure", x.has_complex_structure},
                     {"ker_lambda_dim", x.ker_lambda_dim},
                     {"basis", basis}});
    }
    return {{"summands", s}, {"dims", dims()}, {"kernel_dim", kernel_dim}, {"center_dim", center_dim}, {"jacobi_ok", jacobi_ok}};
}

nlohmann::json SummandFingerprint::to_json() const {
    nlohmann::json j = {{"dim", dim}, {"ker_lambda_dim", ker_lambda_dim}, {"has_complex_structure", has_complex_structure},
                        {"match", match}};
    if (spectrum) {
        j["spectrum"] = spectrum->to_string();
        j["spectrum_verification"] = spectrum_exact ? "exact" : "float";
    }
    return j;
}

SummandFingerprint identify_summand(const MatQ& basis, const ThreeForm<Rational>& c3) {
    SummandFingerprint fp;
    const ThreeForm<Rational> local = restrict_threeform(c3, basis);
    fp.dim = local.dim();
    const auto kernel = delta_kernel(local);
    fp.ker_lambda_dim = static_cast<int>(kernel.size());
    if (fp.dim == 3) {
        fp.match = "type undetermined beyond dimension";
        return fp;
    }
    std::mt19937_64 rng(7);
    const auto mu = kernel.empty() ? std::nullopt : generic_nondegenerate(kernel, rng);
    if (!mu) {
        fp.match = "unrecognized";
        return fp;
    }
    fp.has_complex_structure = central_part(kernel, inverse(*mu)).size() == 2;
    // Omega is invariant under rescaling the bracket; integer constants keep it cheap.
    const StructureConstantsQ rebuilt = bracket_from(integral(local), integral(*mu));
    if (!verify_jacobi(rebuilt).ok()) {
        fp.match = "unrecognized";
        return fp;
    }
    const auto catalog = catalog_for_dim(fp.dim);
    auto accept = [&](const CatalogEntry& entry) {
        fp.spectrum = entry.table;
        fp.match = entry.name;
        if (fp.dim == 6 && fp.ker_lambda_dim == 12) fp.match += " (dim-6 special case: Ker Lambda has dimension 12)";
    };
    if (fp.dim > exact_fingerprint_dim) {
        fp.spectrum_exact = false;
        const LieContext<double> ctx(rebuilt.cast<double>());
        for (const auto& entry : catalog)
            if (verify_spectrum_float(ctx, entry.table).pass) {
                accept(entry);
                return fp;
            }
        fp.match = "unrecognized";
        return fp;
    }
    const LieContext<Rational> ctx(rebuilt);
    const SpMat<Rational> om = omega_matrix(ctx);
    Rational tr1 = 0, tr2 = 0;
    for (int c = 0; c < om.outerSize(); ++c)
        for (SpMat<Rational>::InnerIterator it(om, c); it; ++it) {
            if (it.row() == c) tr1 += it.value();
            tr2 += it.value() * om.coeff(c, it.row());
        }
    for (const auto& entry : catalog) {
        if (entry.table.power_sum(1) != tr1 || entry.table.power_sum(2) != tr2) continue;
        bool all = true;
        for (const auto& row : entry.table.rows) {
            SpMat<Rational> shifted = om;
            for (int c = 0; c < om.cols(); ++c) shifted.coeffRef(c, c) -= row.eigenvalue;
            shifted.prune([](Eigen::Index, Eigen::Index, const Rational& v) { return v != 0; });
            if (modular_nullspace(shifted).cols() != row.multiplicity) {
                all = false;
                break;
            }
        }
        if (all) {
            accept(entry);
            return fp;
        }
    }
    fp.match = "unrecognized";
    return fp;
}

} // namespace liecurv
