#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liecurv/reconstruct.hpp"

#include "suite.hpp"

#include <chrono>
#include <cstdio>
#include <mutex>

using namespace liecurv;

namespace {

/// Prints "ACn PASS|FAIL (seconds) title" after each acceptance case.
struct AcceptanceLines : doctest::IReporter {
    explicit AcceptanceLines(const doctest::ContextOptions&) {}

    void report_query(const doctest::QueryData&) override {}
    void test_run_start() override {}
    void test_run_end(const doctest::TestRunStats&) override {}
    void test_case_start(const doctest::TestCaseData& data) override {
        name_ = data.m_name;
        start_ = std::chrono::steady_clock::now();
    }
    void test_case_reenter(const doctest::TestCaseData&) override {}
    void test_case_end(const doctest::CurrentTestCaseStats& stats) override {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        const bool ok = stats.failure_flags == 0 && stats.numAssertsFailedCurrentTest == 0;
        const std::string label = name_.substr(0, name_.find(' '));
        std::printf("%s %s (%.1f s)%s\n", label.c_str(), ok ? "PASS" : "FAIL", secs,
                    name_.substr(label.size()).c_str());
        std::fflush(stdout);
    }
    void test_case_exception(const doctest::TestCaseException&) override {}
    void subcase_start(const doctest::SubcaseSignature&) override {}
    void subcase_end() override {}
    void log_assert(const doctest::AssertData&) override {}
    void log_message(const doctest::MessageData&) override {}
    void test_case_skipped(const doctest::TestCaseData&) override {}

  private:
    std::string name_;
    std::chrono::steady_clock::time_point start_;
};

REGISTER_LISTENER("acceptance-lines", 1, AcceptanceLines);

const suite::Entry& entry(const std::string& label) {
    for (const auto& e : suite::algebras())
        if (e.label == label) return e;
    throw std::logic_error("no suite entry " + label);
}

bool spans(const std::vector<MatQ>& basis, const std::vector<MatQ>& expected) {
    if (basis.size() != expected.size()) return false;
    const int n = static_cast<int>(basis.size());
    const Eigen::Index len = basis.empty() ? 0 : basis[0].size();
    MatQ a(len, n), b(len, n);
    for (int i = 0; i < n; ++i) {
        a.col(i) = basis[i].reshaped();
        b.col(i) = expected[i].reshaped();
    }
    return same_column_space(a, b);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

TEST_CASE("AC1 classical tables: exact spectra of sl_n (n=2..6), sp_4, sp_6, so_7, so_9, so_10") {
    for (const char* label : {"sl2", "sl3", "sl4", "sl5", "sl6", "sp4", "sp6", "so7", "so9", "so10"}) {
        CAPTURE(label);
        const auto& e = entry(label);
        const auto t0 = std::chrono::steady_clock::now();
        const StructureConstantsQ sc = e.build();
        const SpectrumTable expected = *suite::frozen(e);
        CHECK(expected.total() == static_cast<std::int64_t>(e.dim) * (e.dim + 1) / 2);
        CHECK(expected_spectrum(sc.metadata()) == expected);
        const CheckReport rep = verify_spectrum(LieContext<Rational>(sc), expected, SpectrumMode::Exact);
        CHECK(rep.pass);
        for (const auto& row : rep.details["rows"]) CHECK(row["status"] == "pass");
        CHECK(seconds_since(t0) < 60.0);
    }
}

TEST_CASE("AC2 exceptional formula: g2, so_8, f4 in float mode, e6 matrix-free") {
    for (const char* label : {"g2", "so8"}) {
        CAPTURE(label);
        const auto& e = entry(label);
        const LieContext<double> ctx(e.build().cast<double>());
        CHECK(verify_spectrum(ctx, *suite::frozen(e), SpectrumMode::Float).pass);
    }
    const SpectrumTable f4 = suite::table(52, suite::frozen_tables().at("f4"));
    CHECK(verify_spectrum(LieContext<double>(chevalley_algebra('F', 4).cast<double>()), f4, SpectrumMode::Float).pass);
    const SpectrumTable e6 = suite::table(78, suite::frozen_tables().at("e6"));
    const StructureConstantsQ e6_alg = chevalley_algebra('E', 6);
    CHECK(verify_spectrum(LieContext<Rational>(e6_alg), e6, SpectrumMode::MatrixFree).pass);
    CHECK(verify_spectrum(LieContext<double>(e6_alg.cast<double>()), e6, SpectrumMode::MatrixFree).pass);
}

TEST_CASE("AC3 2 Pi Lambda + (Omega + Id)(Omega - 2 Id) = 0: exact on basis forms (d <= 21), float on random forms (d <= 78)") {
    for (const auto& e : suite::algebras()) {
        if (e.dim > 21) continue;
        CAPTURE(e.label);
        const LieContext<Rational> ctx(e.build());
        double worst = 0.0;
        for (int i = 0; i < e.dim; ++i)
            for (int j = i; j < e.dim; ++j)
                worst = std::max(worst, theorem_a_residual(ctx, sym2_basis_form<Rational>(e.dim, i, j)));
        CHECK(worst == 0.0);
    }
    std::vector<StructureConstantsQ> floats;
    for (const auto& e : suite::algebras()) floats.push_back(e.build());
    floats.push_back(chevalley_algebra('F', 4));
    floats.push_back(chevalley_algebra('E', 6));
    for (const auto& sc : floats) {
        CAPTURE(sc.name());
        const LieContext<double> ctx(sc.cast<double>());
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const MatD sigma = cast_matrix<double>(random_symmetric_form(sc.dim(), seed));
            CHECK(theorem_a_residual(ctx, sigma) / max_abs(sigma) <= 1e-9);
        }
    }
}

TEST_CASE("AC4 curvature identity: full tensor check exact for d <= 10") {
    int checked = 0;
    for (const auto& e : suite::algebras()) {
        if (e.dim > 10) continue;
        CAPTURE(e.label);
        CHECK(identity_32_residual(LieContext<Rational>(e.build())) == 0.0);
        ++checked;
    }
    CHECK(checked >= 8);
}

TEST_CASE("AC5 real-form transfer: su(3), su(2,1), sl(3,R) share the sl_3 table; realified sl_2(C), sl_3(C) follow case b") {
    for (const char* label : {"su3", "su21", "sl3R", "sl2C", "sl3C"}) {
        CAPTURE(label);
        const auto& e = entry(label);
        const StructureConstantsQ sc = e.build();
        const SpectrumTable t = *suite::frozen(e);
        CHECK(expected_spectrum(sc.metadata()) == t);
        CHECK(verify_spectrum(LieContext<Rational>(sc), t, SpectrumMode::Exact).pass);
    }
}

TEST_CASE("AC6 eigenvalue-1 classifier matches computed spectra on the whole suite") {
    for (const auto& e : suite::algebras()) {
        CAPTURE(e.label);
        const StructureConstantsQ sc = e.build();
        const bool computed = eigenvalue_one_nullity(LieContext<Rational>(sc)) > 0;
        CHECK(computed == e.eigenvalue_one);
        CHECK(has_eigenvalue_one(sc.metadata()) == e.eigenvalue_one);
    }
}

TEST_CASE("AC7 kernel of Lambda: Killing line, pencil, dim-6 case and additivity") {
    for (const char* label : {"su3", "sl3R", "so7"}) {
        CAPTURE(label);
        const StructureConstantsQ sc = entry(label).build();
        const auto k = ker_lambda(sc);
        CHECK(k.dimension == 1);
        CHECK(spans(k.basis, {killing_form(sc)}));
    }
    const Realification sl3c = realify(chevalley_algebra('A', 2));
    const MatQ beta = killing_form(sl3c.algebra);
    const auto pencil = ker_lambda(sl3c.algebra);
    CHECK(pencil.dimension == 2);
    CHECK(spans(pencil.basis, {beta, MatQ(beta * sl3c.complex_structure.matrix)}));
    CHECK(ker_lambda(entry("sl2C").build()).dimension == 12);
    CHECK(ker_lambda(entry("su2").build()).dimension == 6);
    CHECK(ker_lambda(entry("su2+su3").build()).dimension == 7);
    CHECK(ker_lambda(entry("su2+sl2R").build()).dimension == 12);
    CHECK(ker_lambda(direct_sum({su_pq(3, 0), sl_real(3)})).dimension == 2);
}

TEST_CASE("AC8 inclusion chain: membership residuals exactly zero on the suite") {
    for (const auto& e : suite::algebras()) {
        CAPTURE(e.label);
        const CheckReport rep = inclusion_chain(LieContext<Rational>(e.build()));
        CHECK(rep.pass);
        CHECK(rep.residual == 0.0);
    }
}

TEST_CASE("AC9 reconstruction round-trips: 20 seeded basis changes of su(2)+sl(2,R), su(2)+su(3), realified sl_3(C)") {
    struct Target {
        StructureConstantsQ sc;
        std::vector<std::pair<int, int>> blocks;  // original (offset, dim)
        std::optional<MatQ> j;
    };
    const Realification sl3c = realify(chevalley_algebra('A', 2));
    const Target targets[] = {
        {direct_sum({su2_cyclic(), sl_real(2)}), {{0, 3}, {3, 3}}, std::nullopt},
        {direct_sum({su2_cyclic(), su_pq(3, 0)}), {{0, 3}, {3, 8}}, std::nullopt},
        {sl3c.algebra, {{0, 16}}, sl3c.complex_structure.matrix},
    };
    for (const auto& t : targets) {
        const int d = t.sc.dim();
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            CAPTURE(t.sc.name());
            CAPTURE(seed);
            const MatQ p = random_basis_change(d, seed);
            const MatQ pinv = inverse(p);
            const StructureConstantsQ scrambled = change_basis(t.sc, p);
            const MatQ beta = killing_form(scrambled);
            const ThreeForm<Rational> c3 = cartan_three_form(scrambled, beta);

            const SummandReport rep = summands_from_threeform(c3, seed);
            CHECK(rep.jacobi_ok);
            REQUIRE(rep.summands.size() == t.blocks.size());
            std::vector<bool> used(t.blocks.size(), false);
            for (const auto& s : rep.summands) {
                bool matched = false;
                for (std::size_t b = 0; b < t.blocks.size() && !matched; ++b)
                    if (!used[b] && same_column_space(s.basis, MatQ(pinv.middleCols(t.blocks[b].first, t.blocks[b].second))))
                        used[b] = matched = true;
                CHECK(matched);
                const auto cs = summand_complex_structure(c3, s.basis, seed);
                CHECK(cs.has_value() == t.j.has_value());
                if (cs && t.j) {
                    const MatQ expected = inverse(s.basis) * MatQ(pinv * *t.j * p) * s.basis;
                    CHECK(cs->exact);
                    CHECK(cs->residual == 0.0);
                    CHECK(MatQ(cs->j_exact * cs->j_exact) == MatQ(-MatQ::Identity(d, d)));
                    CHECK((cs->j_exact == expected || cs->j_exact == MatQ(-expected)));
                    CHECK(max_abs(MatD(cs->j_float * cs->j_float + MatD::Identity(d, d))) <= 1e-10);
                }
            }

            const RecoveredBracket rb = recover_bracket(c3, beta);
            CHECK(rb.jacobi.ok());
            CHECK(rb.killing_matches);
            CHECK(rb.algebra.same_tensor(scrambled));

            if (t.j) {
                const auto kernel = ker_lambda(scrambled);
                REQUIRE(kernel.dimension == 2);
                const MatQ& other = spans({kernel.basis[0]}, {beta}) ? kernel.basis[1] : kernel.basis[0];
                const RecoveredComplexStructure pencil_j = recover_complex_structure(beta, other);
                const MatQ expected = pinv * *t.j * p;
                CHECK(pencil_j.residual == 0.0);
                CHECK((pencil_j.j_exact == expected || pencil_j.j_exact == MatQ(-expected)));
            }
        }
        for (int r : {2, 3}) {
            CAPTURE(r);
            const MatQ beta = killing_form(t.sc);
            ThreeForm<Rational> c3(t.sc.dim());
            for (const auto& [idx, v] : cartan_three_form(t.sc, beta).entries()) c3.add(idx, Rational(r * r * r) * v);
            const RecoveredBracket rb = recover_bracket(c3, MatQ(Rational(r * r) * beta));
            CHECK(rb.algebra.same_tensor(t.sc.scaled(Rational(r))));
            CHECK(rb.jacobi.ok());
        }
    }
}

TEST_CASE("AC10 curvature correspondence T = -8 beta R exactly for d <= 21") {
    for (const auto& e : suite::algebras()) {
        if (e.dim > 21) continue;
        CAPTURE(e.label);
        CHECK(curvature_t_residual(LieContext<Rational>(e.build())) == 0.0);
    }
}
