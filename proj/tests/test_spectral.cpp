#include "doctest.h"

#include <cmath>
#include <vector>

#include "phfock/spectral.hpp"
#include "phfock/util.hpp"

using namespace phfock;

namespace {

constexpr double kPi = 3.14159265358979323846;
const FockParams kP1{1.0, 1};

ComplexPoint pt(double re, double im = 0.0) { return ComplexPoint(cplx(re, im)); }

ToeplitzMatrix identity_matrix(int D) {
    return from_bounded_symbol(ScaledLebesgue{1.0}, BasisTruncation::build(kP1, D), kP1);
}

}  // namespace

TEST_CASE("summary of the identity at D = 2") {
    const SpectralSummary s = spectral_summary(identity_matrix(2), {1.0, 2.0});
    REQUIRE(s.eigenvalues.size() == 5);
    CHECK(s.operator_norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.trace == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(s.schatten[0].second == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(s.schatten[1].second == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
    // descending order, positive spectrum matches singular values
    for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i)
        CHECK(s.eigenvalues(i) <= s.eigenvalues(i - 1) + 1e-14);
    CHECK((s.eigenvalues - s.singular_values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rank-one origin atom: every norm equals the weight") {
    const ToeplitzMatrix T =
        assemble(AtomSet{{Atom{pt(0.0), 0.6}}}, BasisTruncation::build(kP1, 4), kP1);
    const SpectralSummary s = spectral_summary(T, {1.0, 2.0, 3.0});
    CHECK(s.operator_norm == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(s.trace == doctest::Approx(0.6).epsilon(1e-12));
    for (const auto& [p, v] : s.schatten) CHECK(v == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(std::abs(s.eigenvalues(1)) < 1e-12);
}

TEST_CASE("trace equals the block-trace sum and the p=1 Schatten norm") {
    const ToeplitzMatrix T = assemble(GaussianDensity{1.0, 1.0, pt(0.2, -0.3)},
                                      BasisTruncation::build(kP1, 6), kP1);
    const BlockDecomposition b = blocks(T);
    const double block_sum = b.mm.trace().real() + b.nn.trace().real();
    const SpectralSummary s = spectral_summary(T, {1.0});
    CHECK(s.trace == doctest::Approx(block_sum).epsilon(1e-12));
    CHECK(s.schatten[0].second == doctest::Approx(s.trace).epsilon(1e-10));
    CHECK(s.schatten[0].second >= s.operator_norm);
}

TEST_CASE("operator norms interlace upward with the truncation degree") {
    double prev = 0.0;
    for (int D : {2, 4, 6, 8}) {
        const ToeplitzMatrix T = assemble(GaussianDensity{1.0, 1.0, pt(0.3)},
                                          BasisTruncation::build(kP1, D), kP1);
        const double norm = spectral_summary(T, {}).operator_norm;
        CHECK(norm >= prev - 1e-12);
        prev = norm;
    }
}

TEST_CASE("p below 1 is rejected") {
    CHECK_THROWS(spectral_summary(identity_matrix(2), {0.5}));
}

TEST_CASE("trace-class verdicts") {
    SUBCASE("origin atom: target c at every degree") {
        const TraceClassReport r = trace_class_check(AtomSet{{Atom{pt(0.0), 0.75}}}, kP1, {2, 4});
        CHECK(r.finite);
        CHECK(r.verdict == "trace class");
        CHECK(r.target == doctest::Approx(0.75).epsilon(1e-12));
        for (const auto& [D, tr] : r.traces) CHECK(tr == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(r.monotone);
        CHECK(r.sandwich_ok);
        CHECK(r.limit_ok);
    }
    SUBCASE("Lebesgue: infinite target") {
        const TraceClassReport r = trace_class_check(ScaledLebesgue{1.0}, kP1, {2, 4});
        CHECK_FALSE(r.finite);
        CHECK(r.verdict == "not trace class");
    }
    SUBCASE("Gaussian: target 3 pi / 2 with the sandwich") {
        const TraceClassReport r =
            trace_class_check(GaussianDensity{1.0, 1.0, pt(0.0)}, kP1, {4, 8, 12});
        CHECK(r.finite);
        CHECK(r.target == doctest::Approx(1.5 * kPi).epsilon(1e-8));
        CHECK(r.total_mass == doctest::Approx(kPi).epsilon(1e-10));
        CHECK(r.monotone);
        CHECK(r.sandwich_ok);  // pi <= 3 pi/2 <= 2 pi
        CHECK(r.limit_ok);
        CHECK(r.traces.back().second == doctest::Approx(1.5 * kPi).epsilon(1e-3));
    }
}

TEST_CASE("Schatten necessity probe: diagonal inequality and scan coupling") {
    LatticeWindow window;
    window.spacing = 1.0;
    window.half_width = 6.0;
    window.params = kP1;

    const SchattenNecessityReport r = schatten_necessity_probe(
        GaussianDensity{1.0, 1.0, pt(0.0)}, kP1, 2.0, window, {4, 6, 8});
    REQUIRE(r.entries.size() == 3);
    for (const SchattenProbeEntry& e : r.entries) {
        CHECK(e.diag_ok);
        CHECK(e.diag_lp <= e.sp_norm * (1.0 + 1e-12));
    }
    CHECK(r.cauchy);
    CHECK(r.mass_lp_sum > 0.0);
    CHECK(std::isfinite(r.mass_lp_sum));

    // A measure with no decay: S_1 grows with D, and the window sum grows
    // with the window -- consistent non-membership signals.
    const SchattenNecessityReport flat =
        schatten_necessity_probe(ScaledLebesgue{1.0}, kP1, 1.0, window, {2, 4, 6});
    CHECK(flat.entries[2].sp_norm > flat.entries[1].sp_norm + 0.5);
    CHECK(flat.entries[1].sp_norm > flat.entries[0].sp_norm + 0.5);
    for (const SchattenProbeEntry& e : flat.entries) CHECK(e.diag_ok);
}

TEST_CASE("L^p symbol sufficiency bounds") {
    SUBCASE("disk indicator, p = 1: right side 2") {
        const LpSymbolReport r =
            lp_symbol_sufficiency_check(BallIndicator{1.0, pt(0.0), 1.0}, 1.0, kP1, {4, 8});
        CHECK(r.rhs == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(r.ok);
        for (const auto& [D, lhs] : r.lhs) CHECK(lhs <= r.rhs * (1.0 + 1e-9));
    }
    SUBCASE("Gaussian symbol, p = 2: right side 1") {
        const LpSymbolReport r =
            lp_symbol_sufficiency_check(GaussianDensity{1.0, 1.0, pt(0.0)}, 2.0, kP1, {4, 8});
        CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.ok);
    }
    SUBCASE("closed-form |g|^p areas behind the bounds") {
        CHECK(symbol_lp_integral(BallIndicator{1.0, pt(0.0), 1.0}, 1.0, kP1) ==
              doctest::Approx(kPi).epsilon(1e-10));
        CHECK(symbol_lp_integral(GaussianDensity{1.0, 1.0, pt(0.0)}, 2.0, kP1) ==
              doctest::Approx(kPi / 2.0).epsilon(1e-10));
    }
}

TEST_CASE("compactness probe against the lattice verdict") {
    LatticeWindow window;
    window.spacing = 1.0;
    window.half_width = 8.0;
    window.params = kP1;

    SUBCASE("rank-one atom: immediate tail collapse") {
        const CompactnessReport r =
            compactness_probe(AtomSet{{Atom{pt(0.0), 1.0}}}, kP1, {6}, window);
        CHECK(r.vanishing == "yes");
        CHECK(r.agree);
        CHECK(r.entries.back().tail_ratio == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
    SUBCASE("identity measure: flat spectrum, non-vanishing") {
        const CompactnessReport r =
            compactness_probe(ScaledLebesgue{1.0 / kPi}, kP1, {6}, window);
        CHECK(r.vanishing == "no");
        CHECK(r.entries.back().flat);
        CHECK(r.entries.back().flatness > 0.9);
        CHECK(r.agree);
    }
    SUBCASE("Gaussian: geometric sigma decay matches vanishing yes") {
        const CompactnessReport r =
            compactness_probe(GaussianDensity{1.0, 1.0, pt(0.0)}, kP1, {8}, window);
        CHECK(r.vanishing == "yes");
        CHECK(r.entries.back().tail_decay);
        // spectrum pi/2, pi/4, pi/4, pi/8, pi/8, pi/16, ... (orders m >= 1 are
        // doubled across the two blocks), so sigma_5/sigma_0 = 1/8
        CHECK(r.entries.back().tail_ratio == doctest::Approx(1.0 / 8.0).epsilon(1e-6));
        CHECK(r.agree);
    }
}
