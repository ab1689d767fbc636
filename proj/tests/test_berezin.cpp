#include "doctest.h"

#include <cmath>
#include <vector>

#include "phfock/berezin.hpp"
#include "phfock/kernels.hpp"
#include "phfock/spectral.hpp"
#include "phfock/toeplitz.hpp"
#include "phfock/util.hpp"

using namespace phfock;

namespace {

constexpr double kPi = 3.14159265358979323846;
const FockParams kP1{1.0, 1};

ComplexPoint pt(double re, double im = 0.0) { return ComplexPoint(cplx(re, im)); }

ToeplitzMatrix identity_matrix(int degree) {
    return from_bounded_symbol(ScaledLebesgue{1.0}, BasisTruncation::build(kP1, degree), kP1);
}

}  // namespace

TEST_CASE("transform of a measure at pinned points") {
    SUBCASE("atom at the evaluation point keeps its weight") {
        // K_ph(0, 0) = 1 cancels against the normalization, leaving the mass.
        const AtomSet spec{{Atom{pt(0.0), 0.65}}};
        CHECK(berezin_of_measure(spec, pt(0.0), kP1) == doctest::Approx(0.65).epsilon(1e-12));
    }
    SUBCASE("normalized Lebesgue gives the constant 1 everywhere") {
        // Reproducing identity: the |K_ph|^2 integral against e^{-|u|^2} dA/pi
        // returns the kernel diagonal, which the denominator removes.
        const ScaledLebesgue spec{1.0 / kPi};
        for (double x : {0.0, 0.8, -1.3}) {
            CHECK(berezin_of_measure(spec, pt(x, 0.4 * x), kP1) ==
                  doctest::Approx(1.0).epsilon(1e-6));
        }
    }
    SUBCASE("centered Gaussian at the origin") {
        // K_ph(0, u) = 1, so B(0) = integral e^{-2|u|^2} dA = pi/2.
        CHECK(berezin_of_measure(GaussianDensity{1.0, 1.0, pt(0.0)}, pt(0.0), kP1) ==
              doctest::Approx(kPi / 2.0).epsilon(1e-6));
    }
}

TEST_CASE("transform of a matrix") {
    SUBCASE("identity flattens to exactly 1 at every truncation") {
        // The kernel coefficient vector's squared norm IS the truncated
        // diagonal, so the Rayleigh quotient of I is 1 with no decay artifact.
        const ToeplitzMatrix id = identity_matrix(6);
        CHECK(berezin_of_matrix(id, pt(0.0)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(berezin_of_matrix(id, pt(0.7, -0.2)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(berezin_of_matrix(id, pt(-2.0, 1.5)) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("origin atom recovers its weight at the center") {
        const ToeplitzMatrix T =
            assemble(AtomSet{{Atom{pt(0.0), 0.3}}}, BasisTruncation::build(kP1, 6), kP1);
        CHECK(berezin_of_matrix(T, pt(0.0)) == doctest::Approx(0.3).epsilon(1e-12));
    }
    SUBCASE("bounded by the operator norm") {
        const ToeplitzMatrix T = assemble(GaussianDensity{1.0, 1.0, pt(0.5)},
                                          BasisTruncation::build(kP1, 6), kP1);
        const double norm = spectral_summary(T, {}).operator_norm;
        Rng rng(20250817ull);
        for (int i = 0; i < 40; ++i) {
            const ComplexPoint z{rng.complex_normal()};
            CHECK(std::abs(berezin_of_matrix(T, z)) <= norm + 1e-8);
        }
    }
    SUBCASE("matrix route matches the measure route inside the reliable disk") {
        const ToeplitzMatrix T = assemble(GaussianDensity{1.0, 1.0, pt(0.0)},
                                          BasisTruncation::build(kP1, 8), kP1);
        const ComplexPoint z = pt(1.0);
        CHECK(berezin_of_matrix(T, z) ==
              doctest::Approx(berezin_of_measure(GaussianDensity{1.0, 1.0, pt(0.0)}, z, kP1))
                  .epsilon(1e-3));
    }
}

TEST_CASE("trace recovered through the transform") {
    SUBCASE("single atom") {
        const ToeplitzMatrix T =
            assemble(AtomSet{{Atom{pt(0.0), 0.45}}}, BasisTruncation::build(kP1, 6), kP1);
        const TraceViaBerezin t = trace_via_berezin(T);
        CHECK(t.trace_class);
        CHECK(t.value == doctest::Approx(0.45).epsilon(1e-7));
    }
    SUBCASE("identity trace equals the dimension") {
        const ToeplitzMatrix id = identity_matrix(4);
        CHECK(trace_via_berezin(id).value ==
              doctest::Approx(static_cast<double>(id.trunc.size())).epsilon(1e-6));
    }
    SUBCASE("measure route hits 3 pi / 2 for the unit Gaussian") {
        const TraceViaBerezin t = trace_via_berezin(GaussianDensity{1.0, 1.0, pt(0.0)}, kP1);
        CHECK(t.trace_class);
        CHECK(t.value == doctest::Approx(1.5 * kPi).epsilon(1e-6));
    }
}

TEST_CASE("L^p norms of the transform") {
    SUBCASE("zero matrix") {
        ToeplitzMatrix zero = identity_matrix(5);
        zero.mat.setZero();
        const BerezinLpNorms norms = berezin_lp_norm(zero, 1.0);
        CHECK(norms.weighted == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
        CHECK(norms.plain == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    }
    SUBCASE("weighted p=1 norm of a positive matrix is its trace") {
        const ToeplitzMatrix T = assemble(GaussianDensity{1.0, 1.0, pt(0.0)},
                                          BasisTruncation::build(kP1, 6), kP1);
        const BerezinLpNorms norms = berezin_lp_norm(T, 1.0);
        CHECK(norms.weighted == doctest::Approx(T.mat.trace().real()).epsilon(1e-6));
        CHECK(std::isfinite(norms.plain));
        CHECK(norms.plain > 0.0);
    }
}

TEST_CASE("radial decay profile separates compact from identity") {
    const std::vector<double> radii{0.0, 0.5, 1.0, 1.5, 2.0};

    SUBCASE("origin atom, matrix route: value is weight over the partial diagonal") {
        const ToeplitzMatrix T =
            assemble(AtomSet{{Atom{pt(0.0), 0.5}}}, BasisTruncation::build(kP1, 8), kP1);
        const DecayProfile prof = decay_profile(T, radii);
        CHECK(prof.decaying);
        REQUIRE(prof.points.size() == radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double expect = 0.5 / partial_kernel_diagonal(pt(radii[i]), 8, kP1);
            CHECK(prof.points[i].sup_value == doctest::Approx(expect).epsilon(1e-10));
            if (i > 0) CHECK(prof.points[i].sup_value < prof.points[i - 1].sup_value);
        }
    }
    SUBCASE("origin atom, measure route: closed-form decay") {
        const DecayProfile prof =
            decay_profile(AtomSet{{Atom{pt(0.0), 0.5}}}, kP1, radii);
        CHECK(prof.decaying);
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double r = radii[i];
            CHECK(prof.points[i].sup_value ==
                  doctest::Approx(0.5 / (2.0 * std::exp(r * r) - 1.0)).epsilon(1e-10));
        }
    }
    SUBCASE("identity stays flat") {
        const DecayProfile prof = decay_profile(identity_matrix(8), radii);
        CHECK_FALSE(prof.decaying);
        for (const DecayPoint& p : prof.points) {
            CHECK(p.sup_value == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("transform of the square dominates the squared transform") {
    // For Hermitian T and the unit kernel section u: B(T^2, z) = |T u|^2 and
    // B(T, z)^2 = (u* T u)^2, so Cauchy-Schwarz gives >= pointwise.
    const ToeplitzMatrix T =
        assemble(AtomSet{{Atom{pt(0.5), 0.6}, Atom{pt(-0.4, 0.3), 0.4}}},
                 BasisTruncation::build(kP1, 5), kP1);
    ToeplitzMatrix sq = T;
    sq.mat = T.mat * T.mat;
    Rng rng(99ull);
    for (int i = 0; i < 60; ++i) {
        const ComplexPoint z{0.4 * rng.complex_normal()};
        const double b1 = berezin_of_matrix(T, z);
        const double b2 = berezin_of_matrix(sq, z);
        CHECK(b2 >= b1 * b1 - 1e-10);
    }
}
