#include "doctest.h"

#include <cmath>
#include <vector>

#include "phfock/quadrature.hpp"
#include "phfock/util.hpp"

using namespace phfock;

namespace {

constexpr double kPi = 3.14159265358979323846;

double gaussian_moment(int m, double alpha, int n) {
    // closed form of the full-plane integral of |z|^{2m} e^{-|z|^2/alpha}
    // for one coordinate carrying the whole power (n = 1 uses it directly).
    double v = std::pow(alpha * kPi, n) * std::pow(alpha, m);
    for (int j = 2; j <= m; ++j) v *= j;
    return v;
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials to rule order") {
    const Rule1D r = gauss_legendre(16, 0.0, 1.0);
    REQUIRE(r.x.size() == 16);
    double s5 = 0.0, s20 = 0.0, s31 = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        s5 += r.w[i] * std::pow(r.x[i], 5);
        s20 += r.w[i] * std::pow(r.x[i], 20);
        s31 += r.w[i] * std::pow(r.x[i], 31);
    }
    CHECK(s5 == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(s20 == doctest::Approx(1.0 / 21.0).epsilon(1e-13));
    // degree 31 = 2*16 - 1 is the last exact one
    CHECK(s31 == doctest::Approx(1.0 / 32.0).epsilon(1e-12));

    const Rule1D shifted = gauss_legendre(8, 2.0, 5.0);
    double lin = 0.0;
    for (std::size_t i = 0; i < shifted.x.size(); ++i) lin += shifted.w[i] * shifted.x[i];
    CHECK(lin == doctest::Approx(0.5 * (25.0 - 4.0)).epsilon(1e-14));
}

TEST_CASE("plane rule reproduces Gaussian moments at several alpha") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        FockParams params{alpha, 1};
        const PlaneRule rule = PlaneRule::build(params, 12, 1e-10);
        QuadOptions opts;
        opts.tol = 1e-10;
        for (int m : {0, 1, 4, 9, 12}) {
            const IntegralResult res = integrate_plane(
                rule,
                [&](const ComplexPoint& z) {
                    return cplx(std::pow(z.abs2, m) * std::exp(-z.abs2 / alpha), 0.0);
                },
                opts);
            CHECK(res.converged);
            CHECK(res.real() ==
                  doctest::Approx(gaussian_moment(m, alpha, 1)).epsilon(1e-9));
        }
    }
}

TEST_CASE("plane rule at n = 2: separable Gaussian moment") {
    FockParams params{1.0, 2};
    const PlaneRule rule = PlaneRule::build(params, 8, 1e-9);
    QuadOptions opts;
    opts.tol = 1e-9;
    // |z1|^2 |z2|^4 e^{-|z|^2} integrates to (pi 1!)(pi 2!) = 2 pi^2.
    const IntegralResult res = integrate_plane(
        rule,
        [](const ComplexPoint& z) {
            const double a = std::norm(z.z[0]), b = std::norm(z.z[1]);
            return cplx(a * b * b * std::exp(-(a + b)), 0.0);
        },
        opts);
    CHECK(res.converged);
    CHECK(res.real() == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-8));
}

TEST_CASE("sphere means of monomials") {
    QuadOptions opts;
    opts.tol = 1e-11;

    FockParams p1{1.0, 1};
    const IntegralResult flat = sphere_mean(
        2.0, p1, [](const ComplexPoint& z) { return cplx(z.abs2, 0.0); }, opts);
    CHECK(flat.real() == doctest::Approx(4.0).epsilon(1e-12));
    // Pure phases average to zero.
    const IntegralResult phase = sphere_mean(
        1.0, p1, [](const ComplexPoint& z) { return z.z[0] * z.z[0]; }, opts);
    CHECK(std::abs(phase.value) < 1e-12);

    // On the unit sphere of C^2 the mean of |z1|^{2a}|z2|^{2b} is a!b!/(a+b+1)!.
    FockParams p2{1.0, 2};
    struct Case { int a, b; double mean; };
    const Case cases[] = {{1, 0, 1.0 / 2.0}, {1, 1, 1.0 / 6.0}, {2, 0, 1.0 / 3.0}, {2, 1, 1.0 / 12.0}};
    for (const Case& c : cases) {
        const IntegralResult res = sphere_mean(
            1.0, p2,
            [&](const ComplexPoint& z) {
                return cplx(std::pow(std::norm(z.z[0]), c.a) * std::pow(std::norm(z.z[1]), c.b),
                            0.0);
            },
            opts);
        CHECK(res.real() == doctest::Approx(c.mean).epsilon(1e-10));
    }
}

TEST_CASE("ball integration recovers volumes, centered or not") {
    QuadOptions opts;
    opts.tol = 1e-9;
    const auto one = [](const ComplexPoint&) { return cplx(1.0, 0.0); };

    FockParams p1{1.0, 1};
    CHECK(integrate_ball(ComplexPoint(cplx(0.0, 0.0)), 1.5, p1, one, opts).real() ==
          doctest::Approx(kPi * 2.25).epsilon(1e-10));
    CHECK(integrate_ball(ComplexPoint(cplx(2.0, -1.0)), 0.8, p1, one, opts).real() ==
          doctest::Approx(kPi * 0.64).epsilon(1e-10));

    FockParams p2{1.0, 2};
    const ComplexPoint c2(std::vector<cplx>{cplx(0.5, 0.0), cplx(0.0, -0.5)});
    CHECK(integrate_ball(c2, 1.0, p2, one, opts).real() ==
          doctest::Approx(kPi * kPi / 2.0).epsilon(1e-8));

    // A polynomial integrand over an off-center disk, against the closed form
    // int_{B(a,r)} |z|^2 dA = pi r^2 (|a|^2 + r^2/2).
    const ComplexPoint a(cplx(1.0, 1.0));
    const IntegralResult res = integrate_ball(
        a, 0.7, p1, [](const ComplexPoint& z) { return cplx(z.abs2, 0.0); }, opts);
    CHECK(res.real() == doctest::Approx(kPi * 0.49 * (2.0 + 0.245)).epsilon(1e-10));
}

TEST_CASE("non-convergence carries its last two estimates") {
    QuadOptions opts;
    opts.tol = 1e-16;  // unreachable for a kinked integrand
    opts.max_level = 1;
    FockParams p1{1.0, 1};
    bool threw = false;
    try {
        integrate_ball(ComplexPoint(cplx(0.0, 0.0)), 1.0, p1,
                       [](const ComplexPoint& z) { return cplx(std::abs(z.z[0].real()), 0.0); },
                       opts);
    } catch (const QuadratureNonConvergence& e) {
        threw = true;
        CHECK(std::isfinite(e.last));
        CHECK(std::isfinite(e.prev));
        // Both estimates already sit near the true value 4/3.
        CHECK(e.last == doctest::Approx(4.0 / 3.0).epsilon(2e-2));
    }
    CHECK(threw);
}

TEST_CASE("chunked traversal is chunk-size invariant") {
    FockParams params{1.0, 1};
    const PlaneRule rule = PlaneRule::build(params, 6, 1e-9);
    const PolarGrid g = rule.grid(0, false);

    const auto collect = [&](std::size_t chunk) {
        std::vector<double> acc;
        for_each_plane_chunk(g, 1, chunk,
                             [&](const std::vector<ComplexPoint>& pts,
                                 const std::vector<double>& w) {
                                 for (std::size_t i = 0; i < pts.size(); ++i)
                                     acc.push_back(w[i] * std::exp(-pts[i].abs2));
                             });
        return acc;
    };
    const std::vector<double> a = collect(7), b = collect(1024);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    CHECK(pairwise_sum(a) == doctest::Approx(kPi * (1.0 - 0.0)).epsilon(1e-6));
}
