#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "phfock/kernels.hpp"
#include "phfock/util.hpp"

using namespace phfock;

namespace {

const FockParams kP1{1.0, 1};

ComplexPoint pt(double re, double im = 0.0) { return ComplexPoint(cplx(re, im)); }

}  // namespace

TEST_CASE("holomorphic kernel pinned values") {
    CHECK(std::abs(k_alpha(pt(0.0), pt(0.7, -0.2), kP1) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(k_alpha(pt(1.0), pt(1.0), kP1) - cplx(std::exp(1.0), 0.0)) < 1e-14);
    // <z,w> = 1 * conj(i) = -i, so the value is e^{-i}.
    const cplx got = k_alpha(pt(1.0), pt(0.0, 1.0), kP1);
    CHECK(std::abs(got - cplx(std::cos(1.0), -std::sin(1.0))) < 1e-14);
}

TEST_CASE("pluriharmonic kernel pinned values and symmetry") {
    CHECK(std::abs(k_ph(pt(0.0), pt(0.0), kP1) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(k_ph(pt(1.0), pt(1.0), kP1) - cplx(2.0 * std::exp(1.0) - 1.0, 0.0)) < 1e-13);
    // e^{-i} + e^{i} - 1 = 2 cos(1) - 1.
    CHECK(std::abs(k_ph(pt(1.0), pt(0.0, 1.0), kP1) - cplx(2.0 * std::cos(1.0) - 1.0, 0.0)) <
          1e-14);

    Rng rng(61);
    for (int t = 0; t < 200; ++t) {
        const ComplexPoint z = pt(rng.uniform(-2, 2), rng.uniform(-2, 2));
        const ComplexPoint w = pt(rng.uniform(-2, 2), rng.uniform(-2, 2));
        const cplx zw = k_ph(z, w, kP1);
        CHECK(std::abs(zw - std::conj(k_ph(w, z, kP1))) < 1e-12 * std::max(1.0, std::abs(zw)));
        // The two exponentials are conjugate, so the value is actually real.
        CHECK(std::abs(zw.imag()) <= 1e-13 * std::max(1.0, std::abs(zw)));
    }
}

TEST_CASE("diagonal closed form 2 e^{|z|^2/alpha} - 1") {
    FockParams half{0.5, 1};
    for (double re : {0.0, 0.7, 1.9}) {
        const ComplexPoint z = pt(re, 0.3);
        CHECK(k_ph_diagonal(z, kP1) == doctest::Approx(2.0 * std::exp(z.abs2) - 1.0).epsilon(1e-14));
        CHECK(k_ph_diagonal(z, half) ==
              doctest::Approx(2.0 * std::exp(2.0 * z.abs2) - 1.0).epsilon(1e-14));
        CHECK(std::abs(k_ph(z, z, kP1).real() - k_ph_diagonal(z, kP1)) <
              1e-12 * k_ph_diagonal(z, kP1));
        CHECK(k_ph_diagonal(z, kP1) >= 1.0);
    }
}

TEST_CASE("normalized kernel: unit norm section, diagonal, coherent pairing") {
    // Against w = 0 the kernel function is constant 1.
    for (double re : {0.0, 1.0, 3.5})
        CHECK(std::abs(k_ph_normalized(pt(re, -re), pt(0.0), kP1) - cplx(1.0, 0.0)) < 1e-13);

    // On the diagonal the value is sqrt(2 e^{|w|^2/alpha} - 1).
    const ComplexPoint w = pt(1.0);
    CHECK(std::abs(k_ph_normalized(w, w, kP1) - cplx(std::sqrt(2.0 * std::exp(1.0) - 1.0), 0.0)) <
          1e-13);

    // Both-sided normalization (divide once more by sqrt of the z-diagonal)
    // gives the coherent-state overlap; at z=1, w=i it is (2cos1-1)/(2e-1).
    const cplx both = k_ph_normalized(pt(1.0), pt(0.0, 1.0), kP1) /
                      std::sqrt(k_ph_diagonal(pt(1.0), kP1));
    const double expect = (2.0 * std::cos(1.0) - 1.0) / (2.0 * std::exp(1.0) - 1.0);
    CHECK(std::abs(both - cplx(expect, 0.0)) < 1e-12);
    CHECK(expect == doctest::Approx(0.018168).epsilon(1e-4));

    // Large |w| must not overflow: value stays finite and the diagonal
    // identity still holds in the shifted-exponent route.
    const ComplexPoint big = pt(20.0);
    const cplx at_big = k_ph_normalized(big, big, kP1);
    CHECK(std::isfinite(at_big.real()));
    CHECK(at_big.real() == doctest::Approx(std::sqrt(2.0) * std::exp(200.0)).epsilon(1e-10));
}

TEST_CASE("kernel Gram matrices are positive semidefinite") {
    Rng rng(977);
    for (int trial = 0; trial < 5; ++trial) {
        const int k = 8;
        std::vector<ComplexPoint> zs;
        for (int i = 0; i < k; ++i) zs.push_back(pt(rng.uniform(-2, 2), rng.uniform(-2, 2)));
        Eigen::MatrixXcd G(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) G(i, j) = k_ph(zs[static_cast<std::size_t>(i)],
                                                       zs[static_cast<std::size_t>(j)], kP1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        const double lo = es.eigenvalues().minCoeff();
        const double hi = es.eigenvalues().maxCoeff();
        CHECK(lo >= -1e-9 * std::max(1.0, hi));
    }
}

TEST_CASE("truncated coefficient vectors reproduce the kernel") {
    FockParams params{1.0, 1};
    const ComplexPoint w0 = pt(0.0);

    const BasisTruncation t4 = BasisTruncation::build(params, 4);
    const Eigen::VectorXcd v0 = kernel_coeff_vector(w0, t4, params);
    CHECK(std::abs(v0(0) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(v0.tail(v0.size() - 1).norm() < 1e-15);

    // Partial sums of the diagonal: squared norm identity plus monotone
    // convergence to the closed form.
    const ComplexPoint w1 = pt(1.0);
    double prev = 0.0;
    for (int D = 1; D <= 8; ++D) {
        const BasisTruncation t = BasisTruncation::build(params, D);
        const Eigen::VectorXcd v = kernel_coeff_vector(w1, t, params);
        const double partial = partial_kernel_diagonal(w1, D, params);
        CHECK(v.squaredNorm() == doctest::Approx(partial).epsilon(1e-12));
        CHECK(partial >= prev);
        prev = partial;
    }
    CHECK(std::abs(prev - (2.0 * std::exp(1.0) - 1.0)) < 1e-4);
}

TEST_CASE("normalized pairing decays along |z| -> infinity") {
    const ComplexPoint w = pt(0.8, 0.4);
    const double denom = std::sqrt(k_ph_diagonal(w, kP1));
    double prev = 1e300;
    for (double r = std::sqrt(w.abs2) + 2.0; r < 12.0; r += 0.5) {
        const ComplexPoint z = pt(r / std::sqrt(2.0), r / std::sqrt(2.0));
        const double pairing =
            std::abs(k_ph_normalized(z, w, kP1)) / std::sqrt(k_ph_diagonal(z, kP1));
        CHECK(pairing < prev);
        prev = pairing;
    }
    CHECK(prev < 1e-6 * std::abs(k_ph_normalized(w, w, kP1) / denom));
}
