#include "phfock/kernels.hpp"

#include <cmath>

#include "phfock/basis.hpp"

namespace phfock {

cplx hermitian_inner(const ComplexPoint& z, const ComplexPoint& w) {
    if (z.dim() != w.dim()) throw std::invalid_argument("hermitian_inner: dimension mismatch");
    cplx s(0.0, 0.0);
    for (int i = 0; i < z.dim(); ++i) s += z.z[static_cast<std::size_t>(i)] * std::conj(w.z[static_cast<std::size_t>(i)]);
    return s;
}

cplx k_alpha(const ComplexPoint& z, const ComplexPoint& w, const FockParams& params) {
    return std::exp(hermitian_inner(z, w) / params.alpha);
}

cplx k_ph(const ComplexPoint& z, const ComplexPoint& w, const FockParams& params) {
    const cplx a = k_alpha(z, w, params);
    return a + std::conj(a) - cplx(1.0, 0.0);
}

double k_ph_diagonal(const ComplexPoint& z, const FockParams& params) {
    return 2.0 * std::exp(z.abs2 / params.alpha) - 1.0;
}

cplx k_ph_normalized(const ComplexPoint& z, const ComplexPoint& w, const FockParams& params) {
    // k_ph(z,w) / sqrt(2 e^d - 1) with d = |w|^2/alpha, using
    // sqrt(2 e^d - 1) = e^{d/2} sqrt(2 - e^{-d}) to keep exponents tame.
    const double d = w.abs2 / params.alpha;
    const cplx u = hermitian_inner(z, w) / params.alpha;
    const cplx shifted = std::exp(u - d / 2.0);
    const cplx num = shifted + std::conj(shifted) - std::exp(-d / 2.0);
    return num / std::sqrt(2.0 - std::exp(-d));
}

Eigen::VectorXcd kernel_coeff_vector(const ComplexPoint& w, const BasisTruncation& trunc,
                                     const FockParams& params) {
    Eigen::VectorXcd v(trunc.size());
    for (int j = 0; j < trunc.size(); ++j) {
        ComplexPoint wp = w;  // unweighted evaluation; desk-scale |w| stays finite
        v(j) = std::conj(eval_basis(trunc.at(j), wp, params));
    }
    return v;
}

double partial_kernel_diagonal(const ComplexPoint& z, int degree, const FockParams& params) {
    const double x = z.abs2 / params.alpha;
    double term = 1.0, sum = 1.0;
    for (int t = 1; t <= degree; ++t) {
        term *= x / static_cast<double>(t);
        sum += term;
    }
    return 2.0 * sum - 1.0;
}

}  // namespace phfock
