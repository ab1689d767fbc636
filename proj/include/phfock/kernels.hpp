#pragma once

#include <Eigen/Dense>

#include "phfock/types.hpp"

namespace phfock {

// Hermitian pairing sum z_i * conj(w_i).
cplx hermitian_inner(const ComplexPoint& z, const ComplexPoint& w);

// Holomorphic kernel exp(<z,w>/alpha).
cplx k_alpha(const ComplexPoint& z, const ComplexPoint& w, const FockParams& params);

// Pluriharmonic kernel k_alpha(z,w) + k_alpha(w,z) - 1.  The two exponentials
// are conjugates, so the value is real; the complex return keeps the generic
// route visible for symmetry tests.
cplx k_ph(const ComplexPoint& z, const ComplexPoint& w, const FockParams& params);

// Closed form on the diagonal: 2 exp(|z|^2/alpha) - 1.
double k_ph_diagonal(const ComplexPoint& z, const FockParams& params);

// k_ph(z,w) / sqrt(k_ph(w,w)), evaluated with exponent shifts so large |w|
// stays finite.
cplx k_ph_normalized(const ComplexPoint& z, const ComplexPoint& w, const FockParams& params);

// Coefficients of k_ph(., w) in the truncated basis: entry j is conj(b_j(w)).
Eigen::VectorXcd kernel_coeff_vector(const ComplexPoint& w, const BasisTruncation& trunc,
                                     const FockParams& params);

// Degree-D partial sum of k_ph(z,z): 2 * sum_{t<=D} (|z|^2/alpha)^t / t! - 1.
// Equals the squared norm of kernel_coeff_vector at the same truncation.
double partial_kernel_diagonal(const ComplexPoint& z, int degree, const FockParams& params);

}  // namespace phfock
