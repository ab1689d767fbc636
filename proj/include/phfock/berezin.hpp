#pragma once

#include <vector>

#include "phfock/toeplitz.hpp"

namespace phfock {

// Berezin transform of a measure at z:
//   integral of |K_ph(z,u)|^2 / (e^{|u|^2/alpha} (2 e^{|z|^2/alpha} - 1)) dmu(u),
// with exact closed-form kernel diagonal in the denominator.
double berezin_of_measure(const MeasureSpec& spec, const ComplexPoint& z, const FockParams& params,
                          double tol = 1e-8);

// Matrix Berezin value v^H T v / S_D(z) with v the truncated kernel
// coefficient vector and S_D the matching partial sum of the kernel diagonal.
// A genuine Rayleigh quotient, so |value| <= operator norm at every
// truncation; a closed-form denominator would instead bias large |z| downward.
double berezin_of_matrix(const ToeplitzMatrix& T, const ComplexPoint& z);

// Trace recovered from the Berezin field integrated against the weight
// (2 e^{|z|^2/alpha} - 1) e^{-|z|^2/alpha} dA / (alpha pi)^n.  For a truncated
// matrix the profile-times-weight product collapses to
// (alpha pi)^{-n} u^H T u with u the conjugated weighted basis vector, which
// the quadrature reproduces at any truncation.
struct TraceViaBerezin {
    bool trace_class = true;
    double value = 0.0;
};
TraceViaBerezin trace_via_berezin(const ToeplitzMatrix& T, double tol = 1e-8);
TraceViaBerezin trace_via_berezin(const MeasureSpec& spec, const FockParams& params,
                                  double tol = 1e-8);

// Weighted and plain-area L^p norms of the matrix Berezin field (the profile
// here carries the closed-form kernel denominator, under which the weighted
// p=1 norm of a positive matrix equals its trace).
struct BerezinLpNorms {
    double p = 0.0;
    double weighted = 0.0;  // against (2e^{|z|^2/a}-1) e^{-|z|^2/a} dA/(a pi)^n
    double plain = 0.0;     // against dA
};
BerezinLpNorms berezin_lp_norm(const ToeplitzMatrix& T, double p, double tol = 1e-8);

// Radial decay profile: sup of |Berezin| over angular samples per radius.
// Beyond the knee -- where the partial kernel sum falls under 90% of the
// closed form -- matrix values are truncation-limited and flagged as such.
struct DecayPoint {
    double radius = 0.0;
    double sup_value = 0.0;
    bool truncation_limited = false;
};
struct DecayProfile {
    std::vector<DecayPoint> points;
    bool decaying = false;  // monotone decreasing over the trustworthy radii
};
DecayProfile decay_profile(const ToeplitzMatrix& T, const std::vector<double>& radii);
DecayProfile decay_profile(const MeasureSpec& spec, const FockParams& params,
                           const std::vector<double>& radii, double tol = 1e-7);

}  // namespace phfock
