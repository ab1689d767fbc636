#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "phfock/types.hpp"

namespace phfock {

struct Rule1D {
    std::vector<double> x, w;
};

// Gauss-Legendre nodes/weights on [a, b].
Rule1D gauss_legendre(int npts, double a, double b);

struct QuadOptions {
    double tol = 1e-9;
    int max_level = 4;
    bool angular_refine = false;  // double angular counts along with radial nodes
};

struct IntegralResult {
    cplx value{0.0, 0.0};
    double err = 0.0;
    int level = 0;
    std::size_t nodes = 0;
    bool converged = false;

    double real() const { return value.real(); }
};

// Refinement stalled: carries the last two estimates so callers can report
// or decide the gap is acceptable.
struct QuadratureNonConvergence : std::runtime_error {
    double last, prev;
    QuadratureNonConvergence(double last_, double prev_)
        : std::runtime_error("quadrature refinement did not converge"), last(last_), prev(prev_) {}
};

// One complex coordinate at a fixed refinement level: Gauss-Legendre in
// s = r^2 combined with a periodic trapezoid in angle.
struct PolarGrid {
    std::vector<double> r;    // sqrt of the s nodes
    std::vector<double> rw;   // 0.5 * GL weight (the dA = 0.5 ds dtheta split)
    std::vector<cplx> unit;   // e^{i theta_j}
    double aw = 0.0;          // angular weight 2*pi/N
};

// Product rule for integrals over C^n against smooth integrands that decay
// like the Gaussian weight.  Construction validates the monomial moments
// |z|^{2m} e^{-|z|^2/alpha}, m <= moment_degree, against their closed forms
// and enlarges the radial cutoff until they pass at the requested tolerance.
struct PlaneRule {
    FockParams params;
    double s_max = 0.0;      // radial domain is s in [0, s_max]
    int moment_degree = 0;
    double tol = 1e-9;
    int base_radial = 0;
    int base_angular = 0;

    static PlaneRule build(const FockParams& params, int moment_degree, double tol);

    PolarGrid grid(int level, bool refine_angular) const;
    std::size_t nodes_per_coordinate(int level, bool refine_angular) const;
};

// Integral of f over C^n with respect to dA (area measure), adaptive in the
// refinement level.  f must decay fast enough that [0, s_max] captures it;
// the PlaneRule's moment validation is the contract for that.
IntegralResult integrate_plane(const PlaneRule& rule, const std::function<cplx(const ComplexPoint&)>& f,
                               const QuadOptions& opts);

// Integral of f over the Euclidean ball B(center, radius) in C^n (n = 1 or 2)
// with respect to dA.
IntegralResult integrate_ball(const ComplexPoint& center, double radius, const FockParams& params,
                              const std::function<cplx(const ComplexPoint&)>& f,
                              const QuadOptions& opts);

// Mean of f over the sphere |z| = radius in C^n (n = 1 or 2), adaptive in the
// angular node counts.
IntegralResult sphere_mean(double radius, const FockParams& params,
                           const std::function<cplx(const ComplexPoint&)>& f, const QuadOptions& opts);

// Deterministic chunked traversal of the full tensor grid (all n coordinates)
// of `g`.  Visits every node exactly once, in a fixed order independent of
// chunk size; weights carry the complete dA factor.
void for_each_plane_chunk(const PolarGrid& g, int n, std::size_t chunk,
                          const std::function<void(const std::vector<ComplexPoint>&,
                                                   const std::vector<double>&)>& fn);

// Same traversal for the ball rule at a given level.
struct BallGrid {
    std::vector<ComplexPoint> pts;
    std::vector<double> w;
};
BallGrid ball_grid(const ComplexPoint& center, double radius, const FockParams& params, int level);

}  // namespace phfock
