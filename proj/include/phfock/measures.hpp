#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phfock/quadrature.hpp"
#include "phfock/types.hpp"

namespace phfock {

// Closed catalog of admissible positive measures on C^n.  Conventions: a
// MeasureSpec names the measure mu itself; the Gaussian factor
// exp(-|w|^2/alpha) is always applied by the operations, never baked into
// the measure.

struct ScaledLebesgue {
    double c = 1.0;  // c * dA
};

struct GaussianDensity {
    double c = 1.0;
    double beta = 1.0;
    ComplexPoint center;  // c * exp(-beta |w - center|^2) dA
};

struct RadialPowerGaussian {
    double c = 1.0;
    int k = 0;
    double s = 1.0;  // c * |w|^{2k} exp(-s |w|^2) dA
};

struct BallIndicator {
    double c = 1.0;
    ComplexPoint center;
    double radius = 1.0;  // c * 1_{B(center, radius)} dA
};

struct Atom {
    ComplexPoint point;
    double weight = 1.0;
};
struct AtomSet {
    std::vector<Atom> atoms;  // sum of weight_i * delta_{point_i}
};

struct Shell {
    double radius = 0.0;
    double weight = 1.0;
};
// Radial measure given through its weighted disintegration: integrating
// f(w) exp(-|w|^2/alpha) against mu yields sum_i weight_i * (mean of f over
// the sphere |w| = radius_i).  Equivalently mu puts mass
// weight_i * exp(radius_i^2/alpha) uniformly on each sphere.
struct RadialShells {
    std::vector<Shell> shells;
};

using MeasureSpec =
    std::variant<ScaledLebesgue, GaussianDensity, RadialPowerGaussian, BallIndicator, AtomSet, RadialShells>;

// A structurally well-formed spec whose parameters put it outside the
// admissible catalog (non-positive weights, growth that breaks the kernel
// integrals, dimension mismatches).  Kept distinct from schema errors so the
// command layer can report it under its own exit code.
struct InadmissibleMeasure : std::invalid_argument {
    explicit InadmissibleMeasure(const std::string& what) : std::invalid_argument(what) {}
};

void validate_measure(const MeasureSpec& spec, const FockParams& params);
std::string measure_kind(const MeasureSpec& spec);

// True when the density is invariant under independent phase rotations of the
// coordinates, which makes every basis-pair integral with mismatched angular
// pattern vanish identically.
bool is_torus_invariant(const MeasureSpec& spec);
// True when the measure depends only on |w| (invariant under the full unitary
// group), the stronger property behind the diagonal fast path.
bool is_radial(const MeasureSpec& spec);
bool is_density(const MeasureSpec& spec);
double density_value(const MeasureSpec& spec, const ComplexPoint& w);

// integral of g(w) exp(-|w|^2/alpha) dmu(w).  `g` may grow like
// exp(|w|^2/(2 alpha)) without upsetting the quadrature; `poly_degree` hints
// the monomial degree the plane rule must integrate exactly (ignored for
// atom/shell specs).
struct WeightedIntegralOptions {
    double tol = 1e-9;
    int poly_degree = 16;       // moment validation cap for the plane rule
    bool angular_smooth = false;  // set when g * density has non-polynomial angle dependence
    int max_level = 4;
};
IntegralResult integrate_weighted(const std::function<cplx(const ComplexPoint&)>& g,
                                  const MeasureSpec& spec, const FockParams& params,
                                  const WeightedIntegralOptions& opts = {});

// mu(closed ball B(a, r)).  Closed forms where the geometry allows, smooth
// ball quadrature otherwise.
double ball_mass(const MeasureSpec& spec, const ComplexPoint& a, double r, const FockParams& params,
                 double tol = 1e-8);

// integral of exp(-|w|^2/alpha) dmu -- finite for every catalog member.
double total_gaussian_mass(const MeasureSpec& spec, const FockParams& params);

// mu(C^n); +infinity for ScaledLebesgue.
double total_mass(const MeasureSpec& spec, const FockParams& params);

// Radius beyond which ball masses at the default probe radius are negligible
// relative to the measure's own scale; +infinity for translation-invariant
// ScaledLebesgue (flagged uniform so window verdicts stay conclusive).
struct SupportBound {
    double radius = 0.0;
    bool uniform = false;
};
SupportBound effective_support_radius(const MeasureSpec& spec, const FockParams& params);

struct AdmissibilityProbe {
    ComplexPoint z;
    double value = 0.0;
    bool converged = false;
};
struct AdmissibilityReport {
    std::vector<AdmissibilityProbe> probes;
    bool admissible = false;
};
// Checks that the kernel-squared integral stays finite under refinement at a
// set of probe points.
AdmissibilityReport admissibility_check(const MeasureSpec& spec, const FockParams& params,
                                        const std::vector<ComplexPoint>& probes, double tol = 1e-7);

// Fraction of the sphere |x| = u (ambient real dimension 2n) lying inside a
// ball of radius r centered at distance d from the origin of the sphere.
double sphere_cap_fraction(double u, double d, double r, int n);

}  // namespace phfock
