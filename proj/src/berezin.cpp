#include "phfock/berezin.hpp"

#include <cmath>
#include <limits>

#include "phfock/basis.hpp"
#include "phfock/kernels.hpp"
#include "phfock/util.hpp"

namespace phfock {

namespace {

constexpr double kPi = 3.14159265358979323846;

// u^H T u with u_j = conj(b_j(z)) e^{-|z|^2/(2 alpha)}: the kernel coefficient
// vector with the half-Gaussian folded in, so large |z| stays finite.
double weighted_quadratic_form(const ToeplitzMatrix& T, const ComplexPoint& z,
                               std::vector<cplx>& scratch, std::vector<cplx>& buf) {
    buf.resize(static_cast<std::size_t>(T.trunc.size()));
    eval_basis_weighted_fill(T.trunc, z, T.params, scratch, buf.data());
    Eigen::Map<const Eigen::VectorXcd> phi(buf.data(), T.trunc.size());
    // u = conj(phi); u^H T u = phi^T T conj(phi)
    const cplx q = (phi.transpose() * (T.mat * phi.conjugate()))(0);
    return q.real();
}

}  // namespace

double berezin_of_measure(const MeasureSpec& spec, const ComplexPoint& z, const FockParams& params,
                          double tol) {
    WeightedIntegralOptions opts;
    opts.tol = tol;
    opts.angular_smooth = z.abs2 > 0.0;
    const IntegralResult num = integrate_weighted(
        [&](const ComplexPoint& u) {
            const cplx k = k_ph(z, u, params);
            return k * std::conj(k);
        },
        spec, params, opts);
    return num.real() / k_ph_diagonal(z, params);
}

double berezin_of_matrix(const ToeplitzMatrix& T, const ComplexPoint& z) {
    std::vector<cplx> scratch, buf;
    const double num = weighted_quadratic_form(T, z, scratch, buf);
    // Same half-Gaussian on both sides of the quotient cancels exactly.
    const double den =
        partial_kernel_diagonal(z, T.trunc.degree, T.params) * std::exp(-z.abs2 / T.params.alpha);
    return num / den;
}

TraceViaBerezin trace_via_berezin(const ToeplitzMatrix& T, double tol) {
    // The transform against the closed kernel denominator, multiplied by the
    // trace weight, collapses to (alpha pi)^{-n} u^H T u -- integrate that.
    const PlaneRule rule = PlaneRule::build(T.params, T.trunc.degree, tol);
    QuadOptions q;
    q.tol = tol;
    q.angular_refine = true;
    const double fold = std::pow(T.params.alpha * kPi, -T.params.n);

    std::vector<cplx> scratch, buf;
    TraceViaBerezin out;
    out.value = integrate_plane(
                    rule,
                    [&](const ComplexPoint& z) {
                        return cplx(fold * weighted_quadratic_form(T, z, scratch, buf), 0.0);
                    },
                    q)
                    .real();
    return out;
}

TraceViaBerezin trace_via_berezin(const MeasureSpec& spec, const FockParams& params, double tol) {
    TraceViaBerezin out;
    const double mass = total_mass(spec, params);
    if (!std::isfinite(mass)) {
        // The Fubini image of the trace integral diverges with the measure.
        out.trace_class = false;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    // Fubini against the reproducing identity turns the double integral into
    // the kernel diagonal paired with the measure.
    WeightedIntegralOptions opts;
    opts.tol = tol;
    const IntegralResult r = integrate_weighted(
        [&](const ComplexPoint& u) { return cplx(k_ph_diagonal(u, params), 0.0); }, spec, params,
        opts);
    out.value = r.real();
    return out;
}

BerezinLpNorms berezin_lp_norm(const ToeplitzMatrix& T, double p, double tol) {
    if (!(p >= 1.0)) throw std::invalid_argument("berezin_lp_norm: p must be >= 1");
    BerezinLpNorms out;
    out.p = p;

    const PlaneRule rule = PlaneRule::build(T.params, T.trunc.degree, tol);
    QuadOptions q;
    q.tol = tol;
    q.angular_refine = true;
    const double fold = std::pow(T.params.alpha * kPi, -T.params.n);
    const double alpha = T.params.alpha;

    std::vector<cplx> scratch, buf;
    // Profile with the closed-form denominator: value * weight recovers
    // u^H T u e^{... } without cancellation blowups at large |z|.
    const auto profile = [&](const ComplexPoint& z) {
        const double num = weighted_quadratic_form(T, z, scratch, buf);
        const double den = (2.0 - std::exp(-z.abs2 / alpha));  // (2e^x-1) e^{-x}
        return num / den;
    };
    out.weighted = std::pow(
        integrate_plane(
            rule,
            [&](const ComplexPoint& z) {
                const double v = std::abs(profile(z));
                const double w = 2.0 - std::exp(-z.abs2 / alpha);
                return cplx(fold * std::pow(v, p) * w, 0.0);
            },
            q)
            .real(),
        1.0 / p);
    out.plain = std::pow(integrate_plane(rule,
                                         [&](const ComplexPoint& z) {
                                             return cplx(std::pow(std::abs(profile(z)), p), 0.0);
                                         },
                                         q)
                             .real(),
                         1.0 / p);
    return out;
}

DecayProfile decay_profile(const ToeplitzMatrix& T, const std::vector<double>& radii) {
    DecayProfile out;
    const int angular = 16;
    for (double r : radii) {
        DecayPoint pt;
        pt.radius = r;
        ComplexPoint probe(std::vector<cplx>(static_cast<std::size_t>(T.params.n), cplx(0.0, 0.0)));
        probe.z[0] = cplx(r, 0.0);
        probe.abs2 = r * r;
        const double partial_ratio = partial_kernel_diagonal(probe, T.trunc.degree, T.params) /
                                     k_ph_diagonal(probe, T.params);
        pt.truncation_limited = partial_ratio < 0.9;
        for (int j = 0; j < angular; ++j) {
            const double th = 2.0 * kPi * j / angular;
            ComplexPoint z(std::vector<cplx>(static_cast<std::size_t>(T.params.n), cplx(0.0, 0.0)));
            z.z[0] = r * cplx(std::cos(th), std::sin(th));
            z.abs2 = r * r;
            pt.sup_value = std::max(pt.sup_value, std::abs(berezin_of_matrix(T, z)));
        }
        out.points.push_back(pt);
    }
    // Judge monotone decay only where the truncated kernel still carries the
    // mass; beyond the knee the quotient is dominated by truncation error.
    bool first = true;
    bool mono = true;
    double last = 0.0;
    for (const DecayPoint& pt : out.points) {
        if (pt.truncation_limited) continue;
        if (!first) mono = mono && pt.sup_value < last * (1.0 - 1e-6);
        first = false;
        last = pt.sup_value;
    }
    out.decaying = !first && mono;
    return out;
}

DecayProfile decay_profile(const MeasureSpec& spec, const FockParams& params,
                           const std::vector<double>& radii, double tol) {
    DecayProfile out;
    const int angular = 8;
    for (double r : radii) {
        DecayPoint pt;
        pt.radius = r;
        for (int j = 0; j < angular; ++j) {
            const double th = 2.0 * kPi * j / angular;
            ComplexPoint z(std::vector<cplx>(static_cast<std::size_t>(params.n), cplx(0.0, 0.0)));
            z.z[0] = r * cplx(std::cos(th), std::sin(th));
            z.abs2 = r * r;
            pt.sup_value = std::max(pt.sup_value, std::abs(berezin_of_measure(spec, z, params, tol)));
        }
        out.points.push_back(pt);
    }
    out.decaying = out.points.size() > 1;
    for (std::size_t i = 1; i < out.points.size(); ++i)
        out.decaying =
            out.decaying && out.points[i].sup_value < out.points[i - 1].sup_value * (1.0 - 1e-6);
    return out;
}

}  // namespace phfock
