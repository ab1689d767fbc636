#include "phfock/measures.hpp"

#include <algorithm>
#include <cmath>

#include "phfock/kernels.hpp"
#include "phfock/util.hpp"

namespace phfock {

namespace {

constexpr double kPi = 3.14159265358979323846;

double dist(const ComplexPoint& a, const ComplexPoint& b) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.z.size(); ++i) d2 += std::norm(a.z[i] - b.z[i]);
    return std::sqrt(d2);
}

ComplexPoint origin(int n) { return ComplexPoint(std::vector<cplx>(static_cast<std::size_t>(n), cplx(0.0, 0.0))); }

// Disk-disk intersection area (n = 1).
double lens_area_2d(double r1, double r2, double d) {
    if (d >= r1 + r2) return 0.0;
    const double rmin = std::min(r1, r2);
    if (d <= std::abs(r1 - r2)) return kPi * rmin * rmin;
    const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0));
    const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0));
    const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * std::sqrt(std::max(k, 0.0));
}

// 4-ball cap volume of height h for radius R (ambient R^4).
double cap_volume_4d(double R, double h) {
    h = std::clamp(h, 0.0, 2.0 * R);
    auto G = [R](double x) {
        const double q = std::max(R * R - x * x, 0.0);
        return x * q * std::sqrt(q) / 4.0 +
               (3.0 * R * R / 8.0) * (x * std::sqrt(q) + R * R * std::asin(std::clamp(x / R, -1.0, 1.0)));
    };
    return (4.0 * kPi / 3.0) * (G(R) - G(R - h));
}

double lens_volume_4d(double r1, double r2, double d) {
    if (d >= r1 + r2) return 0.0;
    const double rmin = std::min(r1, r2);
    if (d <= std::abs(r1 - r2)) return 0.5 * kPi * kPi * rmin * rmin * rmin * rmin;
    const double x1 = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    return cap_volume_4d(r1, r1 - x1) + cap_volume_4d(r2, r2 - (d - x1));
}

double ball_volume(int n, double r) {  // Euclidean ball in C^n = R^{2n}
    double v = 1.0;
    for (int i = 1; i <= n; ++i) v *= kPi * r * r / i;
    return v;
}

}  // namespace

double sphere_cap_fraction(double u, double d, double r, int n) {
    if (u <= 0.0) return d <= r ? 1.0 : 0.0;
    if (d <= 0.0) return u <= r ? 1.0 : 0.0;
    const double t0 = (u * u + d * d - r * r) / (2.0 * u * d);
    if (t0 <= -1.0) return 1.0;
    if (t0 >= 1.0) return 0.0;
    if (n == 1) return std::acos(t0) / kPi;
    if (n == 2) {
        const double head = kPi / 4.0 - 0.5 * (t0 * std::sqrt(1.0 - t0 * t0) + std::asin(t0));
        return head / (kPi / 2.0);
    }
    throw std::invalid_argument("sphere_cap_fraction: only n = 1 or 2 supported");
}

void validate_measure(const MeasureSpec& spec, const FockParams& params) {
    params.validate();
    const auto need_dim = [&](const ComplexPoint& p, const char* what) {
        if (p.dim() != params.n)
            throw InadmissibleMeasure(std::string(what) + ": point dimension does not match n");
    };
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) {
                if (!(m.c > 0.0)) throw InadmissibleMeasure("scaled_lebesgue: c must be positive");
            } else if constexpr (std::is_same_v<T, GaussianDensity>) {
                if (!(m.c > 0.0)) throw InadmissibleMeasure("gaussian_density: c must be positive");
                if (!(m.beta > 0.0)) throw InadmissibleMeasure("gaussian_density: beta must be positive");
                need_dim(m.center, "gaussian_density center");
            } else if constexpr (std::is_same_v<T, RadialPowerGaussian>) {
                if (!(m.c > 0.0)) throw InadmissibleMeasure("radial_power_gaussian: c must be positive");
                if (m.k < 0) throw InadmissibleMeasure("radial_power_gaussian: k must be >= 0");
                if (!(m.s > 0.0)) throw InadmissibleMeasure("radial_power_gaussian: s must be positive");
            } else if constexpr (std::is_same_v<T, BallIndicator>) {
                if (!(m.c > 0.0)) throw InadmissibleMeasure("ball_indicator: c must be positive");
                if (!(m.radius > 0.0)) throw InadmissibleMeasure("ball_indicator: radius must be positive");
                need_dim(m.center, "ball_indicator center");
            } else if constexpr (std::is_same_v<T, AtomSet>) {
                if (m.atoms.empty()) throw InadmissibleMeasure("atom_set: need at least one atom");
                for (const Atom& a : m.atoms) {
                    if (!(a.weight > 0.0)) throw InadmissibleMeasure("atom_set: weights must be positive");
                    need_dim(a.point, "atom_set point");
                }
            } else if constexpr (std::is_same_v<T, RadialShells>) {
                if (m.shells.empty()) throw InadmissibleMeasure("radial_shells: need at least one shell");
                for (const Shell& s : m.shells) {
                    if (s.radius < 0.0) throw InadmissibleMeasure("radial_shells: radius must be >= 0");
                    if (!(s.weight > 0.0)) throw InadmissibleMeasure("radial_shells: weights must be positive");
                }
            }
        },
        spec);
}

std::string measure_kind(const MeasureSpec& spec) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) return "scaled_lebesgue";
            if constexpr (std::is_same_v<T, GaussianDensity>) return "gaussian_density";
            if constexpr (std::is_same_v<T, RadialPowerGaussian>) return "radial_power_gaussian";
            if constexpr (std::is_same_v<T, BallIndicator>) return "ball_indicator";
            if constexpr (std::is_same_v<T, AtomSet>) return "atom_set";
            if constexpr (std::is_same_v<T, RadialShells>) return "radial_shells";
        },
        spec);
}

bool is_torus_invariant(const MeasureSpec& spec) {
    return std::visit(
        [](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) return true;
            if constexpr (std::is_same_v<T, GaussianDensity>) return m.center.abs2 == 0.0;
            if constexpr (std::is_same_v<T, RadialPowerGaussian>) return true;
            if constexpr (std::is_same_v<T, BallIndicator>) return m.center.abs2 == 0.0;
            if constexpr (std::is_same_v<T, AtomSet>) return false;
            if constexpr (std::is_same_v<T, RadialShells>) return true;
        },
        spec);
}

bool is_radial(const MeasureSpec& spec) {
    return std::visit(
        [](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) return true;
            if constexpr (std::is_same_v<T, GaussianDensity>) return m.center.abs2 == 0.0;
            if constexpr (std::is_same_v<T, RadialPowerGaussian>) return true;
            if constexpr (std::is_same_v<T, BallIndicator>) return m.center.abs2 == 0.0;
            if constexpr (std::is_same_v<T, AtomSet>) return false;
            if constexpr (std::is_same_v<T, RadialShells>) return true;
        },
        spec);
}

bool is_density(const MeasureSpec& spec) {
    const std::string k = measure_kind(spec);
    return k == "scaled_lebesgue" || k == "gaussian_density" || k == "radial_power_gaussian" ||
           k == "ball_indicator";
}

double density_value(const MeasureSpec& spec, const ComplexPoint& w) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) {
                return m.c;
            } else if constexpr (std::is_same_v<T, GaussianDensity>) {
                const double d = dist(w, m.center);
                return m.c * std::exp(-m.beta * d * d);
            } else if constexpr (std::is_same_v<T, RadialPowerGaussian>) {
                return m.c * std::exp(m.k * std::log(std::max(w.abs2, 1e-300)) - m.s * w.abs2);
            } else if constexpr (std::is_same_v<T, BallIndicator>) {
                return dist(w, m.center) <= m.radius ? m.c : 0.0;
            } else {
                throw std::invalid_argument("density_value: not an absolutely continuous spec");
            }
        },
        spec);
}

IntegralResult integrate_weighted(const std::function<cplx(const ComplexPoint&)>& g,
                                  const MeasureSpec& spec, const FockParams& params,
                                  const WeightedIntegralOptions& opts) {
    validate_measure(spec, params);
    const double alpha = params.alpha;

    if (const auto* atoms = std::get_if<AtomSet>(&spec)) {
        std::vector<cplx> terms(atoms->atoms.size());
        for (std::size_t i = 0; i < atoms->atoms.size(); ++i) {
            const Atom& a = atoms->atoms[i];
            terms[i] = a.weight * std::exp(-a.point.abs2 / alpha) * g(a.point);
        }
        IntegralResult res;
        res.value = pairwise_sum(terms);
        res.nodes = terms.size();
        res.converged = true;
        return res;
    }

    if (const auto* shells = std::get_if<RadialShells>(&spec)) {
        QuadOptions q;
        q.tol = opts.tol;
        q.max_level = opts.max_level;
        IntegralResult res;
        res.converged = true;
        std::vector<cplx> terms;
        for (const Shell& sh : shells->shells) {
            const IntegralResult mean = sphere_mean(sh.radius, params, g, q);
            terms.push_back(sh.weight * mean.value);
            res.nodes += mean.nodes;
            res.err += sh.weight * mean.err;
            res.level = std::max(res.level, mean.level);
            res.converged = res.converged && mean.converged;
        }
        res.value = pairwise_sum(terms);
        return res;
    }

    if (const auto* ball = std::get_if<BallIndicator>(&spec)) {
        QuadOptions q;
        q.tol = opts.tol;
        q.max_level = opts.max_level;
        const double c = ball->c;
        return integrate_ball(
            ball->center, ball->radius, params,
            [&](const ComplexPoint& w) { return c * std::exp(-w.abs2 / alpha) * g(w); }, q);
    }

    // Remaining specs are full-plane densities.
    PlaneRule rule = PlaneRule::build(params, opts.poly_degree, opts.tol);
    QuadOptions q;
    q.tol = opts.tol;
    q.max_level = opts.max_level;
    q.angular_refine = opts.angular_smooth || !is_torus_invariant(spec);
    return integrate_plane(
        rule,
        [&](const ComplexPoint& w) { return density_value(spec, w) * std::exp(-w.abs2 / alpha) * g(w); },
        q);
}

double ball_mass(const MeasureSpec& spec, const ComplexPoint& a, double r, const FockParams& params,
                 double tol) {
    validate_measure(spec, params);
    if (a.dim() != params.n) throw std::invalid_argument("ball_mass: center dimension mismatch");
    if (!(r > 0.0)) throw std::invalid_argument("ball_mass: radius must be positive");
    const int n = params.n;

    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) {
                return m.c * ball_volume(n, r);
            } else if constexpr (std::is_same_v<T, GaussianDensity>) {
                const double d = dist(a, m.center);
                if (d < 1e-14) {
                    const double x = m.beta * r * r;
                    if (n == 1) return m.c * kPi * (1.0 - std::exp(-x)) / m.beta;
                    return m.c * kPi * kPi * (1.0 - std::exp(-x) * (1.0 + x)) / (m.beta * m.beta);
                }
                QuadOptions q;
                q.tol = tol;
                const double c = m.c, beta = m.beta;
                const ComplexPoint ctr = m.center;
                return integrate_ball(
                           a, r, params,
                           [&](const ComplexPoint& w) {
                               const double dd = dist(w, ctr);
                               return cplx(c * std::exp(-beta * dd * dd), 0.0);
                           },
                           q)
                    .real();
            } else if constexpr (std::is_same_v<T, RadialPowerGaussian>) {
                const double d = std::sqrt(a.abs2);
                if (d < 1e-14) {
                    // c * (pi^n/(n-1)!) * s^{-(k+n)} * gamma(k+n, s r^2)
                    const int aa = m.k + n;
                    const double pref = m.c * std::pow(kPi, n) / std::exp(log_factorial(n - 1));
                    return pref * std::exp(log_factorial(aa - 1)) *
                           regularized_gamma_p(aa, m.s * r * r) / std::pow(m.s, aa);
                }
                QuadOptions q;
                q.tol = tol;
                const double c = m.c, s = m.s;
                const int k = m.k;
                return integrate_ball(
                           a, r, params,
                           [&](const ComplexPoint& w) {
                               return cplx(c * std::exp(k * std::log(std::max(w.abs2, 1e-300)) - s * w.abs2),
                                           0.0);
                           },
                           q)
                    .real();
            } else if constexpr (std::is_same_v<T, BallIndicator>) {
                const double d = dist(a, m.center);
                if (n == 1) return m.c * lens_area_2d(r, m.radius, d);
                if (n == 2) return m.c * lens_volume_4d(r, m.radius, d);
                throw std::invalid_argument("ball_mass: ball_indicator only for n = 1 or 2");
            } else if constexpr (std::is_same_v<T, AtomSet>) {
                std::vector<double> terms;
                for (const Atom& at : m.atoms)
                    if (dist(at.point, a) <= r) terms.push_back(at.weight);
                return pairwise_sum(terms);
            } else {  // RadialShells
                const double d = std::sqrt(a.abs2);
                std::vector<double> terms;
                for (const Shell& sh : m.shells) {
                    const double frac = sphere_cap_fraction(sh.radius, d, r, n);
                    if (frac > 0.0)
                        terms.push_back(sh.weight * std::exp(sh.radius * sh.radius / params.alpha) * frac);
                }
                return pairwise_sum(terms);
            }
        },
        spec);
}

double total_gaussian_mass(const MeasureSpec& spec, const FockParams& params) {
    validate_measure(spec, params);
    const double alpha = params.alpha;
    const int n = params.n;
    const double val = std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) {
                return m.c * std::pow(alpha * kPi, n);
            } else if constexpr (std::is_same_v<T, GaussianDensity>) {
                const double apb = 1.0 / alpha + m.beta;
                return m.c * std::pow(kPi / apb, n) *
                       std::exp(-(m.beta / alpha) * m.center.abs2 / apb);
            } else if constexpr (std::is_same_v<T, RadialPowerGaussian>) {
                const double c2 = m.s + 1.0 / alpha;
                return m.c * std::pow(kPi, n) *
                       std::exp(log_factorial(m.k + n - 1) - log_factorial(n - 1) -
                                (m.k + n) * std::log(c2));
            } else if constexpr (std::is_same_v<T, BallIndicator>) {
                const double d = std::sqrt(m.center.abs2);
                if (d < 1e-14) {
                    const double x = m.radius * m.radius / alpha;
                    if (n == 1) return m.c * kPi * alpha * (1.0 - std::exp(-x));
                    return m.c * kPi * kPi * alpha * alpha * (1.0 - std::exp(-x) * (1.0 + x));
                }
                QuadOptions q;
                q.tol = 1e-10;
                const double c = m.c;
                return integrate_ball(
                           m.center, m.radius, params,
                           [&](const ComplexPoint& w) { return cplx(c * std::exp(-w.abs2 / alpha), 0.0); }, q)
                    .real();
            } else if constexpr (std::is_same_v<T, AtomSet>) {
                std::vector<double> terms(m.atoms.size());
                for (std::size_t i = 0; i < m.atoms.size(); ++i)
                    terms[i] = m.atoms[i].weight * std::exp(-m.atoms[i].point.abs2 / alpha);
                return pairwise_sum(terms);
            } else {  // RadialShells
                std::vector<double> terms(m.shells.size());
                for (std::size_t i = 0; i < m.shells.size(); ++i) terms[i] = m.shells[i].weight;
                return pairwise_sum(terms);
            }
        },
        spec);
    if (!std::isfinite(val))
        throw std::runtime_error("total_gaussian_mass: divergent for supplied spec (inadmissible)");
    return val;
}

double total_mass(const MeasureSpec& spec, const FockParams& params) {
    validate_measure(spec, params);
    const int n = params.n;
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) {
                return std::numeric_limits<double>::infinity();
            } else if constexpr (std::is_same_v<T, GaussianDensity>) {
                return m.c * std::pow(kPi / m.beta, n);
            } else if constexpr (std::is_same_v<T, RadialPowerGaussian>) {
                return m.c * std::pow(kPi, n) *
                       std::exp(log_factorial(m.k + n - 1) - log_factorial(n - 1) -
                                (m.k + n) * std::log(m.s));
            } else if constexpr (std::is_same_v<T, BallIndicator>) {
                return m.c * ball_volume(n, m.radius);
            } else if constexpr (std::is_same_v<T, AtomSet>) {
                std::vector<double> terms(m.atoms.size());
                for (std::size_t i = 0; i < m.atoms.size(); ++i) terms[i] = m.atoms[i].weight;
                return pairwise_sum(terms);
            } else {  // RadialShells: each shell carries weight * e^{r^2/alpha}
                std::vector<double> terms(m.shells.size());
                for (std::size_t i = 0; i < m.shells.size(); ++i)
                    terms[i] = m.shells[i].weight * std::exp(m.shells[i].radius * m.shells[i].radius / params.alpha);
                return pairwise_sum(terms);
            }
        },
        spec);
}

SupportBound effective_support_radius(const MeasureSpec& spec, const FockParams& params) {
    validate_measure(spec, params);
    constexpr double kNegligible = 1e-8;
    return std::visit(
        [&](const auto& m) -> SupportBound {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) {
                return SupportBound{std::numeric_limits<double>::infinity(), true};
            } else if constexpr (std::is_same_v<T, GaussianDensity>) {
                return SupportBound{std::sqrt(m.center.abs2) + std::sqrt(-std::log(kNegligible) / m.beta),
                                    false};
            } else if constexpr (std::is_same_v<T, RadialPowerGaussian>) {
                const double ustar = std::sqrt(static_cast<double>(m.k) / m.s);
                const double logpeak =
                    m.k * std::log(std::max(ustar * ustar, 1e-300)) - m.s * ustar * ustar;
                double u = ustar + 0.25;
                while (u < 100.0) {
                    const double lp = m.k * std::log(u * u) - m.s * u * u;
                    if (lp - logpeak < std::log(kNegligible)) break;
                    u += 0.25;
                }
                return SupportBound{u, false};
            } else if constexpr (std::is_same_v<T, BallIndicator>) {
                return SupportBound{std::sqrt(m.center.abs2) + m.radius, false};
            } else if constexpr (std::is_same_v<T, AtomSet>) {
                double r = 0.0;
                for (const Atom& a : m.atoms) r = std::max(r, std::sqrt(a.point.abs2));
                return SupportBound{r, false};
            } else {  // RadialShells
                double r = 0.0;
                for (const Shell& s : m.shells) r = std::max(r, s.radius);
                return SupportBound{r, false};
            }
        },
        spec);
}

AdmissibilityReport admissibility_check(const MeasureSpec& spec, const FockParams& params,
                                        const std::vector<ComplexPoint>& probes, double tol) {
    AdmissibilityReport report;
    report.admissible = true;
    for (const ComplexPoint& z : probes) {
        AdmissibilityProbe p;
        p.z = z;
        WeightedIntegralOptions opts;
        opts.tol = tol;
        opts.poly_degree = 8;
        opts.angular_smooth = true;
        try {
            const IntegralResult r = integrate_weighted(
                [&](const ComplexPoint& u) {
                    const cplx k = k_ph(z, u, params);
                    return k * std::conj(k);
                },
                spec, params, opts);
            p.value = r.real();
            p.converged = r.converged && std::isfinite(p.value);
        } catch (const QuadratureNonConvergence&) {
            p.converged = false;
        }
        report.admissible = report.admissible && p.converged;
        report.probes.push_back(std::move(p));
    }
    return report;
}

}  // namespace phfock
