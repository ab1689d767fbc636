#include "phfock/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "phfock/util.hpp"

namespace phfock {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Rule1D gauss_legendre(int npts, double a, double b) {
    if (npts < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    Rule1D out;
    out.x.resize(static_cast<std::size_t>(npts));
    out.w.resize(static_cast<std::size_t>(npts));
    const int m = (npts + 1) / 2;
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (npts + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < npts; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = npts * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        out.x[static_cast<std::size_t>(i)] = xm - xl * x;
        out.x[static_cast<std::size_t>(npts - 1 - i)] = xm + xl * x;
        out.w[static_cast<std::size_t>(i)] = out.w[static_cast<std::size_t>(npts - 1 - i)] =
            2.0 * xl / ((1.0 - x * x) * pp * pp);
    }
    return out;
}

PolarGrid PlaneRule::grid(int level, bool refine_angular) const {
    PolarGrid g;
    const int nr = base_radial << level;
    const int na = refine_angular ? (base_angular << level) : base_angular;
    const Rule1D s = gauss_legendre(nr, 0.0, s_max);
    g.r.resize(s.x.size());
    g.rw.resize(s.x.size());
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        g.r[i] = std::sqrt(s.x[i]);
        g.rw[i] = 0.5 * s.w[i];
    }
    g.unit.resize(static_cast<std::size_t>(na));
    for (int j = 0; j < na; ++j) {
        const double th = 2.0 * kPi * j / na;
        g.unit[static_cast<std::size_t>(j)] = cplx(std::cos(th), std::sin(th));
    }
    g.aw = 2.0 * kPi / na;
    return g;
}

std::size_t PlaneRule::nodes_per_coordinate(int level, bool refine_angular) const {
    const std::size_t nr = static_cast<std::size_t>(base_radial) << level;
    const std::size_t na =
        refine_angular ? (static_cast<std::size_t>(base_angular) << level) : static_cast<std::size_t>(base_angular);
    return nr * na;
}

namespace {

// Per-coordinate radial check against the closed Gaussian moments
// integral of |z|^{2m} e^{-|z|^2/alpha} dA over C = pi * alpha^{m+1} * m!.
double worst_moment_error(const PlaneRule& rule, int level) {
    const PolarGrid g = rule.grid(level, false);
    double worst = 0.0;
    // Products of two basis monomials reach twice the design degree per
    // coordinate, so validate moments all the way up there.
    for (int m = 0; m <= 2 * rule.moment_degree; ++m) {
        std::vector<double> terms(g.r.size());
        for (std::size_t i = 0; i < g.r.size(); ++i) {
            const double s = g.r[i] * g.r[i];
            terms[i] = g.rw[i] * std::exp(m * std::log(std::max(s, 1e-300)) - s / rule.params.alpha);
        }
        const double val = 2.0 * kPi * pairwise_sum(terms);
        const double closed = kPi * std::exp((m + 1) * std::log(rule.params.alpha) + log_factorial(m));
        worst = std::max(worst, std::abs(val - closed) / closed);
    }
    return worst;
}

}  // namespace

PlaneRule PlaneRule::build(const FockParams& params, int moment_degree, double tol) {
    params.validate();
    if (moment_degree < 0) throw std::invalid_argument("PlaneRule: moment_degree must be >= 0");
    PlaneRule rule;
    rule.params = params;
    rule.moment_degree = moment_degree;
    rule.tol = tol;
    rule.s_max = params.alpha * (2.0 * moment_degree + 40.0);
    rule.base_radial = 16 + 2 * moment_degree;
    int ba = 2 * moment_degree + 8;
    ba = ((ba + 7) / 8) * 8;
    rule.base_angular = std::max(32, ba);

    // Enlarge the radial cutoff (and if necessary the node count) until the
    // declared moment accuracy actually holds.
    for (int attempt = 0; attempt < 10; ++attempt) {
        const double e0 = worst_moment_error(rule, 0);
        const double e1 = worst_moment_error(rule, 1);
        if (e1 <= tol && std::abs(e1 - e0) <= 10.0 * tol) return rule;
        if (e1 <= tol) {  // levels still moving: more base nodes
            rule.base_radial = rule.base_radial * 3 / 2;
        } else if (e0 > 10.0 * e1) {  // converging in nodes, limited by nodes
            rule.base_radial = rule.base_radial * 3 / 2;
        } else {  // limited by the tail cutoff
            rule.s_max += 8.0 * params.alpha;
        }
    }
    throw std::runtime_error("PlaneRule: moment validation failed to converge");
}

void for_each_plane_chunk(const PolarGrid& g, int n, std::size_t chunk,
                          const std::function<void(const std::vector<ComplexPoint>&,
                                                   const std::vector<double>&)>& fn) {
    const std::size_t nr = g.r.size(), na = g.unit.size();
    const std::size_t per = nr * na;
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= per;

    std::vector<ComplexPoint> pts;
    std::vector<double> ws;
    pts.reserve(chunk);
    ws.reserve(chunk);
    std::vector<cplx> coords(static_cast<std::size_t>(n));
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            const std::size_t ci = rest % per;
            rest /= per;
            const std::size_t ir = ci / na, ia = ci % na;
            coords[static_cast<std::size_t>(i)] = g.r[ir] * g.unit[ia];
            w *= g.rw[ir] * g.aw;
        }
        pts.emplace_back(coords);
        ws.push_back(w);
        if (pts.size() == chunk) {
            fn(pts, ws);
            pts.clear();
            ws.clear();
        }
    }
    if (!pts.empty()) fn(pts, ws);
}

IntegralResult integrate_plane(const PlaneRule& rule, const std::function<cplx(const ComplexPoint&)>& f,
                               const QuadOptions& opts) {
    IntegralResult res;
    cplx prev(0.0, 0.0);
    for (int level = 0; level <= opts.max_level; ++level) {
        const PolarGrid g = rule.grid(level, opts.angular_refine);
        std::vector<cplx> vals;
        cplx acc(0.0, 0.0);
        std::size_t count = 0;
        for_each_plane_chunk(g, rule.params.n, 8192,
                             [&](const std::vector<ComplexPoint>& pts, const std::vector<double>& ws) {
                                 std::vector<cplx> chunk_terms(pts.size());
                                 for (std::size_t i = 0; i < pts.size(); ++i)
                                     chunk_terms[i] = ws[i] * f(pts[i]);
                                 vals.push_back(pairwise_sum(chunk_terms));
                                 count += pts.size();
                             });
        acc = pairwise_sum(vals);
        res.nodes = count;
        res.level = level;
        if (level > 0) {
            res.err = std::abs(acc - prev);
            if (res.err <= opts.tol * std::max(1.0, std::abs(acc))) {
                res.value = acc;
                res.converged = true;
                return res;
            }
        }
        prev = acc;
        res.value = acc;
    }
    throw QuadratureNonConvergence(res.value.real(), prev.real());
}

BallGrid ball_grid(const ComplexPoint& center, double radius, const FockParams& params, int level) {
    BallGrid out;
    if (params.n == 1) {
        const int nr = 24 << level, na = 32 << level;
        const Rule1D srule = gauss_legendre(nr, 0.0, radius * radius);
        out.pts.reserve(static_cast<std::size_t>(nr) * na);
        out.w.reserve(out.pts.capacity());
        for (int i = 0; i < nr; ++i) {
            const double rho = std::sqrt(srule.x[static_cast<std::size_t>(i)]);
            const double rw = 0.5 * srule.w[static_cast<std::size_t>(i)] * (2.0 * kPi / na);
            for (int j = 0; j < na; ++j) {
                const double th = 2.0 * kPi * j / na;
                out.pts.emplace_back(std::vector<cplx>{center.z[0] + rho * cplx(std::cos(th), std::sin(th))});
                out.w.push_back(rw);
            }
        }
        return out;
    }
    if (params.n == 2) {
        // z = a + rho * (cos(theta) e^{i phi1}, sin(theta) e^{i phi2}),
        // dV = rho^3 cos sin  drho dtheta dphi1 dphi2; u = sin^2(theta).
        const int nrho = 16 << level, nu = 12 << level, nphi = 16 << level;
        const Rule1D rr = gauss_legendre(nrho, 0.0, radius);
        const Rule1D uu = gauss_legendre(nu, 0.0, 1.0);
        const double phw = 2.0 * kPi / nphi;
        out.pts.reserve(static_cast<std::size_t>(nrho) * nu * nphi * nphi);
        out.w.reserve(out.pts.capacity());
        for (int i = 0; i < nrho; ++i) {
            const double rho = rr.x[static_cast<std::size_t>(i)];
            const double wr = rr.w[static_cast<std::size_t>(i)] * rho * rho * rho;
            for (int k = 0; k < nu; ++k) {
                const double u = uu.x[static_cast<std::size_t>(k)];
                const double c1 = std::sqrt(1.0 - u), c2 = std::sqrt(u);
                const double wu = 0.5 * uu.w[static_cast<std::size_t>(k)];
                for (int j1 = 0; j1 < nphi; ++j1) {
                    const double a1 = 2.0 * kPi * j1 / nphi;
                    const cplx e1(std::cos(a1), std::sin(a1));
                    for (int j2 = 0; j2 < nphi; ++j2) {
                        const double a2 = 2.0 * kPi * j2 / nphi;
                        const cplx e2(std::cos(a2), std::sin(a2));
                        out.pts.emplace_back(std::vector<cplx>{center.z[0] + rho * c1 * e1,
                                                               center.z[1] + rho * c2 * e2});
                        out.w.push_back(wr * wu * phw * phw);
                    }
                }
            }
        }
        return out;
    }
    throw std::invalid_argument("ball_grid: only n = 1 or 2 supported");
}

IntegralResult integrate_ball(const ComplexPoint& center, double radius, const FockParams& params,
                              const std::function<cplx(const ComplexPoint&)>& f,
                              const QuadOptions& opts) {
    if (center.dim() != params.n) throw std::invalid_argument("integrate_ball: center dimension mismatch");
    IntegralResult res;
    cplx prev(0.0, 0.0);
    const int cap = std::min(opts.max_level, params.n == 2 ? 3 : opts.max_level);
    for (int level = 0; level <= cap; ++level) {
        const BallGrid g = ball_grid(center, radius, params, level);
        std::vector<cplx> terms(g.pts.size());
        for (std::size_t i = 0; i < g.pts.size(); ++i) terms[i] = g.w[i] * f(g.pts[i]);
        const cplx acc = pairwise_sum(terms);
        res.nodes = g.pts.size();
        res.level = level;
        if (level > 0) {
            res.err = std::abs(acc - prev);
            if (res.err <= opts.tol * std::max(1.0, std::abs(acc))) {
                res.value = acc;
                res.converged = true;
                return res;
            }
        }
        prev = acc;
        res.value = acc;
    }
    throw QuadratureNonConvergence(res.value.real(), prev.real());
}

IntegralResult sphere_mean(double radius, const FockParams& params,
                           const std::function<cplx(const ComplexPoint&)>& f, const QuadOptions& opts) {
    IntegralResult res;
    cplx prev(0.0, 0.0);
    for (int level = 0; level <= opts.max_level; ++level) {
        cplx acc(0.0, 0.0);
        if (params.n == 1) {
            const int na = 32 << level;
            std::vector<cplx> terms(static_cast<std::size_t>(na));
            for (int j = 0; j < na; ++j) {
                const double th = 2.0 * kPi * j / na;
                terms[static_cast<std::size_t>(j)] =
                    f(ComplexPoint(radius * cplx(std::cos(th), std::sin(th))));
            }
            acc = pairwise_sum(terms) / static_cast<double>(na);
            res.nodes = static_cast<std::size_t>(na);
        } else if (params.n == 2) {
            // Uniform probability measure on S^3: u ~ GL on [0,1], two angles.
            const int nu = 8 << level, nphi = 16 << level;
            const Rule1D uu = gauss_legendre(nu, 0.0, 1.0);
            std::vector<cplx> terms;
            terms.reserve(static_cast<std::size_t>(nu) * nphi * nphi);
            for (int k = 0; k < nu; ++k) {
                const double u = uu.x[static_cast<std::size_t>(k)];
                const double c1 = std::sqrt(1.0 - u), c2 = std::sqrt(u);
                for (int j1 = 0; j1 < nphi; ++j1) {
                    const double a1 = 2.0 * kPi * j1 / nphi;
                    const cplx e1(std::cos(a1), std::sin(a1));
                    for (int j2 = 0; j2 < nphi; ++j2) {
                        const double a2 = 2.0 * kPi * j2 / nphi;
                        const cplx e2(std::cos(a2), std::sin(a2));
                        terms.push_back(uu.w[static_cast<std::size_t>(k)] *
                                        f(ComplexPoint(std::vector<cplx>{radius * c1 * e1, radius * c2 * e2})));
                    }
                }
            }
            acc = pairwise_sum(terms) / static_cast<double>(nphi) / static_cast<double>(nphi);
            res.nodes = static_cast<std::size_t>(nu) * nphi * nphi;
        } else {
            throw std::invalid_argument("sphere_mean: only n = 1 or 2 supported");
        }
        res.level = level;
        if (level > 0) {
            res.err = std::abs(acc - prev);
            if (res.err <= opts.tol * std::max(1.0, std::abs(acc))) {
                res.value = acc;
                res.converged = true;
                return res;
            }
        }
        prev = acc;
        res.value = acc;
    }
    throw QuadratureNonConvergence(res.value.real(), prev.real());
}

}  // namespace phfock
