#include "phfock/carleson.hpp"

#include <algorithm>
#include <cmath>

#include "phfock/util.hpp"

namespace phfock {

void LatticeWindow::validate() const {
    params.validate();
    if (!(spacing > 0.0)) throw std::invalid_argument("LatticeWindow: spacing must be positive");
    if (!(half_width >= spacing))
        throw std::invalid_argument("LatticeWindow: half-width must be at least the spacing");
}

std::size_t LatticeWindow::point_count() const {
    const std::size_t per_axis =
        2 * static_cast<std::size_t>(std::floor(half_width / spacing + 1e-12)) + 1;
    std::size_t total = 1;
    for (int d = 0; d < 2 * params.n; ++d) total *= per_axis;
    return total;
}

std::vector<ComplexPoint> lattice_points(const LatticeWindow& window, std::size_t cap) {
    window.validate();
    const std::size_t total = window.point_count();
    if (total > cap) throw ResourceLimit(total, cap);

    const int K = static_cast<int>(std::floor(window.half_width / window.spacing + 1e-12));
    const int per_axis = 2 * K + 1;
    const int dims = 2 * window.params.n;
    std::vector<ComplexPoint> pts;
    pts.reserve(total);
    std::vector<int> k(static_cast<std::size_t>(dims), -K);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        std::vector<cplx> z(static_cast<std::size_t>(window.params.n));
        for (int d = 0; d < dims; ++d) {
            const int kd = static_cast<int>(rest % static_cast<std::size_t>(per_axis)) - K;
            rest /= static_cast<std::size_t>(per_axis);
            if (d % 2 == 0)
                z[static_cast<std::size_t>(d / 2)] += cplx(window.spacing * kd, 0.0);
            else
                z[static_cast<std::size_t>(d / 2)] += cplx(0.0, window.spacing * kd);
        }
        pts.emplace_back(std::move(z));
    }
    std::sort(pts.begin(), pts.end(), [](const ComplexPoint& a, const ComplexPoint& b) {
        if (a.abs2 != b.abs2) return a.abs2 < b.abs2;
        for (std::size_t i = 0; i < a.z.size(); ++i) {
            if (a.z[i].real() != b.z[i].real()) return a.z[i].real() < b.z[i].real();
            if (a.z[i].imag() != b.z[i].imag()) return a.z[i].imag() < b.z[i].imag();
        }
        return false;
    });
    return pts;
}

namespace {

// Median slope over all point pairs; robust against one noisy annulus.
double theil_sen_slope(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 2) return 0.0;
    std::vector<double> slopes;
    slopes.reserve(xy.size() * (xy.size() - 1) / 2);
    for (std::size_t i = 0; i < xy.size(); ++i)
        for (std::size_t j = i + 1; j < xy.size(); ++j) {
            const double dx = xy[j].first - xy[i].first;
            if (dx != 0.0) slopes.push_back((xy[j].second - xy[i].second) / dx);
        }
    if (slopes.empty()) return 0.0;
    std::sort(slopes.begin(), slopes.end());
    const std::size_t m = slopes.size();
    return m % 2 == 1 ? slopes[m / 2] : 0.5 * (slopes[m / 2 - 1] + slopes[m / 2]);
}

}  // namespace

CarlesonReport carleson_scan(const MeasureSpec& spec, const LatticeWindow& window,
                             const std::vector<double>& p_list, std::size_t cap, int threads) {
    validate_measure(spec, window.params);
    for (double p : p_list)
        if (!(p >= 1.0)) throw std::invalid_argument("carleson_scan: p must be >= 1");

    CarlesonReport rep;
    rep.window = window;
    rep.points = lattice_points(window, cap);
    rep.masses.assign(rep.points.size(), 0.0);

    const double r = window.spacing;
    const int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    parallel_for(rep.points.size(), nthreads, [&](std::size_t i) {
        rep.masses[i] = ball_mass(spec, rep.points[i], r, window.params);
    });

    rep.sup_mass = 0.0;
    for (double m : rep.masses) rep.sup_mass = std::max(rep.sup_mass, m);

    // Annulus profile with ring width delta = 2r.
    const double delta = 2.0 * r;
    int max_ring = 0;
    for (const ComplexPoint& p : rep.points)
        max_ring = std::max(max_ring, static_cast<int>(std::sqrt(p.abs2) / delta));
    rep.annuli.assign(static_cast<std::size_t>(max_ring) + 1, AnnulusStat{});
    for (std::size_t t = 0; t < rep.annuli.size(); ++t) {
        rep.annuli[t].index = static_cast<int>(t);
        rep.annuli[t].mid_radius = (static_cast<double>(t) + 0.5) * delta;
    }
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        const std::size_t t = static_cast<std::size_t>(std::sqrt(rep.points[i].abs2) / delta);
        rep.annuli[t].sup_mass = std::max(rep.annuli[t].sup_mass, rep.masses[i]);
        rep.annuli[t].points++;
    }

    for (double p : p_list) {
        std::vector<double> terms(rep.masses.size());
        for (std::size_t i = 0; i < rep.masses.size(); ++i)
            terms[i] = rep.masses[i] > 0.0 ? std::pow(rep.masses[i], p) : 0.0;
        rep.lp_sums.emplace_back(p, pairwise_sum(terms));
    }

    std::vector<std::pair<double, double>> ring_log;
    for (const AnnulusStat& a : rep.annuli)
        if (a.points > 0 && a.sup_mass > 0.0) ring_log.emplace_back(a.mid_radius, std::log(a.sup_mass));
    rep.trend_slope = theil_sen_slope(ring_log);

    const SupportBound support = effective_support_radius(spec, window.params);
    rep.support_radius = support.radius;
    rep.window_adequate =
        support.uniform || support.radius <= window.half_width - 2.0 * window.spacing;

    if (!rep.window_adequate) {
        rep.bounded = "inconclusive";
        rep.vanishing = "inconclusive";
        return rep;
    }

    double outer3 = 0.0;
    const std::size_t rings = rep.annuli.size();
    for (std::size_t t = rings >= 3 ? rings - 3 : 0; t < rings; ++t)
        outer3 = std::max(outer3, rep.annuli[t].sup_mass);
    const bool no_growth = rep.trend_slope <= kTrendSlopeEps;
    rep.bounded = (outer3 <= rep.sup_mass * (1.0 + 1e-12) && no_growth) ? "yes" : "no";

    const double outer_sup = rep.annuli.back().sup_mass;
    rep.vanishing = outer_sup <= kVanishThreshold * rep.sup_mass ? "yes" : "no";
    return rep;
}

NecessityCheck necessity_constant_check(const MeasureSpec& spec, const ComplexPoint& a, double r,
                                        const FockParams& params) {
    NecessityCheck out;
    out.ball = ball_mass(spec, a, r, params);

    // |f_a(z)|^2 = e^{(2 Re<z,a> - |a|^2)/alpha}
    WeightedIntegralOptions opts;
    opts.tol = 1e-9;
    opts.angular_smooth = a.abs2 > 0.0;
    const double alpha = params.alpha;
    const IntegralResult ia = integrate_weighted(
        [&](const ComplexPoint& u) {
            double re = 0.0;
            for (std::size_t i = 0; i < u.z.size(); ++i)
                re += u.z[i].real() * a.z[i].real() + u.z[i].imag() * a.z[i].imag();
            return cplx(std::exp((2.0 * re - a.abs2) / alpha), 0.0);
        },
        spec, params, opts);

    out.bound = std::exp(r * r / alpha) * ia.real();
    out.ok = out.ball <= out.bound * (1.0 + 1e-8);
    return out;
}

int overlap_probe(const LatticeWindow& window, int samples_per_dim, std::uint64_t seed) {
    window.validate();
    const std::vector<ComplexPoint> pts = lattice_points(window, kDefaultLatticeCap);
    const double r2 = 4.0 * window.spacing * window.spacing;  // (2r)^2
    const int dims = 2 * window.params.n;

    Rng rng(seed);
    const int total_samples = samples_per_dim * samples_per_dim * (dims > 2 ? 8 : 1);
    int worst = 0;
    for (int s = 0; s < total_samples; ++s) {
        std::vector<cplx> z(static_cast<std::size_t>(window.params.n));
        for (int i = 0; i < window.params.n; ++i)
            z[static_cast<std::size_t>(i)] = cplx(rng.uniform(-window.half_width, window.half_width),
                                                  rng.uniform(-window.half_width, window.half_width));
        const ComplexPoint sample{std::move(z)};
        int inside = 0;
        for (const ComplexPoint& p : pts) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < p.z.size(); ++i) d2 += std::norm(sample.z[i] - p.z[i]);
            if (d2 <= r2) ++inside;
        }
        worst = std::max(worst, inside);
    }
    return worst;
}

}  // namespace phfock
