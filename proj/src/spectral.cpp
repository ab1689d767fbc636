#include "phfock/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "phfock/util.hpp"

namespace phfock {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SpectralSummary spectral_summary(const ToeplitzMatrix& T, const std::vector<double>& p_list) {
    for (double p : p_list)
        if (!(p >= 1.0))
            throw std::invalid_argument("spectral_summary: Schatten exponents below 1 are rejected");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(T.mat);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectral_summary: eigensolver failed to converge");

    const Eigen::Index size = T.mat.rows();
    SpectralSummary s;
    s.degree = T.trunc.degree;
    s.eigenvalues = solver.eigenvalues().reverse();  // ascending -> descending

    // The decomposition is dependency-backed; hold it to the residual contract
    // rather than trusting it blindly.
    const double norm_bound = s.eigenvalues.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < size; ++i) {
        const Eigen::VectorXcd v = solver.eigenvectors().col(size - 1 - i);
        const double resid = (T.mat * v - s.eigenvalues[i] * v).norm();
        if (resid > 1e-8 * std::max(1e-300, norm_bound))
            throw std::runtime_error("spectral_summary: eigenpair residual above contract");
    }

    s.singular_values = s.eigenvalues.cwiseAbs();
    std::sort(s.singular_values.data(), s.singular_values.data() + size, std::greater<double>());
    s.operator_norm = size > 0 ? s.singular_values[0] : 0.0;
    s.trace = s.eigenvalues.sum();
    for (double p : p_list) {
        std::vector<double> terms(static_cast<std::size_t>(size));
        for (Eigen::Index i = 0; i < size; ++i)
            terms[static_cast<std::size_t>(i)] =
                s.singular_values[i] > 0.0 ? std::pow(s.singular_values[i], p) : 0.0;
        s.schatten.emplace_back(p, std::pow(pairwise_sum(terms), 1.0 / p));
    }
    return s;
}

TraceClassReport trace_class_check(const MeasureSpec& spec, const FockParams& params,
                                   const std::vector<int>& trunc_list) {
    TraceClassReport rep;
    rep.total_mass = total_mass(spec, params);
    rep.finite = std::isfinite(rep.total_mass);
    rep.target = rep.finite ? 2.0 * rep.total_mass - total_gaussian_mass(spec, params)
                            : std::numeric_limits<double>::infinity();
    rep.verdict = rep.finite ? "trace class" : "not trace class";
    rep.sandwich_ok =
        rep.finite && rep.total_mass <= rep.target * (1.0 + 1e-12) && rep.target <= 2.0 * rep.total_mass * (1.0 + 1e-12);

    for (int d : trunc_list) {
        const BasisTruncation trunc = BasisTruncation::build(params, d);
        const ToeplitzMatrix T = assemble(spec, trunc, params);
        rep.traces.emplace_back(d, T.mat.trace().real());
    }
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.traces.size(); ++i)
        rep.monotone = rep.monotone && rep.traces[i].second >= rep.traces[i - 1].second - 1e-12;

    if (rep.finite && !rep.traces.empty()) {
        const double last = rep.traces.back().second;
        rep.limit_ok = last >= 0.5 * rep.target - 1e-12 && last <= rep.target * (1.0 + 1e-9);
    }
    return rep;
}

SchattenNecessityReport schatten_necessity_probe(const MeasureSpec& spec, const FockParams& params,
                                                 double p, const LatticeWindow& window,
                                                 const std::vector<int>& trunc_list) {
    if (!(p >= 1.0)) throw std::invalid_argument("schatten_necessity_probe: p must be >= 1");
    SchattenNecessityReport rep;
    rep.p = p;

    for (int d : trunc_list) {
        const BasisTruncation trunc = BasisTruncation::build(params, d);
        const ToeplitzMatrix T = assemble(spec, trunc, params);
        const SpectralSummary s = spectral_summary(T, {p});

        SchattenProbeEntry e;
        e.degree = d;
        e.sp_norm = s.schatten.front().second;
        std::vector<double> diag_terms(static_cast<std::size_t>(trunc.holo_count));
        for (int j = 0; j < trunc.holo_count; ++j)
            diag_terms[static_cast<std::size_t>(j)] = std::pow(std::abs(T.mat(j, j)), p);
        const double diag_sum = pairwise_sum(diag_terms);
        e.diag_lp = std::pow(diag_sum, 1.0 / p);
        // Schur-Horn: the diagonal of a Hermitian matrix is majorized by its
        // spectrum, so the p-th power sums compare directly.
        e.diag_ok = diag_sum <= std::pow(e.sp_norm, p) * (1.0 + 1e-10);
        rep.entries.push_back(e);
    }

    rep.cauchy = true;
    for (std::size_t i = 2; i < rep.entries.size(); ++i) {
        const double d1 = std::abs(rep.entries[i].sp_norm - rep.entries[i - 1].sp_norm);
        const double d0 = std::abs(rep.entries[i - 1].sp_norm - rep.entries[i - 2].sp_norm);
        rep.cauchy = rep.cauchy && d1 <= d0 + 1e-12;
    }

    const CarlesonReport scan = carleson_scan(spec, window, {p});
    rep.mass_lp_sum = scan.lp_sums.front().second;
    rep.vanishing = scan.vanishing;
    return rep;
}

double symbol_lp_integral(const MeasureSpec& density, double p, const FockParams& params) {
    if (!(p >= 1.0)) throw std::invalid_argument("symbol_lp_integral: p must be >= 1");
    const int n = params.n;
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) {
                return std::numeric_limits<double>::infinity();
            } else if constexpr (std::is_same_v<T, GaussianDensity>) {
                return std::pow(m.c, p) * std::pow(kPi / (p * m.beta), n);
            } else if constexpr (std::is_same_v<T, RadialPowerGaussian>) {
                const double a = p * m.k + n;  // Gamma parameter
                return std::pow(m.c, p) * std::pow(kPi, n) *
                       std::exp(std::lgamma(a) - log_factorial(n - 1) - a * std::log(p * m.s));
            } else if constexpr (std::is_same_v<T, BallIndicator>) {
                double vol = 1.0;
                for (int i = 1; i <= n; ++i) vol *= kPi * m.radius * m.radius / i;
                return std::pow(m.c, p) * vol;
            } else {
                throw std::invalid_argument("symbol_lp_integral: not a density");
            }
        },
        density);
}

LpSymbolReport lp_symbol_sufficiency_check(const MeasureSpec& density, double p,
                                           const FockParams& params,
                                           const std::vector<int>& trunc_list) {
    LpSymbolReport rep;
    rep.p = p;
    const double integral = symbol_lp_integral(density, p, params);
    if (!std::isfinite(integral))
        throw std::invalid_argument("lp_symbol_sufficiency_check: symbol is not in L^p(dA)");
    rep.rhs = 2.0 * std::pow(params.alpha * kPi, -params.n) * integral;

    rep.ok = true;
    for (int d : trunc_list) {
        const BasisTruncation trunc = BasisTruncation::build(params, d);
        const ToeplitzMatrix T = from_bounded_symbol(density, trunc, params);
        const SpectralSummary s = spectral_summary(T, {p});
        const double lhs = std::pow(s.schatten.front().second, p);
        rep.lhs.emplace_back(d, lhs);
        rep.ok = rep.ok && lhs <= rep.rhs * (1.0 + 1e-10);
    }
    return rep;
}

CompactnessReport compactness_probe(const MeasureSpec& spec, const FockParams& params,
                                    const std::vector<int>& trunc_list,
                                    const LatticeWindow& window) {
    CompactnessReport rep;
    for (int d : trunc_list) {
        const BasisTruncation trunc = BasisTruncation::build(params, d);
        const ToeplitzMatrix T = assemble(spec, trunc, params);
        const SpectralSummary s = spectral_summary(T, {});
        CompactnessEntry e;
        e.degree = d;
        const Eigen::Index size = s.singular_values.size();
        const double head = size > 0 ? s.singular_values[0] : 0.0;
        e.tail_ratio = (size > 5 && head > 0.0) ? s.singular_values[5] / head : 0.0;
        e.flatness = (size > 0 && head > 0.0) ? s.singular_values[size - 1] / head : 0.0;
        e.tail_decay = e.tail_ratio <= kTailRatioThreshold;
        e.flat = e.flatness >= kFlatSpectrumThreshold;
        rep.entries.push_back(e);
    }

    const CarlesonReport scan = carleson_scan(spec, window, {});
    rep.vanishing = scan.vanishing;
    if (!rep.entries.empty()) {
        const CompactnessEntry& last = rep.entries.back();
        if (rep.vanishing == "yes")
            rep.agree = last.tail_decay && !last.flat;
        else if (rep.vanishing == "no")
            rep.agree = last.flat && !last.tail_decay;
        else
            rep.agree = false;
    }
    return rep;
}

}  // namespace phfock
