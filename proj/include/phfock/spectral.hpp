#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phfock/carleson.hpp"
#include "phfock/toeplitz.hpp"

namespace phfock {

struct SpectralSummary {
    int degree = 0;
    Eigen::VectorXd eigenvalues;       // descending
    Eigen::VectorXd singular_values;   // |eigenvalues|, descending
    double operator_norm = 0.0;
    double trace = 0.0;
    std::vector<std::pair<double, double>> schatten;  // (p, (sum sigma^p)^{1/p})
};

// Hermitian eigendecomposition with a residual guarantee: every pair satisfies
// |T v - lambda v| <= 1e-8 |T|.  p < 1 is rejected.
SpectralSummary spectral_summary(const ToeplitzMatrix& T, const std::vector<double>& p_list);

// Trace-class verdict via the exact target integral
//   target = integral of (2 e^{|u|^2/alpha} - 1) e^{-|u|^2/alpha} dmu
//          = 2 mu(C^n) - (Gaussian mass of mu),
// both in closed form for the catalog.  Truncated traces must rise
// monotonically toward the target inside the sandwich mu <= target <= 2 mu.
struct TraceClassReport {
    bool finite = false;
    double target = 0.0;        // +inf when not trace class
    double total_mass = 0.0;    // mu(C^n)
    std::vector<std::pair<int, double>> traces;  // (D, truncated trace)
    bool monotone = false;
    bool sandwich_ok = false;   // mu <= target <= 2 mu
    bool limit_ok = false;      // target/2 <= trace(D_max) <= target
    std::string verdict;        // "trace class" / "not trace class"
};
TraceClassReport trace_class_check(const MeasureSpec& spec, const FockParams& params,
                                   const std::vector<int>& trunc_list);

// Necessity-side diagnostics for S_p membership: truncated S_p norms across
// degrees, the lattice ball-mass l^p sum, and the finite-dimensional diagonal
// inequality sum |T_kk|^p <= (S_p norm)^p on the holomorphic block.
struct SchattenProbeEntry {
    int degree = 0;
    double sp_norm = 0.0;
    double diag_lp = 0.0;  // (sum over Holo diag |T_kk|^p)^{1/p}
    bool diag_ok = false;
};
struct SchattenNecessityReport {
    double p = 0.0;
    std::vector<SchattenProbeEntry> entries;
    bool cauchy = false;       // successive S_p differences shrink
    double mass_lp_sum = 0.0;  // from carleson_scan
    std::string vanishing;     // carried over from the scan
};
SchattenNecessityReport schatten_necessity_probe(const MeasureSpec& spec, const FockParams& params,
                                                 double p, const LatticeWindow& window,
                                                 const std::vector<int>& trunc_list);

// Sufficiency bound for function symbols in L^p(dA):
//   sum |lambda_j|^p <= 2 (alpha pi)^{-n} integral |g|^p dA,
// with the right side in closed form per catalog density.
struct LpSymbolReport {
    double p = 0.0;
    double rhs = 0.0;
    std::vector<std::pair<int, double>> lhs;  // (D, sum |lambda|^p)
    bool ok = false;
};
LpSymbolReport lp_symbol_sufficiency_check(const MeasureSpec& density, double p,
                                           const FockParams& params,
                                           const std::vector<int>& trunc_list);
double symbol_lp_integral(const MeasureSpec& density, double p, const FockParams& params);

// Spectral-tail compactness diagnostics cross-referenced with the lattice
// vanishing verdict.  Truncation can never certify non-compactness, so
// agreement is reported, not asserted.
inline constexpr double kTailRatioThreshold = 0.3;  // sigma_5/sigma_0 for decay
inline constexpr double kFlatSpectrumThreshold = 0.9;

struct CompactnessEntry {
    int degree = 0;
    double tail_ratio = 0.0;   // sigma[5]/sigma[0] (0 when rank < 6)
    double flatness = 0.0;     // sigma_min/sigma_max
    bool tail_decay = false;
    bool flat = false;
};
struct CompactnessReport {
    std::vector<CompactnessEntry> entries;
    std::string vanishing;  // lattice verdict
    bool agree = false;     // decay <-> vanishing yes, flat <-> vanishing no
};
CompactnessReport compactness_probe(const MeasureSpec& spec, const FockParams& params,
                                    const std::vector<int>& trunc_list,
                                    const LatticeWindow& window);

}  // namespace phfock
