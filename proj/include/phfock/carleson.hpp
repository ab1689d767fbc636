#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phfock/measures.hpp"
#include "phfock/types.hpp"

namespace phfock {

// Finite scan window: the lattice r Z^{2n} restricted to points whose every
// real coordinate lies in [-L, L].
struct LatticeWindow {
    double spacing = 1.0;    // r
    double half_width = 4.0;  // L
    FockParams params;

    void validate() const;
    std::size_t point_count() const;  // (2 floor(L/r) + 1)^{2n}
};

inline constexpr std::size_t kDefaultLatticeCap = 200000;

// Thrown when a requested enumeration exceeds its configured cap; callers map
// this to the resource-failure exit path.
struct ResourceLimit : std::runtime_error {
    std::size_t requested, cap;
    ResourceLimit(std::size_t req, std::size_t c)
        : std::runtime_error("lattice point count " + std::to_string(req) +
                             " exceeds cap " + std::to_string(c) +
                             " (increase spacing or shrink the window)"),
          requested(req), cap(c) {}
};

// Deterministic enumeration: sorted by (|z|, lexicographic on coordinates),
// origin first.
std::vector<ComplexPoint> lattice_points(const LatticeWindow& window,
                                         std::size_t cap = kDefaultLatticeCap);

struct AnnulusStat {
    int index = 0;         // ring [index*delta, (index+1)*delta), delta = 2r
    double mid_radius = 0;
    double sup_mass = 0;
    std::size_t points = 0;
};

struct CarlesonReport {
    LatticeWindow window;
    std::vector<ComplexPoint> points;
    std::vector<double> masses;  // ball mass at radius r around each point
    double sup_mass = 0.0;
    std::vector<AnnulusStat> annuli;
    std::vector<std::pair<double, double>> lp_sums;  // (p, sum of mass^p)
    double trend_slope = 0.0;       // Theil-Sen slope of log sup-mass vs radius
    double support_radius = 0.0;    // effective support of the measure
    bool window_adequate = false;   // support fits inside L - 2r (or uniform)
    std::string bounded;            // yes / no / inconclusive
    std::string vanishing;          // yes / no / inconclusive
};

// Decision constants for the finite-window verdicts.
inline constexpr double kTrendSlopeEps = 0.05;
inline constexpr double kVanishThreshold = 1e-2;

CarlesonReport carleson_scan(const MeasureSpec& spec, const LatticeWindow& window,
                             const std::vector<double>& p_list,
                             std::size_t cap = kDefaultLatticeCap, int threads = 0);

// The explicit-constant necessity inequality
//   mu(B(a,r)) <= e^{r^2/alpha} * I(a),
// where I(a) integrates |f_a|^2 e^{-|z|^2/alpha} dmu for the normalized
// holomorphic kernel function f_a(z) = e^{<z,a>/alpha - |a|^2/(2 alpha)}.
struct NecessityCheck {
    double ball = 0.0;     // left side
    double bound = 0.0;    // right side
    bool ok = false;       // ball <= bound within 1e-8 relative slack
};
NecessityCheck necessity_constant_check(const MeasureSpec& spec, const ComplexPoint& a, double r,
                                        const FockParams& params);

// Empirical overlap constant: max over deterministic samples of how many balls
// B(z_k, 2r) contain the sample point; bounded by 5^{2n}.
int overlap_probe(const LatticeWindow& window, int samples_per_dim, std::uint64_t seed);

}  // namespace phfock
