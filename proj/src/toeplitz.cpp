#include "phfock/toeplitz.hpp"

#include <cmath>
#include <thread>

#include "phfock/basis.hpp"
#include "phfock/util.hpp"

namespace phfock {

namespace {

constexpr double kPi = 3.14159265358979323846;

int round_up8(int v) { return ((v + 7) / 8) * 8; }

// One quadrature/discretization level presented as a flat, deterministic node
// stream: decode(flat, pt) fills the point in place and returns the measure
// weight carried by that node.  The Gaussian e^{-|w|^2/alpha} is NOT part of
// the weight; it enters through the weighted basis evaluations.
struct NodeStream {
    std::size_t count = 0;
    std::function<double(std::size_t, ComplexPoint&)> decode;
};

NodeStream plane_stream(const PolarGrid& grid, const MeasureSpec& spec, const FockParams& params) {
    const std::size_t nr = grid.r.size(), na = grid.unit.size();
    const std::size_t per = nr * na;
    std::size_t total = 1;
    for (int i = 0; i < params.n; ++i) total *= per;
    NodeStream s;
    s.count = total;
    s.decode = [grid, &spec, n = params.n, per, na](std::size_t flat, ComplexPoint& pt) {
        std::size_t rest = flat;
        double w = 1.0, abs2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const std::size_t ci = rest % per;
            rest /= per;
            const std::size_t ir = ci / na, ia = ci % na;
            pt.z[static_cast<std::size_t>(i)] = grid.r[ir] * grid.unit[ia];
            abs2 += grid.r[ir] * grid.r[ir];
            w *= grid.rw[ir] * grid.aw;
        }
        pt.abs2 = abs2;
        return w * density_value(spec, pt);
    };
    return s;
}

NodeStream ball_stream(const BallGrid& grid, double c) {
    NodeStream s;
    s.count = grid.pts.size();
    s.decode = [&grid, c](std::size_t flat, ComplexPoint& pt) {
        pt = grid.pts[flat];
        return c * grid.w[flat];
    };
    return s;
}

NodeStream atom_stream(const AtomSet& atoms) {
    NodeStream s;
    s.count = atoms.atoms.size();
    s.decode = [&atoms](std::size_t flat, ComplexPoint& pt) {
        pt = atoms.atoms[flat].point;
        return atoms.atoms[flat].weight;
    };
    return s;
}

// Spheres discretized exactly for the trigonometric/polynomial integrands the
// assembly meets: angles need more than 2*degree frequencies, the n=2 radial
// parameter u needs a Gauss rule exact past degree 2*degree.
struct SphereNodes {
    std::vector<ComplexPoint> pts;
    std::vector<double> w;  // mean weights, sum to 1 per sphere
};

SphereNodes sphere_nodes_exact(double radius, const FockParams& params, int degree) {
    SphereNodes out;
    if (params.n == 1) {
        const int na = std::max(32, round_up8(2 * degree + 8));
        out.pts.reserve(static_cast<std::size_t>(na));
        out.w.assign(static_cast<std::size_t>(na), 1.0 / na);
        for (int j = 0; j < na; ++j) {
            const double th = 2.0 * kPi * j / na;
            out.pts.emplace_back(radius * cplx(std::cos(th), std::sin(th)));
        }
        return out;
    }
    if (params.n == 2) {
        const int nu = std::max(8, degree + 2);
        const int nphi = std::max(16, round_up8(2 * degree + 8));
        const Rule1D uu = gauss_legendre(nu, 0.0, 1.0);
        out.pts.reserve(static_cast<std::size_t>(nu) * nphi * nphi);
        out.w.reserve(out.pts.capacity());
        for (int k = 0; k < nu; ++k) {
            const double u = uu.x[static_cast<std::size_t>(k)];
            const double c1 = std::sqrt(1.0 - u), c2 = std::sqrt(u);
            const double wu = uu.w[static_cast<std::size_t>(k)] / (static_cast<double>(nphi) * nphi);
            for (int j1 = 0; j1 < nphi; ++j1) {
                const double a1 = 2.0 * kPi * j1 / nphi;
                const cplx e1(std::cos(a1), std::sin(a1));
                for (int j2 = 0; j2 < nphi; ++j2) {
                    const double a2 = 2.0 * kPi * j2 / nphi;
                    const cplx e2(std::cos(a2), std::sin(a2));
                    out.pts.emplace_back(std::vector<cplx>{radius * c1 * e1, radius * c2 * e2});
                    out.w.push_back(wu);
                }
            }
        }
        return out;
    }
    throw std::invalid_argument("sphere_nodes_exact: only n = 1 or 2 supported");
}

// Deterministic chunked accumulation of sum_i w_i phi(w_i) phi(w_i)^H with
// phi the weighted basis vector.  Work is split into a fixed number of frames
// that does not depend on the thread count, each frame reduced sequentially,
// frames combined pairwise -- identical bytes for any --threads value.
Eigen::MatrixXcd accumulate_stream(const BasisTruncation& trunc, const FockParams& params,
                                   const NodeStream& stream, int threads) {
    const int size = trunc.size();
    const std::size_t chunk = 1024;
    const std::size_t frames =
        stream.count >= 64 * chunk ? 64 : std::max<std::size_t>(1, (stream.count + chunk - 1) / chunk);

    std::vector<Eigen::MatrixXcd> partial(frames, Eigen::MatrixXcd::Zero(size, size));
    const int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    parallel_for(frames, nthreads, [&](std::size_t f) {
        const std::size_t lo = f * stream.count / frames;
        const std::size_t hi = (f + 1) * stream.count / frames;
        Eigen::MatrixXcd phi(size, static_cast<Eigen::Index>(chunk));
        Eigen::VectorXd wv(static_cast<Eigen::Index>(chunk));
        ComplexPoint pt;
        pt.z.resize(static_cast<std::size_t>(params.n));
        std::vector<cplx> scratch;
        for (std::size_t start = lo; start < hi; start += chunk) {
            const std::size_t len = std::min(chunk, hi - start);
            for (std::size_t i = 0; i < len; ++i) {
                wv[static_cast<Eigen::Index>(i)] = stream.decode(start + i, pt);
                eval_basis_weighted_fill(trunc, pt, params, scratch,
                                         phi.col(static_cast<Eigen::Index>(i)).data());
            }
            const auto cols = phi.leftCols(static_cast<Eigen::Index>(len));
            const auto wd = wv.head(static_cast<Eigen::Index>(len));
            partial[f].noalias() += (cols * wd.asDiagonal()) * cols.adjoint();
        }
    });
    // Entry (j,k) of the target integrates b_k conj(b_j) = (phi phi^H)_{kj}.
    return pairwise_sum(partial).transpose();
}

ToeplitzMatrix finalize(const FockParams& params, const BasisTruncation& trunc,
                        Eigen::MatrixXcd m, AssemblyStats stats) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    stats.hermitian_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (stats.hermitian_defect > 1e-6 * scale)
        throw std::runtime_error("toeplitz assembly: hermitian defect " +
                                 std::to_string(stats.hermitian_defect) +
                                 " exceeds the abort threshold");
    ToeplitzMatrix T;
    T.params = params;
    T.trunc = trunc;
    T.mat = 0.5 * (m + m.adjoint().eval());
    T.stats = stats;
    return T;
}

ToeplitzMatrix assemble_full(const MeasureSpec& spec, const BasisTruncation& trunc,
                             const FockParams& params, const AssembleOptions& opts) {
    AssemblyStats stats;
    stats.tol = opts.tol;

    if (const auto* atoms = std::get_if<AtomSet>(&spec)) {
        const NodeStream s = atom_stream(*atoms);
        Eigen::MatrixXcd m = accumulate_stream(trunc, params, s, opts.threads);
        stats.exact = true;
        stats.nodes = s.count;
        return finalize(params, trunc, std::move(m), stats);
    }

    if (const auto* shells = std::get_if<RadialShells>(&spec)) {
        const int size = trunc.size();
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
        std::size_t nodes = 0;
        for (const Shell& sh : shells->shells) {
            const SphereNodes sn = sphere_nodes_exact(sh.radius, params, trunc.degree);
            NodeStream s;
            s.count = sn.pts.size();
            const double mass = sh.weight * std::exp(sh.radius * sh.radius / params.alpha);
            s.decode = [&sn, mass](std::size_t flat, ComplexPoint& pt) {
                pt = sn.pts[flat];
                return mass * sn.w[flat];
            };
            m += accumulate_stream(trunc, params, s, opts.threads);
            nodes += s.count;
        }
        stats.exact = true;
        stats.nodes = nodes;
        return finalize(params, trunc, std::move(m), stats);
    }

    if (const auto* ball = std::get_if<BallIndicator>(&spec)) {
        const int cap = params.n == 2 ? 1 : std::min(opts.max_level, 3);
        Eigen::MatrixXcd prev;
        for (int level = 0; level <= cap; ++level) {
            const BallGrid grid = ball_grid(ball->center, ball->radius, params, level);
            Eigen::MatrixXcd cur =
                accumulate_stream(trunc, params, ball_stream(grid, ball->c), opts.threads);
            stats.nodes = grid.pts.size();
            stats.level = level;
            if (level > 0) {
                const double diff = (cur - prev).cwiseAbs().maxCoeff();
                if (diff <= opts.tol * std::max(1.0, cur.cwiseAbs().maxCoeff()))
                    return finalize(params, trunc, std::move(cur), stats);
            }
            prev = std::move(cur);
        }
        throw QuadratureNonConvergence(prev.cwiseAbs().maxCoeff(), 0.0);
    }

    // Full-plane densities.
    const PlaneRule rule = PlaneRule::build(params, trunc.degree, opts.tol);
    const bool refine_angular = !is_torus_invariant(spec);
    Eigen::MatrixXcd prev;
    for (int level = 0; level <= opts.max_level; ++level) {
        const PolarGrid grid = rule.grid(level, refine_angular);
        const NodeStream s = plane_stream(grid, spec, params);
        Eigen::MatrixXcd cur = accumulate_stream(trunc, params, s, opts.threads);
        stats.nodes = s.count;
        stats.level = level;
        if (level > 0) {
            const double diff = (cur - prev).cwiseAbs().maxCoeff();
            if (diff <= opts.tol * std::max(1.0, cur.cwiseAbs().maxCoeff()))
                return finalize(params, trunc, std::move(cur), stats);
        }
        prev = std::move(cur);
    }
    throw QuadratureNonConvergence(prev.cwiseAbs().maxCoeff(), 0.0);
}

}  // namespace

double radial_moment(const MeasureSpec& spec, int t, const FockParams& params) {
    validate_measure(spec, params);
    if (t < 0) throw std::invalid_argument("radial_moment: t must be >= 0");
    if (!is_radial(spec))
        throw std::invalid_argument("radial_moment: rotation-invariant measure required");
    const double alpha = params.alpha;
    const int n = params.n;
    const double shape = log_factorial(t + n - 1) - log_factorial(n - 1);

    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) {
                return m.c * std::pow(kPi, n) * std::exp(shape + (t + n) * std::log(alpha));
            } else if constexpr (std::is_same_v<T, GaussianDensity>) {
                const double g = 1.0 / alpha + m.beta;
                return m.c * std::pow(kPi, n) * std::exp(shape - (t + n) * std::log(g));
            } else if constexpr (std::is_same_v<T, RadialPowerGaussian>) {
                const double g = m.s + 1.0 / alpha;
                return m.c * std::pow(kPi, n) *
                       std::exp(log_factorial(t + m.k + n - 1) - log_factorial(n - 1) -
                                (t + m.k + n) * std::log(g));
            } else if constexpr (std::is_same_v<T, BallIndicator>) {
                const double x = m.radius * m.radius / alpha;
                return m.c * std::pow(kPi, n) * std::exp(shape + (t + n) * std::log(alpha)) *
                       regularized_gamma_p(t + n, x);
            } else if constexpr (std::is_same_v<T, RadialShells>) {
                std::vector<double> terms(m.shells.size());
                for (std::size_t i = 0; i < m.shells.size(); ++i)
                    terms[i] = m.shells[i].weight *
                               std::pow(m.shells[i].radius * m.shells[i].radius, t);
                return pairwise_sum(terms);
            } else {
                throw std::invalid_argument("radial_moment: unsupported spec");
            }
        },
        spec);
}

ToeplitzMatrix assemble_radial(const MeasureSpec& spec, const BasisTruncation& trunc,
                               const FockParams& params) {
    if (!is_radial(spec))
        throw std::invalid_argument("assemble_radial: rotation-invariant measure required");
    const int size = trunc.size();
    const int n = params.n;

    std::vector<double> moment(static_cast<std::size_t>(trunc.degree) + 1);
    for (int t = 0; t <= trunc.degree; ++t)
        moment[static_cast<std::size_t>(t)] = radial_moment(spec, t, params);

    // Sphere mean of |z^m|^2 at radius u is u^{2|m|} m! (n-1)! / (n-1+|m|)!,
    // so after the 1/(alpha^|m| m!) normalization the diagonal depends on |m|
    // only.  Angular mismatch kills everything off the diagonal exactly.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
    for (int j = 0; j < size; ++j) {
        const int t = trunc.at(j).m.order();
        m(j, j) = moment[static_cast<std::size_t>(t)] *
                  std::exp(log_factorial(n - 1) - log_factorial(n - 1 + t) -
                           t * std::log(params.alpha));
    }

    AssemblyStats stats;
    stats.exact = true;
    return finalize(params, trunc, std::move(m), stats);
}

ToeplitzMatrix assemble(const MeasureSpec& spec, const BasisTruncation& trunc,
                        const FockParams& params, const AssembleOptions& opts) {
    validate_measure(spec, params);
    if (trunc.n != params.n) throw std::invalid_argument("assemble: truncation dimension mismatch");
    if (!opts.force_full && is_radial(spec)) return assemble_radial(spec, trunc, params);
    return assemble_full(spec, trunc, params, opts);
}

ToeplitzMatrix from_bounded_symbol(const MeasureSpec& density, const BasisTruncation& trunc,
                                   const FockParams& params, const AssembleOptions& opts) {
    if (!is_density(density))
        throw std::invalid_argument("from_bounded_symbol: catalog density required");
    const double fold = std::pow(params.alpha * kPi, -params.n);
    MeasureSpec scaled = density;
    std::visit(
        [&](auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue> || std::is_same_v<T, GaussianDensity> ||
                          std::is_same_v<T, RadialPowerGaussian> || std::is_same_v<T, BallIndicator>)
                m.c *= fold;
        },
        scaled);
    return assemble(scaled, trunc, params, opts);
}

double density_sup_norm(const MeasureSpec& density) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ScaledLebesgue>) return m.c;
            else if constexpr (std::is_same_v<T, GaussianDensity>) return m.c;
            else if constexpr (std::is_same_v<T, BallIndicator>) return m.c;
            else if constexpr (std::is_same_v<T, RadialPowerGaussian>) {
                if (m.k == 0) return m.c;
                // max of u^{2k} e^{-s u^2} at u^2 = k/s
                return m.c * std::exp(m.k * (std::log(m.k / m.s) - 1.0));
            } else {
                throw std::invalid_argument("density_sup_norm: not a density");
            }
        },
        density);
}

BlockDecomposition blocks(const ToeplitzMatrix& T) {
    BlockDecomposition b;
    const int h = T.trunc.holo_count;
    const int a = T.trunc.anti_count();
    b.holo_count = h;
    b.mm = T.mat.topLeftCorner(h, h);
    b.mn = T.mat.topRightCorner(h, a);
    b.nm = T.mat.bottomLeftCorner(a, h);
    b.nn = T.mat.bottomRightCorner(a, a);
    return b;
}

Eigen::VectorXcd apply(const ToeplitzMatrix& T, const Eigen::VectorXcd& coeffs) {
    if (coeffs.size() != T.mat.rows())
        throw std::invalid_argument("apply: coefficient vector length mismatch");
    return T.mat * coeffs;
}

}  // namespace phfock
