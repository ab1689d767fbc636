#pragma once

#include <Eigen/Dense>

#include "phfock/measures.hpp"
#include "phfock/quadrature.hpp"
#include "phfock/types.hpp"

namespace phfock {

// Truncated matrix of the quadratic form  (j,k) -> integral of
// b_k(w) * conj(b_j(w)) * e^{-|w|^2/alpha} against the measure.  Measure
// symbols carry no (alpha pi)^{-n} prefactor; function symbols (see
// from_bounded_symbol) fold it into the measure so the constant symbol 1
// yields the identity matrix.
struct AssemblyStats {
    double tol = 0.0;
    std::size_t nodes = 0;        // quadrature nodes at the accepted level
    int level = 0;                // refinement level accepted
    bool exact = false;           // closed-form/finite-sum path, no quadrature
    double hermitian_defect = 0;  // max |entry - adjoint entry| before symmetrization
};

struct ToeplitzMatrix {
    FockParams params;
    BasisTruncation trunc;
    Eigen::MatrixXcd mat;
    AssemblyStats stats;
};

struct AssembleOptions {
    double tol = 1e-10;
    int max_level = 4;
    int threads = 0;        // 0 = hardware concurrency
    bool force_full = false;  // bypass the radial fast path (cross-validation)
};

// Dispatches to the radial fast path (exactly diagonal result) whenever the
// measure allows it, otherwise runs deterministic chunked quadrature.
// Exact finite sums for atom sets and radial shells.
ToeplitzMatrix assemble(const MeasureSpec& spec, const BasisTruncation& trunc,
                        const FockParams& params, const AssembleOptions& opts = {});

// Diagonal assembly through one-dimensional radial moments; requires a
// rotation-invariant measure (contract violation otherwise).  The entry for
// Anti(m) always equals the entry for Holo(m).
ToeplitzMatrix assemble_radial(const MeasureSpec& spec, const BasisTruncation& trunc,
                               const FockParams& params);

// Matrix for a bounded symbol g drawn from the density catalog: equivalent to
// assemble with the measure (alpha pi)^{-n} g dA, so g == 1 gives the identity.
ToeplitzMatrix from_bounded_symbol(const MeasureSpec& density, const BasisTruncation& trunc,
                                   const FockParams& params, const AssembleOptions& opts = {});

// Integral of u^{2t} e^{-|u|^2/alpha} against the measure, in closed form for
// every rotation-invariant catalog entry.  Feeds the radial fast path.
double radial_moment(const MeasureSpec& spec, int t, const FockParams& params);

// Sup norm of a catalog density, for the |T_g| <= |g|_inf bound.
double density_sup_norm(const MeasureSpec& density);

// Holo/Anti block structure.  M is the holomorphic block (contains the
// constant), N the conjugate block.
struct BlockDecomposition {
    int holo_count = 0;
    Eigen::MatrixXcd mm, mn, nm, nn;
};
BlockDecomposition blocks(const ToeplitzMatrix& T);

// Matrix-vector action in basis coordinates.
Eigen::VectorXcd apply(const ToeplitzMatrix& T, const Eigen::VectorXcd& coeffs);

}  // namespace phfock
