#pragma once

#include "phfock/types.hpp"

namespace phfock {

// Monomial basis element value b_j(z).  Holo(m): z^m / sqrt(alpha^|m| m!),
// Anti(m) is its complex conjugate.  Direct product evaluation; safe at desk
// scale but can overflow for very large |z| -- use eval_basis_weighted there.
cplx eval_basis(const BasisIndex& idx, const ComplexPoint& z, const FockParams& params);

// b_j(z) * exp(-|z|^2 / (2 alpha)), evaluated in the log domain so large |z|
// underflows cleanly to 0 instead of producing inf/nan.
cplx eval_basis_weighted(const BasisIndex& idx, const ComplexPoint& z, const FockParams& params);

// All weighted basis values at once (same order as the truncation).
std::vector<cplx> eval_basis_weighted_all(const BasisTruncation& trunc, const ComplexPoint& z,
                                          const FockParams& params);

// Buffer-filling variant for hot loops: per-coordinate power tables instead of
// one log/exp round trip per entry.  `out` must hold trunc.size() values.
// `scratch` is reused across calls; it grows to n * (degree + 1).
void eval_basis_weighted_fill(const BasisTruncation& trunc, const ComplexPoint& z,
                              const FockParams& params, std::vector<cplx>& scratch, cplx* out);

}  // namespace phfock
