#include "phfock/basis.hpp"

#include <cmath>

namespace phfock {

namespace {

// multi-indices of total order `total` over `n` slots, graded-lex order
// (first coordinate largest first), appended to out
void emit_compositions(int total, int n, std::vector<int>& scratch, int pos,
                       std::vector<MultiIndex>& out) {
    if (pos == n - 1) {
        scratch[pos] = total;
        out.push_back(MultiIndex{scratch});
        return;
    }
    for (int first = total; first >= 0; --first) {
        scratch[pos] = first;
        emit_compositions(total - first, n, scratch, pos + 1, out);
    }
}

std::vector<MultiIndex> graded_lex_indices(int n, int degree) {
    std::vector<MultiIndex> out;
    std::vector<int> scratch(static_cast<std::size_t>(n), 0);
    for (int t = 0; t <= degree; ++t) emit_compositions(t, n, scratch, 0, out);
    return out;
}

}  // namespace

BasisTruncation BasisTruncation::build(const FockParams& params, int degree) {
    params.validate();
    if (degree < 0) throw std::invalid_argument("BasisTruncation: degree must be >= 0");
    BasisTruncation trunc;
    trunc.degree = degree;
    trunc.n = params.n;
    const std::vector<MultiIndex> all = graded_lex_indices(params.n, degree);
    trunc.holo_count = static_cast<int>(all.size());
    trunc.indices.reserve(2 * all.size() - 1);
    for (const MultiIndex& m : all) trunc.indices.push_back(BasisIndex{BasisKind::holo, m});
    for (const MultiIndex& m : all) {
        if (m.order() == 0) continue;  // conjugate of the constant is not a new element
        trunc.indices.push_back(BasisIndex{BasisKind::anti, m});
    }
    const double expected = 2.0 * binomial(params.n + degree, params.n) - 1.0;
    if (static_cast<double>(trunc.indices.size()) != expected)
        throw std::logic_error("BasisTruncation: size formula violated");
    return trunc;
}

cplx eval_basis(const BasisIndex& idx, const ComplexPoint& z, const FockParams& params) {
    if (z.dim() != static_cast<int>(idx.m.m.size()))
        throw std::invalid_argument("eval_basis: point dimension does not match index");
    cplx mono(1.0, 0.0);
    for (std::size_t i = 0; i < idx.m.m.size(); ++i)
        for (int k = 0; k < idx.m.m[i]; ++k) mono *= z.z[i];
    const double log_norm =
        0.5 * (idx.m.order() * std::log(params.alpha) + idx.m.log_norm_factorial());
    cplx val = mono * std::exp(-log_norm);
    return idx.kind == BasisKind::holo ? val : std::conj(val);
}

cplx eval_basis_weighted(const BasisIndex& idx, const ComplexPoint& z, const FockParams& params) {
    if (z.dim() != static_cast<int>(idx.m.m.size()))
        throw std::invalid_argument("eval_basis_weighted: point dimension does not match index");
    double log_mag = -z.abs2 / (2.0 * params.alpha) -
                     0.5 * (idx.m.order() * std::log(params.alpha) + idx.m.log_norm_factorial());
    double phase = 0.0;
    for (std::size_t i = 0; i < idx.m.m.size(); ++i) {
        const int mi = idx.m.m[i];
        if (mi == 0) continue;
        const double a = std::abs(z.z[i]);
        if (a == 0.0) return cplx(0.0, 0.0);
        log_mag += mi * std::log(a);
        phase += mi * std::arg(z.z[i]);
    }
    if (log_mag < -700.0) return cplx(0.0, 0.0);  // underflow floor
    const cplx val = std::polar(std::exp(log_mag), phase);
    return idx.kind == BasisKind::holo ? val : std::conj(val);
}

std::vector<cplx> eval_basis_weighted_all(const BasisTruncation& trunc, const ComplexPoint& z,
                                          const FockParams& params) {
    std::vector<cplx> out(static_cast<std::size_t>(trunc.size()));
    std::vector<cplx> scratch;
    eval_basis_weighted_fill(trunc, z, params, scratch, out.data());
    return out;
}

void eval_basis_weighted_fill(const BasisTruncation& trunc, const ComplexPoint& z,
                              const FockParams& params, std::vector<cplx>& scratch, cplx* out) {
    const int n = trunc.n;
    const int degree = trunc.degree;
    const std::size_t stride = static_cast<std::size_t>(degree) + 1;
    scratch.assign(static_cast<std::size_t>(n) * stride, cplx(0.0, 0.0));
    // pw[i][k] = z_i^k / sqrt(alpha^k k!), built by the recurrence
    // pw[i][k] = pw[i][k-1] * z_i / sqrt(alpha k); magnitudes stay in range for
    // the |z| the quadrature domains reach.
    for (int i = 0; i < n; ++i) {
        cplx* pw = scratch.data() + static_cast<std::size_t>(i) * stride;
        pw[0] = cplx(1.0, 0.0);
        for (int k = 1; k <= degree; ++k)
            pw[static_cast<std::size_t>(k)] =
                pw[static_cast<std::size_t>(k - 1)] * z.z[static_cast<std::size_t>(i)] /
                std::sqrt(params.alpha * k);
    }
    const double weight = std::exp(-z.abs2 / (2.0 * params.alpha));
    for (int j = 0; j < trunc.size(); ++j) {
        const BasisIndex& idx = trunc.at(j);
        cplx v(weight, 0.0);
        for (int i = 0; i < n; ++i)
            v *= scratch[static_cast<std::size_t>(i) * stride +
                         static_cast<std::size_t>(idx.m.m[static_cast<std::size_t>(i)])];
        out[j] = idx.kind == BasisKind::holo ? v : std::conj(v);
    }
}

}  // namespace phfock
