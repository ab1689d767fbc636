#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "phfock/util.hpp"

namespace phfock {

// Gaussian weight parameter alpha > 0 and complex dimension n.
struct FockParams {
    double alpha = 1.0;
    int n = 1;

    void validate() const {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw std::invalid_argument("FockParams: alpha must be positive and finite");
        if (n < 1 || n > 4)
            throw std::invalid_argument("FockParams: n out of supported range [1,4]");
    }
};

struct MultiIndex {
    std::vector<int> m;

    int order() const {
        int t = 0;
        for (int mi : m) t += mi;
        return t;
    }
    double log_norm_factorial() const {  // log prod m_i!
        double s = 0.0;
        for (int mi : m) s += log_factorial(mi);
        return s;
    }
    bool operator==(const MultiIndex& o) const { return m == o.m; }
};

enum class BasisKind { holo, anti };

struct BasisIndex {
    BasisKind kind;
    MultiIndex m;
};

// A point of C^n with |z|^2 cached.
struct ComplexPoint {
    std::vector<cplx> z;
    double abs2 = 0.0;

    ComplexPoint() = default;
    explicit ComplexPoint(std::vector<cplx> coords) : z(std::move(coords)) {
        for (const cplx& zi : z) abs2 += std::norm(zi);
    }
    explicit ComplexPoint(cplx z1) : z{z1}, abs2(std::norm(z1)) {}

    int dim() const { return static_cast<int>(z.size()); }
};

// Finite basis: all Holo(m) with |m| <= D in graded-lex order, then all Anti(m)
// with 1 <= |m| <= D in the same order.  Size is 2*C(n+D,n) - 1.
struct BasisTruncation {
    int degree = 0;
    int n = 1;
    int holo_count = 0;
    std::vector<BasisIndex> indices;

    int size() const { return static_cast<int>(indices.size()); }
    int anti_count() const { return size() - holo_count; }
    const BasisIndex& at(int j) const { return indices.at(static_cast<std::size_t>(j)); }

    static BasisTruncation build(const FockParams& params, int degree);
};

}  // namespace phfock
