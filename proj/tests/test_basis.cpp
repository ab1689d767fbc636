#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "phfock/basis.hpp"
#include "phfock/types.hpp"

using namespace phfock;

namespace {

ComplexPoint pt1(double re, double im = 0.0) { return ComplexPoint(cplx(re, im)); }

}  // namespace

TEST_CASE("truncation size is 2*C(n+D,n) - 1") {
    // The constant function lives only in the Holo block, so the Anti block
    // contributes one element fewer.
    struct Case { int n, D, size, holo; };
    const Case cases[] = {
        {1, 0, 1, 1},  {1, 6, 13, 7}, {2, 4, 29, 15}, {3, 2, 19, 10}, {2, 0, 1, 1},
    };
    for (const Case& c : cases) {
        const BasisTruncation t = BasisTruncation::build(FockParams{1.0, c.n}, c.D);
        CHECK(t.size() == c.size);
        CHECK(t.holo_count == c.holo);
        CHECK(t.anti_count() == c.size - c.holo);
    }
}

TEST_CASE("ordering: Holo block graded-lex, then Anti skipping order zero") {
    const BasisTruncation t = BasisTruncation::build(FockParams{1.0, 2}, 2);
    // Holo: (0,0) (1,0) (0,1) (2,0) (1,1) (0,2), then Anti from (1,0).
    REQUIRE(t.size() == 11);
    CHECK(t.at(0).kind == BasisKind::holo);
    CHECK(t.at(0).m.order() == 0);
    CHECK(t.at(1).m.m == std::vector<int>{1, 0});
    CHECK(t.at(2).m.m == std::vector<int>{0, 1});
    CHECK(t.at(3).m.m == std::vector<int>{2, 0});
    CHECK(t.at(4).m.m == std::vector<int>{1, 1});
    CHECK(t.at(5).m.m == std::vector<int>{0, 2});
    CHECK(t.at(6).kind == BasisKind::anti);
    CHECK(t.at(6).m.m == std::vector<int>{1, 0});
    for (int j = 0; j < t.size(); ++j) {
        const bool anti = j >= t.holo_count;
        CHECK((t.at(j).kind == BasisKind::anti) == anti);
        if (anti) CHECK(t.at(j).m.order() >= 1);
    }
    // Graded: order never decreases within a block.
    for (int j = 1; j < t.holo_count; ++j)
        CHECK(t.at(j).m.order() >= t.at(j - 1).m.order());
}

TEST_CASE("monomial values against hand-computed norms") {
    FockParams p1{1.0, 1};
    const BasisIndex h3{BasisKind::holo, MultiIndex{{3}}};
    // z^3 / sqrt(3!) at z = 2.
    CHECK(std::abs(eval_basis(h3, pt1(2.0), p1) - cplx(8.0 / std::sqrt(6.0), 0.0)) < 1e-14);

    // alpha scaling: z^2 / sqrt(alpha^2 2!) at z = 1+i is 2i / sqrt(8).
    FockParams p2{2.0, 1};
    const BasisIndex h2{BasisKind::holo, MultiIndex{{2}}};
    const cplx got = eval_basis(h2, pt1(1.0, 1.0), p2);
    CHECK(std::abs(got - cplx(0.0, 2.0 / std::sqrt(8.0))) < 1e-14);

    // n = 2 product: z1 z2^2 / sqrt(1! 2!) at (2, 1).
    FockParams pn2{1.0, 2};
    const BasisIndex h12{BasisKind::holo, MultiIndex{{1, 2}}};
    const ComplexPoint z(std::vector<cplx>{cplx(2.0, 0.0), cplx(1.0, 0.0)});
    CHECK(std::abs(eval_basis(h12, z, pn2) - cplx(2.0 / std::sqrt(2.0), 0.0)) < 1e-14);
}

TEST_CASE("anti elements are conjugates of their holo partners") {
    FockParams params{1.0, 1};
    const BasisIndex h{BasisKind::holo, MultiIndex{{4}}};
    const BasisIndex a{BasisKind::anti, MultiIndex{{4}}};
    for (double re : {0.3, -1.2, 2.0}) {
        const ComplexPoint z = pt1(re, 0.7 * re);
        CHECK(std::abs(eval_basis(a, z, params) - std::conj(eval_basis(h, z, params))) < 1e-14);
    }
}

TEST_CASE("weighted evaluation stays finite far outside the Gaussian core") {
    FockParams params{1.0, 1};
    const BasisIndex h6{BasisKind::holo, MultiIndex{{6}}};
    // Direct evaluation already overflows e^{|z|^2/2} territory near |z| = 40;
    // the log-domain route must return a clean 0-ish value, never inf/nan.
    const cplx far = eval_basis_weighted(h6, pt1(40.0), params);
    CHECK(std::isfinite(far.real()));
    CHECK(std::isfinite(far.imag()));
    CHECK(std::abs(far) < 1e-200);

    // And agree with the naive product at moderate points.
    for (double re : {0.5, 1.5, 3.0}) {
        const ComplexPoint z = pt1(re, -0.4);
        const cplx direct = eval_basis(h6, z, params) * std::exp(-0.5 * z.abs2);
        const cplx logged = eval_basis_weighted(h6, z, params);
        CHECK(std::abs(direct - logged) < 1e-13 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("batch and buffer evaluators match the scalar one") {
    FockParams params{1.0, 2};
    const BasisTruncation t = BasisTruncation::build(params, 5);
    const ComplexPoint z(std::vector<cplx>{cplx(0.8, -0.3), cplx(-1.1, 0.25)});

    const std::vector<cplx> all = eval_basis_weighted_all(t, z, params);
    REQUIRE(static_cast<int>(all.size()) == t.size());

    std::vector<cplx> scratch, filled(all.size());
    eval_basis_weighted_fill(t, z, params, scratch, filled.data());

    for (int j = 0; j < t.size(); ++j) {
        const cplx one = eval_basis_weighted(t.at(j), z, params);
        CHECK(std::abs(all[static_cast<std::size_t>(j)] - one) < 1e-14);
        CHECK(std::abs(filled[static_cast<std::size_t>(j)] - one) < 1e-13);
    }
}
