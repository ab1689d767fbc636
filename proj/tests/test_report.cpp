#include "doctest.h"

#include <cstdlib>
#include <string>
#include <variant>

#include "phfock/report.hpp"
#include "phfock/toeplitz.hpp"

using namespace phfock;

namespace {

const FockParams kP1{1.0, 1};

ComplexPoint pt(double re, double im = 0.0) { return ComplexPoint(cplx(re, im)); }

}  // namespace

TEST_CASE("full config parses into every field") {
    const std::string text = R"({
        "params": {"alpha": 0.5, "n": 2},
        "measure": {"kind": "gaussian_density", "c": 2.0, "beta": 1.5,
                    "center": [[0.5, -0.25], [0.0, 1.0]]},
        "degrees": [2, 4, 6],
        "window": {"spacing": 0.5, "half_width": 3.0},
        "p_list": [1.0, 2.0],
        "tolerance": 1e-8,
        "seed": 42,
        "threads": 2,
        "output_dir": "out",
        "lattice_cap": 50000,
        "degree_cap": 8,
        "pairs": [[[[0.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]],
        "radii": [0.5, 1.0],
        "trace_via_berezin": true,
        "only": "basis-orthonormality"
    })";
    const RunConfig cfg = parse_config_text(text);
    CHECK(cfg.params.alpha == 0.5);
    CHECK(cfg.params.n == 2);
    REQUIRE(cfg.measure.has_value());
    const auto& g = std::get<GaussianDensity>(*cfg.measure);
    CHECK(g.c == 2.0);
    CHECK(g.beta == 1.5);
    CHECK(g.center.z[0] == cplx(0.5, -0.25));
    CHECK(g.center.z[1] == cplx(0.0, 1.0));
    CHECK(cfg.degrees == std::vector<int>{2, 4, 6});
    REQUIRE(cfg.window.has_value());
    CHECK(cfg.window->spacing == 0.5);
    CHECK(cfg.window->half_width == 3.0);
    CHECK(cfg.p_list == std::vector<double>{1.0, 2.0});
    CHECK(cfg.tolerance == 1e-8);
    CHECK(cfg.seed == 42);
    CHECK(cfg.threads == 2);
    CHECK(cfg.output_dir == "out");
    CHECK(cfg.lattice_cap == 50000);
    CHECK(cfg.degree_cap == 8);
    REQUIRE(cfg.kernel_pairs.size() == 1);
    CHECK(cfg.kernel_pairs[0].second.z[0] == cplx(1.0, 0.0));
    CHECK(cfg.radii == std::vector<double>{0.5, 1.0});
    CHECK(cfg.want_trace);
    CHECK(cfg.only == "basis-orthonormality");
}

TEST_CASE("config rejection: malformed documents fail loudly") {
    const char* minimal = R"({"params": {"alpha": 1.0, "n": 1}})";
    CHECK_NOTHROW(parse_config_text(minimal));

    CHECK_THROWS_AS(parse_config_text("this is not json"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"degrees": [1]})"), ConfigError);  // missing params
    CHECK_THROWS_AS(parse_config_text(R"({"params": {"alpha": 1.0, "n": 1}, "surprise": 1})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"params": {"alpha": 1.0, "n": 1, "beta": 2.0}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"params": {"alpha": -1.0, "n": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"params": {"alpha": 1.0, "n": 9}})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config_text(
            R"({"params": {"alpha": 1.0, "n": 1},
                "measure": {"kind": "scaled_lebesgue", "c": 1.0, "oops": 2}})"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config_text(R"({"params": {"alpha": 1.0, "n": 1},
                              "measure": {"kind": "mystery_measure"}})"),
        ConfigError);
    // degree caps: explicit cap and the default 16
    CHECK_THROWS_AS(parse_config_text(R"({"params": {"alpha": 1.0, "n": 1},
                                          "degree_cap": 8, "degrees": [9]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"params": {"alpha": 1.0, "n": 1}, "degrees": [17]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"params": {"alpha": 1.0, "n": 1}, "p_list": [0.5]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"params": {"alpha": 1.0, "n": 1}, "tolerance": 0.0})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"params": {"alpha": 1.0, "n": 1}, "seed": -4})"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config_text(R"({"params": {"alpha": 1.0, "n": 1},
                              "window": {"spacing": -1.0, "half_width": 4.0}})"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config_text(R"({"params": {"alpha": 1.0, "n": 1}, "radii": [2.0, 1.0]})"),
        ConfigError);
    // Out-of-domain measure parameters are a different failure class than
    // schema violations: they carry the inadmissibility exit code.
    CHECK_THROWS_AS(
        parse_config_text(R"({"params": {"alpha": 1.0, "n": 1},
                              "measure": {"kind": "gaussian_density", "c": 1.0, "beta": -1.0}})"),
        InadmissibleMeasure);
}

TEST_CASE("measures round-trip through their document form") {
    const ComplexPoint c2 = pt(0.25, -1.0);
    const std::vector<MeasureSpec> catalog{
        ScaledLebesgue{0.7},
        GaussianDensity{1.5, 2.0, c2},
        RadialPowerGaussian{0.3, 2, 1.25},
        BallIndicator{1.0, c2, 0.75},
        AtomSet{{Atom{pt(0.0), 0.5}, Atom{pt(1.0, 2.0), 0.25}}},
        RadialShells{{Shell{0.0, 0.9}, Shell{1.5, 0.1}}},
    };
    for (const MeasureSpec& spec : catalog) {
        const std::string text = canonical_dump(measure_to_json(spec));
        const MeasureSpec back = measure_from_json(ojson::parse(text), 1);
        CHECK(canonical_dump(measure_to_json(back)) == text);
        CHECK(back.index() == spec.index());
    }
}

TEST_CASE("points round-trip and reject wrong arity") {
    const ComplexPoint z(std::vector<cplx>{cplx(0.5, -0.125), cplx(3.0, 0.0)});
    const ComplexPoint back = point_from_json(point_to_json(z), 2);
    CHECK(back.z == z.z);
    CHECK(back.abs2 == z.abs2);
    CHECK_THROWS_AS(point_from_json(point_to_json(z), 3), ConfigError);
    CHECK_THROWS_AS(point_from_json(ojson::parse("[[1.0]]"), 1), ConfigError);
}

TEST_CASE("matrix persistence round-trips bit-for-bit") {
    const MeasureSpec spec = GaussianDensity{1.0, 1.0, pt(0.0)};
    const ToeplitzMatrix T = assemble(spec, BasisTruncation::build(kP1, 3), kP1);
    const std::string text = canonical_dump(toeplitz_to_json(T, &spec));
    const ToeplitzMatrix back = toeplitz_from_json(ojson::parse(text));

    CHECK(back.params.alpha == T.params.alpha);
    CHECK(back.trunc.degree == 3);
    CHECK(back.trunc.size() == T.trunc.size());
    CHECK(back.stats.exact == T.stats.exact);
    CHECK(back.stats.tol == T.stats.tol);
    REQUIRE(back.mat.rows() == T.mat.rows());
    // The dump uses shortest-round-trip doubles, so equality is exact.
    for (Eigen::Index r = 0; r < T.mat.rows(); ++r)
        for (Eigen::Index c = 0; c < T.mat.cols(); ++c) CHECK(back.mat(r, c) == T.mat(r, c));
}

TEST_CASE("matrix import re-validates its contracts") {
    const MeasureSpec spec = GaussianDensity{1.0, 1.0, pt(0.0)};
    const ToeplitzMatrix T = assemble(spec, BasisTruncation::build(kP1, 2), kP1);

    ojson tampered = toeplitz_to_json(T, nullptr);
    tampered["entries"][1] = ojson::array({5.0, 0.0});  // breaks T = T^H
    CHECK_THROWS_AS(toeplitz_from_json(tampered), ConfigError);

    ojson wrong_size = toeplitz_to_json(T, nullptr);
    wrong_size["size"] = 7;
    CHECK_THROWS_AS(toeplitz_from_json(wrong_size), ConfigError);

    ojson truncated = toeplitz_to_json(T, nullptr);
    truncated["entries"].erase(truncated["entries"].size() - 1);
    CHECK_THROWS_AS(toeplitz_from_json(truncated), ConfigError);

    ojson stray = toeplitz_to_json(T, nullptr);
    stray["checksum"] = "abc";
    CHECK_THROWS_AS(toeplitz_from_json(stray), ConfigError);
}

TEST_CASE("CSV doubles survive the text round trip") {
    for (double v : {1.0 / 3.0, 1e-17, 3.14159265358979323846, 0.1, -2.5e-300,
                     12345.678901234567, 0.0}) {
        const std::string s = csv_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(csv_double(2.0) == "2");
    CHECK(csv_double(0.5) == "0.5");
}

TEST_CASE("canonical dump is byte-stable with preserved order") {
    ojson doc;
    doc["zeta"] = 1;
    doc["alpha"] = ojson::array({1.0, 2.0});
    const std::string a = canonical_dump(doc);
    const std::string b = canonical_dump(doc);
    CHECK(a == b);
    CHECK(a.back() == '\n');
    CHECK(a.rfind("{\n  \"zeta\": 1", 0) == 0);  // insertion order, two-space indent
    CHECK(a.find("\"zeta\"") < a.find("\"alpha\""));
}
