#include "phfock/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace phfock {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

// Strict schemas: any key outside the allowed set is an error, so typos in a
// config surface as a hard failure instead of a silently ignored field.
void check_keys(const ojson& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(where, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) fail(where, "unknown field '" + it.key() + "'");
    }
}

double need_number(const ojson& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
    const ojson& v = obj.at(key);
    if (!v.is_number()) fail(where, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

double opt_number(const ojson& obj, const std::string& where, const char* key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    const ojson& v = obj.at(key);
    if (!v.is_number()) fail(where, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

long need_integer(const ojson& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
    const ojson& v = obj.at(key);
    if (!v.is_number_integer()) fail(where, std::string("field '") + key + "' must be an integer");
    return v.get<long>();
}

long opt_integer(const ojson& obj, const std::string& where, const char* key,
                 long fallback) {
    if (!obj.contains(key)) return fallback;
    const ojson& v = obj.at(key);
    if (!v.is_number_integer()) fail(where, std::string("field '") + key + "' must be an integer");
    return v.get<long>();
}

}  // namespace

ojson point_to_json(const ComplexPoint& z) {
    ojson out = ojson::array();
    for (const cplx& c : z.z) out.push_back(ojson::array({c.real(), c.imag()}));
    return out;
}

ComplexPoint point_from_json(const ojson& doc, int n) {
    if (!doc.is_array() || static_cast<int>(doc.size()) != n)
        fail("point", "expected an array of " + std::to_string(n) + " [re, im] pairs");
    std::vector<cplx> coords;
    coords.reserve(doc.size());
    for (const ojson& pair : doc) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            fail("point", "each coordinate must be a [re, im] pair of numbers");
        coords.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return ComplexPoint(std::move(coords));
}

MeasureSpec measure_from_json(const ojson& doc, int n) {
    if (!doc.is_object()) fail("measure", "expected an object");
    if (!doc.contains("kind") || !doc.at("kind").is_string())
        fail("measure", "missing string field 'kind'");
    const std::string kind = doc.at("kind").get<std::string>();

    MeasureSpec spec;
    if (kind == "scaled_lebesgue") {
        check_keys(doc, "measure", {"kind", "c"});
        spec = ScaledLebesgue{need_number(doc, "measure", "c")};
    } else if (kind == "gaussian_density") {
        check_keys(doc, "measure", {"kind", "c", "beta", "center"});
        GaussianDensity g;
        g.c = need_number(doc, "measure", "c");
        g.beta = need_number(doc, "measure", "beta");
        g.center = doc.contains("center") ? point_from_json(doc.at("center"), n)
                                          : ComplexPoint(std::vector<cplx>(n, cplx(0.0, 0.0)));
        spec = std::move(g);
    } else if (kind == "radial_power_gaussian") {
        check_keys(doc, "measure", {"kind", "c", "k", "s"});
        RadialPowerGaussian r;
        r.c = need_number(doc, "measure", "c");
        r.k = static_cast<int>(need_integer(doc, "measure", "k"));
        r.s = need_number(doc, "measure", "s");
        spec = r;
    } else if (kind == "ball_indicator") {
        check_keys(doc, "measure", {"kind", "c", "center", "radius"});
        BallIndicator b;
        b.c = need_number(doc, "measure", "c");
        b.radius = need_number(doc, "measure", "radius");
        b.center = doc.contains("center") ? point_from_json(doc.at("center"), n)
                                          : ComplexPoint(std::vector<cplx>(n, cplx(0.0, 0.0)));
        spec = std::move(b);
    } else if (kind == "atom_set") {
        check_keys(doc, "measure", {"kind", "atoms"});
        if (!doc.contains("atoms") || !doc.at("atoms").is_array())
            fail("measure", "atom_set needs an 'atoms' array");
        AtomSet a;
        for (const ojson& item : doc.at("atoms")) {
            check_keys(item, "measure.atoms[]", {"point", "weight"});
            Atom atom{point_from_json(item.contains("point") ? item.at("point") : ojson(nullptr), n),
                      need_number(item, "measure.atoms[]", "weight")};
            a.atoms.push_back(std::move(atom));
        }
        spec = std::move(a);
    } else if (kind == "radial_shells") {
        check_keys(doc, "measure", {"kind", "shells"});
        if (!doc.contains("shells") || !doc.at("shells").is_array())
            fail("measure", "radial_shells needs a 'shells' array");
        RadialShells s;
        for (const ojson& item : doc.at("shells")) {
            check_keys(item, "measure.shells[]", {"radius", "weight"});
            s.shells.push_back(Shell{need_number(item, "measure.shells[]", "radius"),
                                     need_number(item, "measure.shells[]", "weight")});
        }
        spec = std::move(s);
    } else {
        fail("measure", "unknown kind '" + kind + "'");
    }

    // Parameter-domain problems surface as InadmissibleMeasure, which the
    // command layer reports under its own exit code.
    validate_measure(spec, FockParams{1.0, n});
    return spec;
}

ojson measure_to_json(const MeasureSpec& spec) {
    ojson out;
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ScaledLebesgue>) {
                out["kind"] = "scaled_lebesgue";
                out["c"] = m.c;
            } else if constexpr (std::is_same_v<M, GaussianDensity>) {
                out["kind"] = "gaussian_density";
                out["c"] = m.c;
                out["beta"] = m.beta;
                out["center"] = point_to_json(m.center);
            } else if constexpr (std::is_same_v<M, RadialPowerGaussian>) {
                out["kind"] = "radial_power_gaussian";
                out["c"] = m.c;
                out["k"] = m.k;
                out["s"] = m.s;
            } else if constexpr (std::is_same_v<M, BallIndicator>) {
                out["kind"] = "ball_indicator";
                out["c"] = m.c;
                out["center"] = point_to_json(m.center);
                out["radius"] = m.radius;
            } else if constexpr (std::is_same_v<M, AtomSet>) {
                out["kind"] = "atom_set";
                ojson atoms = ojson::array();
                for (const Atom& a : m.atoms) {
                    ojson item;
                    item["point"] = point_to_json(a.point);
                    item["weight"] = a.weight;
                    atoms.push_back(std::move(item));
                }
                out["atoms"] = std::move(atoms);
            } else {
                out["kind"] = "radial_shells";
                ojson shells = ojson::array();
                for (const Shell& s : m.shells) {
                    ojson item;
                    item["radius"] = s.radius;
                    item["weight"] = s.weight;
                    shells.push_back(std::move(item));
                }
                out["shells"] = std::move(shells);
            }
        },
        spec);
    return out;
}

RunConfig parse_config_text(const std::string& text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail("config", std::string("invalid JSON: ") + e.what());
    }
    check_keys(doc, "config",
               {"params", "measure", "degrees", "window", "p_list", "tolerance", "seed",
                "threads", "output_dir", "lattice_cap", "degree_cap", "pairs", "radii",
                "trace_via_berezin", "only"});

    RunConfig cfg;
    if (!doc.contains("params")) fail("config", "missing field 'params'");
    const ojson& params = doc.at("params");
    check_keys(params, "config.params", {"alpha", "n"});
    cfg.params.alpha = need_number(params, "config.params", "alpha");
    cfg.params.n = static_cast<int>(need_integer(params, "config.params", "n"));
    try {
        cfg.params.validate();
    } catch (const std::exception& e) {
        fail("config.params", e.what());
    }

    cfg.degree_cap = static_cast<int>(opt_integer(doc, "config", "degree_cap", 16));
    if (cfg.degree_cap < 1) fail("config", "degree_cap must be positive");

    if (doc.contains("measure")) cfg.measure = measure_from_json(doc.at("measure"), cfg.params.n);

    if (doc.contains("degrees")) {
        if (!doc.at("degrees").is_array()) fail("config", "'degrees' must be an array");
        for (const ojson& d : doc.at("degrees")) {
            if (!d.is_number_integer()) fail("config", "'degrees' entries must be integers");
            const long deg = d.get<long>();
            if (deg < 0 || deg > cfg.degree_cap)
                fail("config", "degree " + std::to_string(deg) + " outside [0, " +
                                   std::to_string(cfg.degree_cap) + "]");
            cfg.degrees.push_back(static_cast<int>(deg));
        }
    }

    if (doc.contains("window")) {
        const ojson& w = doc.at("window");
        check_keys(w, "config.window", {"spacing", "half_width"});
        LatticeWindow win;
        win.spacing = need_number(w, "config.window", "spacing");
        win.half_width = need_number(w, "config.window", "half_width");
        win.params = cfg.params;
        try {
            win.validate();
        } catch (const std::exception& e) {
            fail("config.window", e.what());
        }
        cfg.window = win;
    }

    if (doc.contains("p_list")) {
        if (!doc.at("p_list").is_array()) fail("config", "'p_list' must be an array");
        for (const ojson& p : doc.at("p_list")) {
            if (!p.is_number()) fail("config", "'p_list' entries must be numbers");
            const double pv = p.get<double>();
            if (pv < 1.0) fail("config", "'p_list' exponents must satisfy p >= 1");
            cfg.p_list.push_back(pv);
        }
    }

    cfg.tolerance = opt_number(doc, "config", "tolerance", cfg.tolerance);
    if (!(cfg.tolerance > 0.0)) fail("config", "'tolerance' must be positive");
    const long seed = opt_integer(doc, "config", "seed", static_cast<long>(cfg.seed));
    if (seed < 0) fail("config", "'seed' must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(seed);
    const long threads = opt_integer(doc, "config", "threads", cfg.threads);
    if (threads < 0) fail("config", "'threads' must be non-negative");
    cfg.threads = static_cast<int>(threads);
    const long cap = opt_integer(doc, "config", "lattice_cap",
                                 static_cast<long>(cfg.lattice_cap));
    if (cap < 1) fail("config", "'lattice_cap' must be positive");
    cfg.lattice_cap = static_cast<std::size_t>(cap);

    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) fail("config", "'output_dir' must be a string");
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }

    if (doc.contains("pairs")) {
        if (!doc.at("pairs").is_array()) fail("config", "'pairs' must be an array");
        for (const ojson& pr : doc.at("pairs")) {
            if (!pr.is_array() || pr.size() != 2)
                fail("config", "'pairs' entries must be [z, w] point pairs");
            cfg.kernel_pairs.emplace_back(point_from_json(pr[0], cfg.params.n),
                                          point_from_json(pr[1], cfg.params.n));
        }
    }

    if (doc.contains("radii")) {
        if (!doc.at("radii").is_array()) fail("config", "'radii' must be an array");
        for (const ojson& r : doc.at("radii")) {
            if (!r.is_number()) fail("config", "'radii' entries must be numbers");
            const double rv = r.get<double>();
            if (!(rv > 0.0)) fail("config", "'radii' entries must be positive");
            cfg.radii.push_back(rv);
        }
        if (!std::is_sorted(cfg.radii.begin(), cfg.radii.end()))
            fail("config", "'radii' must be sorted ascending");
    }

    if (doc.contains("trace_via_berezin")) {
        if (!doc.at("trace_via_berezin").is_boolean())
            fail("config", "'trace_via_berezin' must be a boolean");
        cfg.want_trace = doc.at("trace_via_berezin").get<bool>();
    }

    if (doc.contains("only")) {
        if (!doc.at("only").is_string()) fail("config", "'only' must be a string");
        cfg.only = doc.at("only").get<std::string>();
    }

    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("config", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

ojson toeplitz_to_json(const ToeplitzMatrix& T, const MeasureSpec* spec_echo) {
    ojson out;
    out["alpha"] = T.params.alpha;
    out["n"] = T.params.n;
    out["degree"] = T.trunc.degree;
    out["size"] = T.trunc.size();
    if (spec_echo != nullptr) out["measure"] = measure_to_json(*spec_echo);
    ojson stats;
    stats["tol"] = T.stats.tol;
    stats["nodes"] = T.stats.nodes;
    stats["level"] = T.stats.level;
    stats["exact"] = T.stats.exact;
    stats["hermitian_defect"] = T.stats.hermitian_defect;
    out["assembly"] = std::move(stats);
    ojson entries = ojson::array();
    for (Eigen::Index r = 0; r < T.mat.rows(); ++r)
        for (Eigen::Index c = 0; c < T.mat.cols(); ++c)
            entries.push_back(ojson::array({T.mat(r, c).real(), T.mat(r, c).imag()}));
    out["entries"] = std::move(entries);
    return out;
}

ToeplitzMatrix toeplitz_from_json(const ojson& doc) {
    check_keys(doc, "toeplitz", {"alpha", "n", "degree", "size", "measure", "assembly", "entries"});
    ToeplitzMatrix T;
    T.params.alpha = need_number(doc, "toeplitz", "alpha");
    T.params.n = static_cast<int>(need_integer(doc, "toeplitz", "n"));
    T.params.validate();
    const int degree = static_cast<int>(need_integer(doc, "toeplitz", "degree"));
    T.trunc = BasisTruncation::build(T.params, degree);
    const std::size_t size = static_cast<std::size_t>(need_integer(doc, "toeplitz", "size"));
    if (size != static_cast<std::size_t>(T.trunc.size()))
        fail("toeplitz", "size field does not match the declared degree and dimension");
    if (doc.contains("assembly")) {
        const ojson& stats = doc.at("assembly");
        check_keys(stats, "toeplitz.assembly", {"tol", "nodes", "level", "exact", "hermitian_defect"});
        T.stats.tol = opt_number(stats, "toeplitz.assembly", "tol", 0.0);
        T.stats.nodes = static_cast<std::size_t>(opt_integer(stats, "toeplitz.assembly", "nodes", 0));
        T.stats.level = static_cast<int>(opt_integer(stats, "toeplitz.assembly", "level", 0));
        if (stats.contains("exact")) {
            if (!stats.at("exact").is_boolean()) fail("toeplitz.assembly", "'exact' must be a boolean");
            T.stats.exact = stats.at("exact").get<bool>();
        }
        T.stats.hermitian_defect = opt_number(stats, "toeplitz.assembly", "hermitian_defect", 0.0);
    }
    if (!doc.contains("entries") || !doc.at("entries").is_array())
        fail("toeplitz", "missing 'entries' array");
    const ojson& entries = doc.at("entries");
    const auto dim = static_cast<std::size_t>(T.trunc.size());
    if (entries.size() != dim * dim)
        fail("toeplitz", "entry count does not match size^2");
    T.mat.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::size_t flat = 0;
    for (Eigen::Index r = 0; r < T.mat.rows(); ++r)
        for (Eigen::Index c = 0; c < T.mat.cols(); ++c, ++flat) {
            const ojson& e = entries[flat];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                fail("toeplitz", "entries must be [re, im] pairs");
            T.mat(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    // Re-check the Hermitian contract on the imported data: the exporter
    // symmetrizes, so anything beyond rounding noise means a corrupt file.
    const double scale = std::max(1.0, T.mat.cwiseAbs().maxCoeff());
    const double defect = (T.mat - T.mat.adjoint().eval()).cwiseAbs().maxCoeff();
    if (defect > 1e-9 * scale)
        fail("toeplitz", "imported matrix violates the Hermitian contract");
    return T;
}

std::string canonical_dump(const ojson& doc) { return doc.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("short write to '" + path + "'");
}

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace phfock
