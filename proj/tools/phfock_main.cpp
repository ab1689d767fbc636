// Command-line front end: kernel / carleson / toeplitz / berezin / verify.
//
// One JSON configuration document drives every verb; the flags below override
// individual fields after parsing.  Exit codes: 0 success, 2 schema or usage,
// 3 resource cap, 4 inadmissible measure, 5 failed check or computation.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "phfock/basis.hpp"
#include "phfock/berezin.hpp"
#include "phfock/carleson.hpp"
#include "phfock/kernels.hpp"
#include "phfock/measures.hpp"
#include "phfock/report.hpp"
#include "phfock/spectral.hpp"
#include "phfock/toeplitz.hpp"
#include "phfock/verify.hpp"

namespace {

using namespace phfock;

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitResource = 3;
constexpr int kExitInadmissible = 4;
constexpr int kExitCheckFailure = 5;

struct CliArgs {
    std::string verb;
    std::optional<std::string> config;
    std::optional<std::string> out_dir;
    std::optional<int> threads;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> only;
};

void usage(std::ostream& os) {
    os << "usage: phfock <kernel|carleson|toeplitz|berezin|verify>\n"
          "              [--config PATH] [--out DIR] [--threads K]\n"
          "              [--tol X] [--seed S] [--only CHECK_ID]\n";
}

CliArgs parse_args(int argc, char** argv) {
    if (argc < 2) throw ConfigError("missing verb");
    CliArgs args;
    args.verb = argv[1];
    if (args.verb != "kernel" && args.verb != "carleson" && args.verb != "toeplitz" &&
        args.verb != "berezin" && args.verb != "verify")
        throw ConfigError("unknown verb '" + args.verb + "'");
    for (int i = 2; i < argc; ++i) {
        const std::string flag = argv[i];
        const auto value = [&]() -> std::string {
            if (i + 1 >= argc) throw ConfigError("flag " + flag + " needs a value");
            return argv[++i];
        };
        if (flag == "--config") {
            args.config = value();
        } else if (flag == "--out") {
            args.out_dir = value();
        } else if (flag == "--threads") {
            const long t = std::strtol(value().c_str(), nullptr, 10);
            if (t < 0) throw ConfigError("--threads must be non-negative");
            args.threads = static_cast<int>(t);
        } else if (flag == "--tol") {
            const double t = std::strtod(value().c_str(), nullptr);
            if (!(t > 0.0)) throw ConfigError("--tol must be positive");
            args.tol = t;
        } else if (flag == "--seed") {
            args.seed = std::strtoull(value().c_str(), nullptr, 10);
        } else if (flag == "--only") {
            args.only = value();
        } else {
            throw ConfigError("unknown flag '" + flag + "'");
        }
    }
    return args;
}

RunConfig load_config(const CliArgs& args) {
    RunConfig cfg;
    if (args.config) {
        cfg = parse_config_file(*args.config);
    } else if (args.verb != "verify") {
        throw ConfigError("verb '" + args.verb + "' requires --config");
    }
    if (args.out_dir) cfg.output_dir = *args.out_dir;
    if (args.threads) cfg.threads = *args.threads;
    if (args.tol) cfg.tolerance = *args.tol;
    if (args.seed) cfg.seed = *args.seed;
    if (args.only) cfg.only = *args.only;
    return cfg;
}

std::string out_path(const RunConfig& cfg, const char* name) {
    std::filesystem::create_directories(cfg.output_dir);
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

ojson report_head(const char* kind, const RunConfig& cfg) {
    ojson doc;
    doc["tool"] = kToolVersion;
    doc["report"] = kind;
    ojson params;
    params["alpha"] = cfg.params.alpha;
    params["n"] = cfg.params.n;
    doc["params"] = std::move(params);
    if (cfg.measure) doc["measure"] = measure_to_json(*cfg.measure);
    return doc;
}

const MeasureSpec& need_measure(const RunConfig& cfg) {
    if (!cfg.measure) throw ConfigError("this verb requires a 'measure' in the config");
    return *cfg.measure;
}

// The origin plus one point per axis at |z| = 1: enough to see the kernel
// pairing diverge for any catalog entry whose tail outruns the Gaussian.
std::vector<ComplexPoint> admissibility_probes(int n) {
    std::vector<ComplexPoint> probes;
    probes.push_back(ComplexPoint(std::vector<cplx>(static_cast<std::size_t>(n), cplx(0.0, 0.0))));
    for (int j = 0; j < n; ++j) {
        std::vector<cplx> z(static_cast<std::size_t>(n), cplx(0.0, 0.0));
        z[static_cast<std::size_t>(j)] = cplx(1.0, 0.0);
        probes.push_back(ComplexPoint(std::move(z)));
    }
    return probes;
}

void require_admissible(const MeasureSpec& spec, const FockParams& params) {
    const AdmissibilityReport adm = admissibility_check(spec, params, admissibility_probes(params.n));
    if (!adm.admissible)
        throw InadmissibleMeasure("kernel-pairing integrals diverge on the probe set");
}

int run_kernel(const RunConfig& cfg) {
    if (cfg.kernel_pairs.empty()) throw ConfigError("kernel verb requires a non-empty 'pairs' list");
    ojson doc = report_head("kernel", cfg);
    ojson rows = ojson::array();
    for (const auto& [z, w] : cfg.kernel_pairs) {
        const cplx ka = k_alpha(z, w, cfg.params);
        const cplx kp = k_ph(z, w, cfg.params);
        const cplx kn = k_ph_normalized(z, w, cfg.params);
        ojson row;
        row["z"] = point_to_json(z);
        row["w"] = point_to_json(w);
        row["k_alpha"] = ojson::array({ka.real(), ka.imag()});
        row["k_ph"] = ojson::array({kp.real(), kp.imag()});
        row["k_ph_normalized"] = ojson::array({kn.real(), kn.imag()});
        rows.push_back(std::move(row));
    }
    doc["pairs"] = std::move(rows);
    write_text_file(out_path(cfg, "kernel_report.json"), canonical_dump(doc));
    return kExitOk;
}

int run_carleson(const RunConfig& cfg) {
    const MeasureSpec& spec = need_measure(cfg);
    if (!cfg.window) throw ConfigError("carleson verb requires a 'window' in the config");
    LatticeWindow window = *cfg.window;
    window.params = cfg.params;
    const CarlesonReport rep =
        carleson_scan(spec, window, cfg.p_list, cfg.lattice_cap, cfg.threads);

    ojson doc = report_head("carleson", cfg);
    ojson win;
    win["spacing"] = window.spacing;
    win["half_width"] = window.half_width;
    win["points"] = rep.points.size();
    doc["window"] = std::move(win);
    doc["sup_mass"] = rep.sup_mass;
    ojson annuli = ojson::array();
    for (const AnnulusStat& a : rep.annuli) {
        ojson item;
        item["mid_radius"] = a.mid_radius;
        item["sup_mass"] = a.sup_mass;
        item["points"] = a.points;
        annuli.push_back(std::move(item));
    }
    doc["annuli"] = std::move(annuli);
    ojson lp = ojson::array();
    for (const auto& [p, s] : rep.lp_sums) lp.push_back(ojson::array({p, s}));
    doc["lp_sums"] = std::move(lp);
    doc["trend_slope"] = rep.trend_slope;
    doc["support_radius"] = rep.support_radius;
    doc["window_adequate"] = rep.window_adequate;
    doc["bounded"] = rep.bounded;
    doc["vanishing"] = rep.vanishing;
    write_text_file(out_path(cfg, "carleson_report.json"), canonical_dump(doc));

    std::string csv;
    for (int c = 0; c < cfg.params.n; ++c)
        csv += "z" + std::to_string(c) + "_re,z" + std::to_string(c) + "_im,";
    csv += "mass\n";
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        for (const cplx& c : rep.points[i].z)
            csv += csv_double(c.real()) + "," + csv_double(c.imag()) + ",";
        csv += csv_double(rep.masses[i]) + "\n";
    }
    write_text_file(out_path(cfg, "masses.csv"), csv);
    return kExitOk;
}

int run_toeplitz(const RunConfig& cfg) {
    const MeasureSpec& spec = need_measure(cfg);
    require_admissible(spec, cfg.params);

    std::vector<int> degrees = cfg.degrees.empty() ? std::vector<int>{8} : cfg.degrees;
    std::vector<double> p_list = cfg.p_list.empty() ? std::vector<double>{1.0, 2.0} : cfg.p_list;

    AssembleOptions opts;
    opts.tol = std::min(1e-10, cfg.tolerance);
    opts.threads = cfg.threads;

    ojson summary = report_head("toeplitz", cfg);
    ojson rows = ojson::array();
    ToeplitzMatrix last;
    SpectralSummary last_summary;
    for (int D : degrees) {
        const BasisTruncation trunc = BasisTruncation::build(cfg.params, D);
        ToeplitzMatrix T = assemble(spec, trunc, cfg.params, opts);
        const SpectralSummary s = spectral_summary(T, p_list);
        const BlockDecomposition bl = blocks(T);
        double offdiag = 0.0;
        for (Eigen::Index r = 0; r < T.mat.rows(); ++r)
            for (Eigen::Index c = 0; c < T.mat.cols(); ++c)
                if (r != c) offdiag = std::max(offdiag, std::abs(T.mat(r, c)));
        ojson row;
        row["degree"] = D;
        row["size"] = trunc.size();
        row["operator_norm"] = s.operator_norm;
        row["trace"] = s.trace;
        ojson schatten = ojson::array();
        for (const auto& [p, v] : s.schatten) schatten.push_back(ojson::array({p, v}));
        row["schatten"] = std::move(schatten);
        row["max_offdiagonal"] = offdiag;
        row["hermitian_defect"] = T.stats.hermitian_defect;
        ojson blocks_json;
        blocks_json["mm_frobenius"] = bl.mm.norm();
        blocks_json["mn_frobenius"] = bl.mn.norm();
        blocks_json["nm_frobenius"] = bl.nm.norm();
        blocks_json["nn_frobenius"] = bl.nn.norm();
        row["blocks"] = std::move(blocks_json);
        rows.push_back(std::move(row));
        last = std::move(T);
        last_summary = s;
    }
    summary["degrees"] = std::move(rows);
    write_text_file(out_path(cfg, "toeplitz_summary.json"), canonical_dump(summary));
    write_text_file(out_path(cfg, "toeplitz_matrix.json"),
                    canonical_dump(toeplitz_to_json(last, &spec)));

    std::string csv = "index,eigenvalue,singular_value\n";
    for (Eigen::Index i = 0; i < last_summary.eigenvalues.size(); ++i)
        csv += std::to_string(i) + "," + csv_double(last_summary.eigenvalues[i]) + "," +
               csv_double(last_summary.singular_values[i]) + "\n";
    write_text_file(out_path(cfg, "spectrum.csv"), csv);
    return kExitOk;
}

int run_berezin(const RunConfig& cfg) {
    const MeasureSpec& spec = need_measure(cfg);
    require_admissible(spec, cfg.params);

    const std::vector<double> radii =
        cfg.radii.empty() ? std::vector<double>{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0} : cfg.radii;
    const DecayProfile prof =
        decay_profile(spec, cfg.params, radii, std::min(1e-7, cfg.tolerance));

    ojson doc = report_head("berezin", cfg);
    doc["value_at_origin"] =
        berezin_of_measure(spec, ComplexPoint(std::vector<cplx>(cfg.params.n, cplx(0.0, 0.0))),
                           cfg.params, std::min(1e-8, cfg.tolerance));
    doc["decaying"] = prof.decaying;
    if (cfg.want_trace) {
        const TraceViaBerezin tv = trace_via_berezin(spec, cfg.params, std::min(1e-8, cfg.tolerance));
        doc["trace_class"] = tv.trace_class;
        doc["trace_via_berezin"] = tv.value;
    }
    write_text_file(out_path(cfg, "berezin_report.json"), canonical_dump(doc));

    std::string csv = "radius,sup_value\n";
    for (const DecayPoint& pt : prof.points)
        csv += csv_double(pt.radius) + "," + csv_double(pt.sup_value) + "\n";
    write_text_file(out_path(cfg, "berezin_profile.csv"), csv);
    return kExitOk;
}

int run_verify_cmd(const RunConfig& cfg) {
    const VerifySuite suite = run_verify(cfg);
    write_text_file(out_path(cfg, "verify_report.json"),
                    canonical_dump(verify_report_json(suite, cfg)));
    write_text_file(out_path(cfg, "verify_timings.json"),
                    canonical_dump(verify_timings_json(suite)));
    for (const CheckOutcome& c : suite.outcomes)
        std::cout << c.verdict << "  " << c.id << "\n";
    if (!suite.all_pass) {
        for (const CheckOutcome& c : suite.outcomes)
            if (c.verdict != "pass") std::cerr << "failed check: " << c.id << "\n";
        return kExitCheckFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const CliArgs args = parse_args(argc, argv);
        const RunConfig cfg = load_config(args);
        if (args.verb == "kernel") return run_kernel(cfg);
        if (args.verb == "carleson") return run_carleson(cfg);
        if (args.verb == "toeplitz") return run_toeplitz(cfg);
        if (args.verb == "berezin") return run_berezin(cfg);
        return run_verify_cmd(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        usage(std::cerr);
        return kExitSchema;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const InadmissibleMeasure& e) {
        std::cerr << "inadmissible measure: " << e.what() << "\n";
        return kExitInadmissible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
}
