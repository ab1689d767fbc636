#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "phfock/carleson.hpp"
#include "phfock/measures.hpp"
#include "phfock/toeplitz.hpp"

namespace phfock {

// Insertion-ordered documents keep report bytes stable run to run.
using ojson = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "phfock 1.0.0";

// A malformed or out-of-contract configuration/report document.  Callers map
// this to the schema exit code.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Parsed run configuration.  One JSON document drives every verb; flags
// override individual fields after parsing.
struct RunConfig {
    FockParams params;
    std::optional<MeasureSpec> measure;
    std::vector<int> degrees;
    std::optional<LatticeWindow> window;
    std::vector<double> p_list;
    double tolerance = 1e-9;
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
    std::string output_dir = ".";
    std::size_t lattice_cap = kDefaultLatticeCap;
    int degree_cap = 16;
    std::vector<std::pair<ComplexPoint, ComplexPoint>> kernel_pairs;
    std::vector<double> radii;
    bool want_trace = false;
    std::string only;  // verify check filter
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Measures round-trip through the same document shape the config uses.
MeasureSpec measure_from_json(const ojson& doc, int n);
ojson measure_to_json(const MeasureSpec& spec);

ojson point_to_json(const ComplexPoint& z);
ComplexPoint point_from_json(const ojson& doc, int n);

// Matrix persistence: row-major [re, im] entry pairs plus the assembly
// metadata.  Import re-validates the Hermitian-defect contract.
ojson toeplitz_to_json(const ToeplitzMatrix& T, const MeasureSpec* spec_echo);
ToeplitzMatrix toeplitz_from_json(const ojson& doc);

// Canonical serialization: two-space indent, trailing newline, insertion
// order preserved.  Byte-stable for identical content.
std::string canonical_dump(const ojson& doc);
void write_text_file(const std::string& path, const std::string& content);

// CSV floats carry full round-trip precision.
std::string csv_double(double v);

}  // namespace phfock
