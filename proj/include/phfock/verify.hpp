#pragma once

#include <string>
#include <vector>

#include "phfock/report.hpp"

namespace phfock {

// One verification check: a named mathematical claim, a pass/fail verdict,
// and the measured numbers behind it.  `seconds` never enters the canonical
// report bytes; it goes to the timing sidecar only.
struct CheckOutcome {
    std::string id;
    std::string claim;
    std::string verdict;  // "pass" or "fail"
    ojson values;
    ojson tolerances;
    double seconds = 0.0;
};

struct VerifySuite {
    std::vector<CheckOutcome> outcomes;
    bool all_pass = false;
};

// Check ids in execution order.
std::vector<std::string> verify_check_ids();

// Run the full catalog, or the single check named by cfg.only.  Unknown ids
// raise ConfigError.  Randomized checks draw from cfg.seed, so a fixed config
// yields bit-identical outcomes.
VerifySuite run_verify(const RunConfig& cfg);

// Canonical report (config echo + outcomes, no timings) and timing sidecar.
ojson verify_report_json(const VerifySuite& suite, const RunConfig& cfg);
ojson verify_timings_json(const VerifySuite& suite);

}  // namespace phfock
