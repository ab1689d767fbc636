// Acceptance gate: runs the verification catalog with the default
// configuration and prints one line per criterion.  Exit status is zero only
// when every executed check passes; an impossible claim therefore shows up
// red here instead of being papered over.

#include <cstring>
#include <iostream>
#include <string>

#include "phfock/verify.hpp"

int main(int argc, char** argv) {
    phfock::RunConfig cfg;
    cfg.params = phfock::FockParams{1.0, 1};
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            cfg.only = argv[++i];
        } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            cfg.seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::cerr << "usage: acceptance [--only CHECK_ID] [--seed S]\n";
            return 2;
        }
    }

    phfock::VerifySuite suite;
    try {
        suite = phfock::run_verify(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    for (const phfock::CheckOutcome& c : suite.outcomes) {
        std::cout << (c.verdict == "pass" ? "PASS" : "FAIL") << "  " << c.id;
        if (c.values.contains("error"))
            std::cout << "  [" << c.values["error"].get<std::string>() << "]";
        std::cout << "\n";
    }
    return suite.all_pass ? 0 : 1;
}
