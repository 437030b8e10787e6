#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nilkit {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Suite names: collection, basics, progressions, decomposition, approximate,
// splitting, pgroups, freiman, all.
std::vector<std::string> acceptance_suites();

// Runs the criteria of a suite; InvalidParameter for an unknown suite.
std::vector<CriterionResult> run_acceptance(const std::string& suite);

// "criterion N: PASS|FAIL name (detail) [seconds]"
std::string format_result(const CriterionResult& r);

// Runs a suite, printing one line per criterion as it finishes. Returns 0
// when every criterion passes and 1 otherwise.
int run_acceptance(const std::string& suite, std::ostream& out);

}  // namespace nilkit
