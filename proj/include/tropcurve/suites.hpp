#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tropcurve {

// Outcome of one randomized invariant suite: `cases` instances, each either passing or
// recorded in `failures` (only the first few messages are kept).
struct SuiteResult {
    std::string name;
    int cases = 0;
    int failed = 0;
    std::vector<std::string> failures;
    bool ok() const { return failed == 0; }
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 1);
// Every suite, in suite_names() order; with `parallel` the suites run on separate threads.
std::vector<SuiteResult> run_all_suites(bool parallel, std::uint64_t seed = 1);

}  // namespace tropcurve
