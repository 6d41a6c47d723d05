// Acceptance suite runner: one pass/fail line per criterion.  With --only <id>
// runs a single criterion; the exit code is the number of failed criteria.
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "delayctl/acceptance.hpp"

int main(int argc, char** argv) {
    std::string only;
    int workers = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = argv[++i];
        if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) workers = std::atoi(argv[++i]);
    }

    using delayctl::acceptance::CriterionResult;
    std::vector<CriterionResult> results;
    if (only.empty())
        results = delayctl::acceptance::run_all(workers);
    else
        results = delayctl::acceptance::run_criterion(only, workers);

    int failed = 0;
    for (const CriterionResult& r : results) {
        std::printf("%s%s criterion %s: %s\n    %s\n", r.passed ? "PASS" : "FAIL",
                    r.counts ? " " : "*", r.id.c_str(), r.name.c_str(), r.detail.c_str());
        if (r.counts && !r.passed) ++failed;
    }
    return failed;
}
