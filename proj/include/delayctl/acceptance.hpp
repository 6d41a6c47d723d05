#pragma once

#include <string>
#include <vector>

namespace delayctl::acceptance {

struct CriterionResult {
    std::string id;      // "1".."10" plus informational extras
    std::string name;
    bool passed = false;
    bool counts = true;  // informational rows do not affect the verdict
    std::string detail;
};

// Runs one criterion by id ("1".."10"); throws ValidationError for unknown ids.
std::vector<CriterionResult> run_criterion(const std::string& id, int workers);

// Runs the whole suite in order.
std::vector<CriterionResult> run_all(int workers);

// True when every counted criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace delayctl::acceptance
