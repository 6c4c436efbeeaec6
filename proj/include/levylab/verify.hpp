#pragma once

#include <string>
#include <vector>

namespace levylab {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    int threads = 0;
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace levylab
