#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace octa {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    std::uint64_t seed = 20240611;
};

constexpr int kCriteria = 10;
CriterionResult verify_criterion(int id, const VerifyOptions& opt = {});
std::vector<CriterionResult> verify_all(const VerifyOptions& opt = {});
// "[PASS] 3 name (1.2 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace octa
