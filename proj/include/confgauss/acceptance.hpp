#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "confgauss/bryant_classifier.hpp"

namespace confgauss {

struct AcceptanceConfig {
    int n = 128;          // grid for criteria 1-10; criterion 11 uses n/2+1 and n+1
    int words = 20;       // random SO(4,1) words for criterion 4
    std::uint64_t seed = 20240417;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

int criterion_count();
std::string criterion_name(int id);
CriterionResult run_criterion(int id, const AcceptanceConfig& cfg);
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& on_result = {});
std::string format_line(const CriterionResult& r);

// Product of 3-6 random generators with |lambda| <= 1 and |a| <= 1, applied left to right.
struct RandomWord {
    Mat5 M;
    std::string text;  // in the CLI word syntax
};
RandomWord random_word(std::mt19937_64& rng);

}  // namespace confgauss
