#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mto/suites.hpp"
#include "mto/types.hpp"

namespace mto {

struct AlgorithmChoice {
    std::string name;
    Params overrides; // keys must exist in the algorithm's defaults
};

struct ExperimentConfig {
    std::vector<AlgorithmChoice> algorithms;
    std::vector<SuiteConfig> problems;
    int reps = 1;
    std::uint64_t base_seed = 1;
    int data_length = 25;
    bool save_dec = false;
    bool parallel = false;
    int workers = 0; // 0 picks the hardware thread count
    std::string output;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

// Resolves every referenced algorithm and problem name against the
// registries and checks the numeric invariants. Throws ConfigError before
// any run starts; has no side effects.
void validate_config(const ExperimentConfig& config);

// Expands the suite selections into concrete problem instances, in order.
std::vector<ProblemInstance> resolve_problems(const ExperimentConfig& config);

} // namespace mto
