#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mto/types.hpp"

namespace mto {

// Settings for building a benchmark suite. Regeneration from the same
// (suite_id, seed) is bit-identical; the optional fields override the suite
// defaults.
struct SuiteConfig {
    std::string suite_id;
    std::uint64_t seed = 1;
    std::optional<int> dim;
    std::optional<long long> max_fe;
    std::optional<int> pop_size;
};

// Nine seeded two-task single-objective problems pairing base functions with
// complete / partial / no intersection of the task optima in unified space.
std::vector<ProblemInstance> make_mtso_suite(const SuiteConfig& config);

// Two-task constrained problem: shifted spheres with a half-space constraint
// and a sphere-exclusion constraint each, feasible at the optimum.
ProblemInstance make_cmt_pair(const SuiteConfig& config);

// Two bi-objective 50-d tasks over [0,1]: f1 = x1, f2 = g (1 - sqrt(x1/g)),
// g = 1 + sum (x_i - c_i)^2. Task 1 centers every c_i at 0.5; task 2 moves
// dims 41..50 to 0.5005, so the tasks' optima almost coincide and transfer
// between them is misleading.
ProblemInstance make_mtmo4_replica();

// Suite registry: "mtso-s" (optionally "mtso-s:<k>" for one of its nine
// problems), "cmt-s", "mtmo4".
std::vector<std::string> suite_ids();
std::vector<ProblemInstance> make_suite(const SuiteConfig& config);

// Reference data of one task (value / front sample / HV reference point).
const OptimumData& get_optimum(const ProblemInstance& problem, int task);

} // namespace mto
