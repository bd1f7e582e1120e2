#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mto/algorithm.hpp"
#include "mto/metric_result.hpp"
#include "mto/types.hpp"

namespace mto {

inline constexpr const char* kSchemaVersion = "mtodata/1";
inline constexpr const char* kArchiveSuffix = ".mtodata.json";

// Archived description of one algorithm column.
struct AlgorithmRecord {
    std::string name;
    Params params;
};

// Archived description of one task: enough to decode decision vectors and to
// recompute indicator metrics without the live problem.
struct TaskRecord {
    int dim = 0;
    int num_objectives = 1;
    Vector lower;
    Vector upper;
    OptimumData optimum;
};

struct ProblemRecord {
    std::string name;
    long long max_fe = 0;
    int pop_size = 0;
    std::vector<TaskRecord> tasks;

    int num_tasks() const { return static_cast<int>(tasks.size()); }
    bool multi_objective() const {
        for (const auto& t : tasks)
            if (t.num_objectives > 1) return true;
        return false;
    }
};

// The experiment archive: a P x A x R block of run results plus enough
// metadata to reproduce, merge, and analyze it. Stored as a single JSON
// document (optionally gzipped) with shape-descriptor tensors; see
// docs/archive_schema.md.
struct ExperimentData {
    std::string schema_version = kSchemaVersion;
    std::string rng_id;
    int reps = 0;
    int data_length = 0;
    bool save_dec = false;
    std::uint64_t base_seed = 0;
    std::vector<std::uint64_t> base_seeds; // per rep: base seed of the experiment that produced it
    std::vector<std::uint64_t> rep_seeds;  // per rep: seed actually passed to the runs
    std::vector<AlgorithmRecord> algorithms;
    std::vector<ProblemRecord> problems;
    std::vector<RunResult> results;  // flat, index (p * A + a) * R + r
    std::vector<double> run_times;   // same layout, wall seconds
    std::map<std::string, MetricResult> metrics;
    nlohmann::json extra = nlohmann::json::object(); // unknown top-level fields, preserved on save

    int num_problems() const { return static_cast<int>(problems.size()); }
    int num_algorithms() const { return static_cast<int>(algorithms.size()); }

    std::size_t idx(int p, int a, int r) const;
    const RunResult& result(int p, int a, int r) const { return results[idx(p, a, r)]; }
    RunResult& result(int p, int a, int r) { return results[idx(p, a, r)]; }

    // Shape and cross-reference checks; throws IntegrityError.
    void validate() const;
};

// Serialization. save() writes atomically (temp file + rename) and gzips
// when the path ends in ".gz"; load() detects gzip by magic bytes.
void save(const ExperimentData& data, const std::string& path);
ExperimentData load(const std::string& path);

// In-memory (de)serialization used by save/load and the tests.
std::string serialize(const ExperimentData& data);
ExperimentData deserialize(const std::string& text);

} // namespace mto
