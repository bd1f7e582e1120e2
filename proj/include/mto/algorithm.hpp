#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mto/run_state.hpp"
#include "mto/types.hpp"
#include "mto/variation.hpp"

namespace mto {

// What a problem may demand of an algorithm.
struct AlgoTags {
    bool multi_objective = false;   // handles tasks with more than one objective
    bool single_objective = true;   // handles single-objective tasks
    bool constrained = true;        // handles constraint violations
};

// Per-task checkpoint series of one run. obj is 1x1 per checkpoint for
// single-objective tasks and N x M for multi-objective ones; dec holds the
// unified-prefix decision variables and stays empty when logging is off.
struct TaskSeries {
    bool multi = false;
    std::vector<Matrix> obj;
    std::vector<Vector> cv;
    std::vector<Matrix> dec;
};

// Everything recorded about one (problem, algorithm, rep) run.
struct RunResult {
    std::vector<TaskSeries> tasks;
    std::vector<long long> eval_points;
    double wall_time = 0.0;
    long long nonfinite_evals = 0;
    bool failed = false;
    std::string error;
};

// Base class of every optimizer. Subclasses implement run() as
//     initialize and evaluate;
//     while (not_terminated(state, problem, snap)) advance one generation;
// where snap produces the per-task checkpoint rows. not_terminated drives the
// checkpoint recorder and the generation counter and pads the history when
// the budget is exhausted, so run() never records rows itself.
class Algorithm {
public:
    virtual ~Algorithm() = default;

    const std::string& name() const { return name_; }
    const AlgoTags& tags() const { return tags_; }
    const Params& params() const { return params_; }
    Params& params() { return params_; }

    // Throws ConfigError when the problem demands something the algorithm
    // does not support. Called by run() before any evaluation.
    void check_compatible(const ProblemInstance& problem) const;

    virtual void run(const ProblemInstance& problem, RunState& state) = 0;

protected:
    Algorithm(std::string name, AlgoTags tags, Params defaults)
        : name_(std::move(name)), tags_(tags), params_(std::move(defaults)) {}

    bool not_terminated(RunState& state, const ProblemInstance& problem, const RunState::SnapshotFn& snap) const;

    // Operator parameters assembled from params() plus the given dimension.
    OperatorParams operator_params(const ProblemInstance& problem) const;

private:
    std::string name_;
    AlgoTags tags_;
    Params params_;
};

// Executes one run: budget bookkeeping, wall time, checkpoint packaging.
RunResult run(Algorithm& algorithm, const ProblemInstance& problem, std::uint64_t seed, int data_length,
              bool save_dec);

// Registry of built-in algorithms, keyed by stable names.
class AlgorithmRegistry {
public:
    static AlgorithmRegistry& instance();

    using Factory = std::unique_ptr<Algorithm> (*)();
    void add(const std::string& name, Factory factory);
    std::unique_ptr<Algorithm> create(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    AlgorithmRegistry();
    std::vector<std::pair<std::string, Factory>> entries_;
};

std::unique_ptr<Algorithm> make_ga();
std::unique_ptr<Algorithm> make_de();
std::unique_ptr<Algorithm> make_mfea();
std::unique_ptr<Algorithm> make_mo_mfea();
std::unique_ptr<Algorithm> make_mp_ekt();

// DE/rand/1/bin trials for population targets from..N-1. Only the decision
// vectors and skill factors of the trials are filled in.
std::vector<Individual> de_trials(const std::vector<Individual>& pop, int from, const OperatorParams& params,
                                  Rng& rng);

// One-to-one greedy replacement: trials[i] replaces pop[i] unless strictly
// worse under the feasibility-first comparison.
void de_replace(std::vector<Individual>& pop, std::span<const Individual> trials);

// Assortative mating over a multifactorial population: parents meet in a
// random pairing; same-skill pairs recombine (SBX) and mutate, cross-skill
// pairs recombine with probability rmp (children then inherit either parent's
// skill uniformly), otherwise each parent mutates alone and passes its skill
// on. Returns one offspring per parent, decision vectors and skill factors
// set.
std::vector<Individual> multifactorial_offspring(const std::vector<Individual>& pop, double rmp,
                                                 const OperatorParams& params, Rng& rng);

// Evaluation budget of each task when a single-task baseline splits max_fe:
// near-equal integer shares that sum exactly to max_fe.
std::vector<long long> task_shares(long long max_fe, int num_tasks);

// Fresh uniform population of n individuals in the unified cube, with the
// given skill factor.
std::vector<Individual> random_population(int n, int unified_dim, int skill_factor, Rng& rng);

} // namespace mto
