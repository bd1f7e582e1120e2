#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mto/rng.hpp"
#include "mto/types.hpp"

namespace mto {

// State of one task captured at a checkpoint. For single-objective tasks the
// matrices hold one row (the best-so-far point); for multi-objective tasks one
// row per population member. dec holds the first task.dim components of the
// unified points and stays empty when decision logging is off.
struct TaskSnapshot {
    Matrix obj;
    Vector cv;
    Matrix dec;
};

// Mutable per-run bookkeeping shared by all algorithms: the evaluation
// counter, the random stream, best-so-far tracking and the checkpoint
// recorder.
//
// Checkpoints: data_length thresholds are spread evenly over [0, max_fe]
// (first 0, last max_fe). After every generation each threshold that the
// evaluation counter has crossed records the current state, so a generation
// crossing several thresholds fills several identical rows, and on
// termination the remaining rows are filled with the final state. Every run
// therefore yields exactly data_length rows on a shared nominal axis.
class RunState {
public:
    RunState(const ProblemInstance& problem, std::uint64_t seed, int data_length, bool save_dec);

    Rng& rng() { return rng_; }

    long long fe() const { return fe_; }
    void add_fe(long long n) { fe_ += n; }

    // 1-based index of the generation currently executing; 0 before the loop.
    long long gen() const { return gen_; }
    void next_gen() { ++gen_; }

    long long nonfinite_evals() const { return nonfinite_; }
    void count_nonfinite() { ++nonfinite_; }

    int data_length() const { return static_cast<int>(eval_points_.size()); }
    bool save_dec() const { return save_dec_; }
    const std::vector<long long>& eval_points() const { return eval_points_; }

    // Best-so-far individual per single-objective task.
    const std::optional<Individual>& best(int task) const;
    void offer_best(int task, const Individual& candidate);

    using SnapshotFn = std::function<TaskSnapshot(int task)>;

    // Records one row per threshold crossed so far.
    void record_due(const SnapshotFn& snap);

    // Pads the history with the final state up to data_length rows.
    void finish(const SnapshotFn& snap);

    const std::vector<std::vector<TaskSnapshot>>& history() const { return history_; }
    int num_tasks() const { return num_tasks_; }

private:
    int num_tasks_;
    long long max_fe_;
    Rng rng_;
    long long fe_ = 0;
    long long gen_ = 0;
    long long nonfinite_ = 0;
    bool save_dec_;
    std::vector<long long> eval_points_;
    std::vector<std::optional<Individual>> best_;
    std::vector<std::vector<TaskSnapshot>> history_;
    std::size_t next_checkpoint_ = 0;
};

} // namespace mto
