#include "mto/run_state.hpp"

#include <cmath>

#include "mto/evaluate.hpp"

namespace mto {

RunState::RunState(const ProblemInstance& problem, std::uint64_t seed, int data_length, bool save_dec)
    : num_tasks_(problem.num_tasks()), max_fe_(problem.max_fe), rng_(seed), save_dec_(save_dec),
      best_(problem.tasks.size()) {
    if (data_length < 1) throw ConfigError("data_length must be at least 1");
    eval_points_.reserve(static_cast<std::size_t>(data_length));
    if (data_length == 1) {
        eval_points_.push_back(max_fe_);
    } else {
        for (int i = 0; i < data_length; ++i) {
            double frac = static_cast<double>(i) / static_cast<double>(data_length - 1);
            eval_points_.push_back(std::llround(frac * static_cast<double>(max_fe_)));
        }
    }
}

const std::optional<Individual>& RunState::best(int task) const {
    if (task < 0 || task >= num_tasks_) throw DimensionError("best: task index out of range");
    return best_[static_cast<std::size_t>(task)];
}

void RunState::offer_best(int task, const Individual& candidate) {
    if (task < 0 || task >= num_tasks_) throw DimensionError("offer_best: task index out of range");
    auto& slot = best_[static_cast<std::size_t>(task)];
    if (!slot || compare_feasible(candidate.obj[0], candidate.cv, slot->obj[0], slot->cv) < 0) slot = candidate;
}

void RunState::record_due(const SnapshotFn& snap) {
    while (next_checkpoint_ < eval_points_.size() && fe_ >= eval_points_[next_checkpoint_]) {
        std::vector<TaskSnapshot> row;
        row.reserve(static_cast<std::size_t>(num_tasks_));
        for (int t = 0; t < num_tasks_; ++t) row.push_back(snap(t));
        history_.push_back(std::move(row));
        ++next_checkpoint_;
    }
}

void RunState::finish(const SnapshotFn& snap) {
    while (next_checkpoint_ < eval_points_.size()) {
        std::vector<TaskSnapshot> row;
        row.reserve(static_cast<std::size_t>(num_tasks_));
        for (int t = 0; t < num_tasks_; ++t) row.push_back(snap(t));
        history_.push_back(std::move(row));
        ++next_checkpoint_;
    }
}

} // namespace mto
