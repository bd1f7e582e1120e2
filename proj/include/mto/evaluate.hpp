#pragma once

#include <span>

#include "mto/run_state.hpp"
#include "mto/types.hpp"

namespace mto {

// Constraint-dominated three-way comparison for single-objective points:
// feasible beats infeasible, among infeasible the smaller violation wins,
// otherwise the smaller objective wins. Returns -1 when a is better, +1 when
// b is better, 0 on an exact tie.
int compare_feasible(double obj_a, double cv_a, double obj_b, double cv_b);

// Decodes and evaluates each individual on the given task, writing obj, con
// and cv back. Constraint entries are clamped at zero before summing into cv;
// non-finite objective values are replaced with +infinity and counted in the
// run state. Advances the evaluation counter by the number of individuals and
// refreshes the best-so-far of single-objective tasks.
void evaluate(const ProblemInstance& problem, int task, std::span<Individual> pop, RunState& state);

// Snapshot of a single-objective task from the best-so-far record. Before the
// first evaluation the objective is +infinity.
TaskSnapshot best_snapshot(const RunState& state, const ProblemInstance& problem, int task);

// Snapshot of a population (one row per member), used by multi-objective
// algorithms.
TaskSnapshot population_snapshot(std::span<const Individual> pop, const ProblemInstance& problem, int task,
                                 bool save_dec);

} // namespace mto
