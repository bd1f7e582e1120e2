#pragma once

#include <string>
#include <vector>

#include "mto/archive.hpp"
#include "mto/metric_result.hpp"

namespace mto {

// Final best objective per (problem, task); convergence series is the
// best-so-far trajectory. Single-objective archives only.
MetricResult metric_obj(const ExperimentData& data);

// Final constraint violation of the best individual per (problem, task).
// Consumers conventionally display Obj where CV is zero and CV otherwise.
MetricResult metric_cv(const ExperimentData& data);

// Multitask score: per task the final objectives of all algorithms and reps
// are pooled and z-scored (population sigma; degenerate pool scores 0); a
// cell holds the task-mean z of its rep, so the rep-mean of a row equals the
// pooled mean over tasks and reps. One row per problem, lower is better.
MetricResult metric_mts(const ExperimentData& data);

// Unified value: like MTS but min-max normalized per task pool (degenerate
// pool scores 0), so values lie in [0,1].
MetricResult metric_uv(const ExperimentData& data);

// Indicator metrics over the final populations of multi-objective archives.
// igd/igd+ need stored true fronts; hv needs stored reference points. The
// convergence series reruns the indicator per checkpoint and pareto holds the
// final non-dominated sets.
MetricResult metric_igd(const ExperimentData& data);
MetricResult metric_igd_plus(const ExperimentData& data);
MetricResult metric_hv(const ExperimentData& data);

// Recorded wall seconds per run; one row per problem.
MetricResult metric_runtime(const ExperimentData& data);

// Registry: obj, cv, mts, uv, igd, igd+, hv, runtime.
std::vector<std::string> metric_names();
MetricResult compute_metric(const ExperimentData& data, const std::string& name);

} // namespace mto
