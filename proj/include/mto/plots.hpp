#pragma once

#include <string>
#include <vector>

#include "mto/archive.hpp"
#include "mto/landscape.hpp"
#include "mto/metric_result.hpp"

namespace mto {

// Mean convergence trajectory of one metric row per algorithm, drawn against
// evaluations. ci_band shades mean +- 1.96 * s / sqrt(R) using the sample
// standard deviation over reps. log_y plots log10 of the values; nonpositive
// values are clipped to the smallest positive plotted datum and the clip is
// called out in a footnote. An empty columns list selects every algorithm.
std::string plot_convergence(const MetricResult& result, int row, std::vector<int> columns = {}, bool log_y = false,
                             bool ci_band = true);

// Final non-dominated objective vectors of each selected algorithm, pooled
// over reps, for one two-objective task; the true front is drawn as a dashed
// line when the archive knows it.
std::string plot_pareto(const ExperimentData& data, int problem, int task, std::vector<int> algorithms = {});

// 1D curve or 2D colored height map of a single-objective task over the
// unified space, with the infeasible region shaded.
std::string plot_landscape(const ProblemInstance& problem, int task, bool two_d, int resolution);

} // namespace mto
