#pragma once

#include "mto/archive.hpp"

namespace mto {

enum class SplitAxis { Reps, Algorithms, Problems };

SplitAxis parse_split_axis(const std::string& name);

// Structural equality; NaN compares equal to NaN so round trips can be checked.
bool deep_equal(const ExperimentData& a, const ExperimentData& b);

// All merges validate compatibility up front and never modify their inputs.
// Cached metrics are dropped: they describe the pre-merge tensor shape.
ExperimentData merge_reps(const ExperimentData& a, const ExperimentData& b);
ExperimentData merge_algorithms(const ExperimentData& a, const ExperimentData& b);
ExperimentData merge_problems(const ExperimentData& a, const ExperimentData& b);

// Partitions along the axis. `groups` lists member indices per output archive;
// indices left unmentioned form one trailing complement group. An empty groups
// list splits into singletons. Outputs never share indices with each other.
std::vector<ExperimentData> split(const ExperimentData& data, SplitAxis axis,
                                  std::vector<std::vector<int>> groups = {});

// Rounds objective, constraint-violation, and runtime values half away from
// zero to `decimals` places. Decision vectors, seeds, and problem metadata
// keep full precision. Cached metrics are dropped as stale.
ExperimentData set_precision(const ExperimentData& data, int decimals);

} // namespace mto
