#pragma once

#include <iosfwd>

#include "mto/types.hpp"

namespace mto {

// Objective and feasibility values of one task on a regular grid over the
// first one or two unified coordinates, remaining coordinates fixed at 0.5.
// 1D grids have one row; 2D grids are resolution x resolution with rows
// indexed by the second coordinate.
struct LandscapeGrid {
    bool two_d = false;
    std::vector<double> axis; // grid positions in [0,1], shared by both axes
    Matrix obj;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> feasible;
};

// Samples a single-objective task. resolution >= 2; grid covers [0,1]
// endpoints inclusive.
LandscapeGrid sample_landscape(const ProblemInstance& problem, int task, bool two_d, int resolution);

// CSV rows x,obj,feasible (1D) or x,y,obj,feasible (2D).
void write_landscape_csv(const LandscapeGrid& grid, std::ostream& out);

} // namespace mto
