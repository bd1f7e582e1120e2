#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mto/types.hpp"

namespace mto {

// Pareto dominance for minimization: a is nowhere worse and somewhere
// strictly better.
template <typename DA, typename DB>
bool dominates(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    if (a.size() != b.size()) throw DimensionError("dominates: objective vectors differ in size");
    bool strictly_better = false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) > b(i)) return false;
        if (a(i) < b(i)) strictly_better = true;
    }
    return strictly_better;
}

// Front index per row (0 is the non-dominated front). Rows are points,
// columns objectives.
std::vector<int> nondominated_sort(const Matrix& objs);

// Same, with constraint violations: feasible points dominate infeasible ones,
// infeasible points are ordered by violation, equal-violation points by
// Pareto dominance.
std::vector<int> nondominated_sort(const Matrix& objs, const Vector& cv);

// Indices of the rows on front 0.
std::vector<int> nondominated_front(const Matrix& objs);

// Rows of the input that no other row dominates, duplicates removed, in
// first-appearance order.
Matrix nondominated_filter(const Matrix& objs);

// NSGA-II crowding distance of each row within one front; boundary points get
// +infinity.
Vector crowding_distance(const Matrix& front);

} // namespace mto
