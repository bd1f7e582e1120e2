#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mto/tensor.hpp"
#include "mto/types.hpp"

namespace mto {

// Output of a metric: a named rows x algorithms x reps table, optionally a
// per-cell convergence series over the checkpoints and per-cell final
// non-dominated objective sets.
struct MetricResult {
    enum class Orientation { Min, Max };

    Orientation orientation = Orientation::Min;
    std::vector<std::string> row_names;    // problem or problem-task labels
    std::vector<std::string> column_names; // algorithm names
    Tensor3 table;                         // rows x cols x reps
    std::optional<Tensor4> converge;       // rows x cols x reps x G
    Matrix converge_evals;                 // rows x G nominal evaluation axis
    std::vector<Matrix> pareto;            // rows*cols*reps sets, row-major; empty when n/a

    std::size_t pareto_idx(int row, int col, int rep) const {
        return (static_cast<std::size_t>(row) * static_cast<std::size_t>(table.d1) +
                static_cast<std::size_t>(col)) *
                   static_cast<std::size_t>(table.d2) +
               static_cast<std::size_t>(rep);
    }

    void validate() const;
};

} // namespace mto
