#include "mto/landscape.hpp"

#include <ostream>

#include "mto/unified.hpp"

namespace mto {

LandscapeGrid sample_landscape(const ProblemInstance& problem, int task, bool two_d, int resolution) {
    if (task < 0 || task >= problem.num_tasks()) throw DimensionError("sample_landscape: task index out of range");
    const TaskSpec& spec = problem.tasks[static_cast<std::size_t>(task)];
    if (spec.num_objectives != 1) throw ConfigError("sample_landscape covers single-objective tasks only");
    if (resolution < 2) throw ConfigError("sample_landscape: resolution must be at least 2");
    if (two_d && spec.dim < 2) throw ConfigError("sample_landscape: 2D mode needs a task of dimension 2 or more");

    LandscapeGrid grid;
    grid.two_d = two_d;
    grid.axis.resize(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i)
        grid.axis[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(resolution - 1);

    int rows = two_d ? resolution : 1;
    grid.obj.resize(rows, resolution);
    grid.feasible.resize(rows, resolution);
    Vector u = Vector::Constant(spec.dim, 0.5);
    for (int r = 0; r < rows; ++r) {
        if (two_d) u[1] = grid.axis[static_cast<std::size_t>(r)];
        for (int c = 0; c < resolution; ++c) {
            u[0] = grid.axis[static_cast<std::size_t>(c)];
            EvalOutput out = spec.objective(decode_unified(u, spec));
            grid.obj(r, c) = out.obj[0];
            grid.feasible(r, c) = out.con.size() == 0 || (out.con.array() <= 0.0).all();
        }
    }
    return grid;
}

void write_landscape_csv(const LandscapeGrid& grid, std::ostream& out) {
    if (grid.two_d) {
        out << "x,y,obj,feasible\n";
        for (Eigen::Index r = 0; r < grid.obj.rows(); ++r)
            for (Eigen::Index c = 0; c < grid.obj.cols(); ++c)
                out << grid.axis[static_cast<std::size_t>(c)] << ',' << grid.axis[static_cast<std::size_t>(r)] << ','
                    << grid.obj(r, c) << ',' << (grid.feasible(r, c) ? 1 : 0) << '\n';
    } else {
        out << "x,obj,feasible\n";
        for (Eigen::Index c = 0; c < grid.obj.cols(); ++c)
            out << grid.axis[static_cast<std::size_t>(c)] << ',' << grid.obj(0, c) << ','
                << (grid.feasible(0, c) ? 1 : 0) << '\n';
    }
}

} // namespace mto
