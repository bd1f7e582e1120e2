#include "mto/evaluate.hpp"

#include <cmath>

#include "mto/unified.hpp"

namespace mto {

int compare_feasible(double obj_a, double cv_a, double obj_b, double cv_b) {
    bool fa = cv_a <= 0.0;
    bool fb = cv_b <= 0.0;
    if (fa != fb) return fa ? -1 : 1;
    if (!fa && cv_a != cv_b) return cv_a < cv_b ? -1 : 1;
    if (obj_a != obj_b) return obj_a < obj_b ? -1 : 1;
    return 0;
}

void evaluate(const ProblemInstance& problem, int task, std::span<Individual> pop, RunState& state) {
    if (task < 0 || task >= problem.num_tasks()) throw DimensionError("evaluate: task index out of range");
    const TaskSpec& spec = problem.tasks[static_cast<std::size_t>(task)];
    for (Individual& ind : pop) {
        if (ind.dec.size() != problem.unified_dim)
            throw DimensionError("evaluate: individual size must equal the unified dimension");
        Vector x = decode_unified(ind.dec, spec);
        EvalOutput out = spec.objective(x);
        if (out.obj.size() != spec.num_objectives)
            throw DimensionError("evaluate: objective function returned the wrong number of values");
        for (Eigen::Index i = 0; i < out.obj.size(); ++i) {
            if (!std::isfinite(out.obj[i])) {
                out.obj[i] = kInf;
                state.count_nonfinite();
            }
        }
        ind.obj = std::move(out.obj);
        ind.con = out.con.cwiseMax(0.0);
        ind.cv = ind.con.size() > 0 ? ind.con.sum() : 0.0;
        ind.evaluated = true;
        if (spec.num_objectives == 1) state.offer_best(task, ind);
    }
    state.add_fe(static_cast<long long>(pop.size()));
}

TaskSnapshot best_snapshot(const RunState& state, const ProblemInstance& problem, int task) {
    const TaskSpec& spec = problem.tasks[static_cast<std::size_t>(task)];
    TaskSnapshot snap;
    const auto& best = state.best(task);
    if (best) {
        snap.obj = Matrix::Constant(1, 1, best->obj[0]);
        snap.cv = Vector::Constant(1, best->cv);
        if (state.save_dec()) snap.dec = best->dec.head(spec.dim).transpose();
    } else {
        snap.obj = Matrix::Constant(1, 1, kInf);
        snap.cv = Vector::Constant(1, 0.0);
        if (state.save_dec()) snap.dec = Matrix::Constant(1, spec.dim, 0.5);
    }
    return snap;
}

TaskSnapshot population_snapshot(std::span<const Individual> pop, const ProblemInstance& problem, int task,
                                 bool save_dec) {
    const TaskSpec& spec = problem.tasks[static_cast<std::size_t>(task)];
    TaskSnapshot snap;
    auto n = static_cast<Eigen::Index>(pop.size());
    snap.obj.resize(n, spec.num_objectives);
    snap.cv.resize(n);
    if (save_dec) snap.dec.resize(n, spec.dim);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Individual& ind = pop[static_cast<std::size_t>(i)];
        if (ind.obj.size() != spec.num_objectives)
            throw DimensionError("population_snapshot: individual evaluated on a different task");
        snap.obj.row(i) = ind.obj.transpose();
        snap.cv[i] = ind.cv;
        if (save_dec) snap.dec.row(i) = ind.dec.head(spec.dim).transpose();
    }
    return snap;
}

} // namespace mto
