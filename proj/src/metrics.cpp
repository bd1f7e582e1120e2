#include "mto/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mto/dominance.hpp"
#include "mto/indicators.hpp"

namespace mto {

void MetricResult::validate() const {
    if (static_cast<int>(row_names.size()) != table.d0 || static_cast<int>(column_names.size()) != table.d1)
        throw IntegrityError("metric table dimensions disagree with its names");
    if (converge && (converge->d0 != table.d0 || converge->d1 != table.d1 || converge->d2 != table.d2))
        throw IntegrityError("metric convergence tensor disagrees with the table shape");
    if (converge && (converge_evals.rows() != table.d0 || converge_evals.cols() != converge->d3))
        throw IntegrityError("metric convergence axis disagrees with the series shape");
    std::size_t cells = static_cast<std::size_t>(table.d0) * static_cast<std::size_t>(table.d1) *
                        static_cast<std::size_t>(table.d2);
    if (!pareto.empty() && pareto.size() != cells)
        throw IntegrityError("metric pareto payload disagrees with the table shape");
}

namespace {

std::vector<std::string> algorithm_columns(const ExperimentData& data) {
    std::vector<std::string> cols;
    for (const auto& a : data.algorithms) cols.push_back(a.name);
    return cols;
}

std::string task_label(const ProblemRecord& prob, int t) {
    if (prob.num_tasks() == 1) return prob.name;
    return prob.name + "-t" + std::to_string(t + 1);
}

void require_single_objective(const ExperimentData& data, const std::string& metric) {
    for (const auto& p : data.problems)
        if (p.multi_objective())
            throw ConfigError(metric + " applies to single-objective data only (problem " + p.name + ")");
}

void require_multi_objective(const ExperimentData& data, const std::string& metric) {
    for (const auto& p : data.problems)
        for (const auto& t : p.tasks)
            if (t.num_objectives < 2)
                throw ConfigError(metric + " applies to multi-objective data only (problem " + p.name + ")");
}

// Per-(problem, task) scalar series metric over single-objective archives.
MetricResult scalar_series_metric(const ExperimentData& data, const std::string& name,
                                  const std::function<double(const TaskSeries&, int g)>& pick) {
    require_single_objective(data, name);
    MetricResult out;
    out.orientation = MetricResult::Orientation::Min;
    out.column_names = algorithm_columns(data);
    int rows = 0;
    for (const auto& p : data.problems) rows += p.num_tasks();
    out.table = Tensor3(rows, data.num_algorithms(), data.reps, kNaN);
    out.converge = Tensor4(rows, data.num_algorithms(), data.reps, data.data_length, kNaN);
    out.converge_evals = Matrix::Zero(rows, data.data_length);
    int row = 0;
    for (int p = 0; p < data.num_problems(); ++p) {
        const ProblemRecord& prob = data.problems[static_cast<std::size_t>(p)];
        for (int t = 0; t < prob.num_tasks(); ++t, ++row) {
            out.row_names.push_back(task_label(prob, t));
            bool have_axis = false;
            for (int a = 0; a < data.num_algorithms(); ++a) {
                for (int r = 0; r < data.reps; ++r) {
                    const RunResult& res = data.result(p, a, r);
                    if (!have_axis && !res.eval_points.empty()) {
                        for (int g = 0; g < data.data_length; ++g)
                            out.converge_evals(row, g) =
                                static_cast<double>(res.eval_points[static_cast<std::size_t>(g)]);
                        have_axis = true;
                    }
                    if (res.failed) continue;
                    const TaskSeries& series = res.tasks[static_cast<std::size_t>(t)];
                    for (int g = 0; g < data.data_length; ++g) out.converge->at(row, a, r, g) = pick(series, g);
                    out.table.at(row, a, r) = pick(series, data.data_length - 1);
                }
            }
        }
    }
    return out;
}

// Pooled per-task normalization metric (one row per problem): normalize maps
// a final objective through statistics of the pool of all algorithms x reps.
MetricResult pooled_metric(const ExperimentData& data, const std::string& name,
                           const std::function<std::function<double(double)>(const std::vector<double>&)>& make_norm) {
    require_single_objective(data, name);
    MetricResult out;
    out.orientation = MetricResult::Orientation::Min;
    out.column_names = algorithm_columns(data);
    out.table = Tensor3(data.num_problems(), data.num_algorithms(), data.reps, kNaN);
    for (int p = 0; p < data.num_problems(); ++p) {
        const ProblemRecord& prob = data.problems[static_cast<std::size_t>(p)];
        out.row_names.push_back(prob.name);
        int num_tasks = prob.num_tasks();
        // normalized[t][a*R + r]
        Matrix scores = Matrix::Constant(num_tasks, static_cast<Eigen::Index>(data.num_algorithms()) * data.reps, kNaN);
        for (int t = 0; t < num_tasks; ++t) {
            std::vector<double> pool;
            for (int a = 0; a < data.num_algorithms(); ++a)
                for (int r = 0; r < data.reps; ++r) {
                    const RunResult& res = data.result(p, a, r);
                    if (res.failed) continue;
                    pool.push_back(res.tasks[static_cast<std::size_t>(t)].obj.back()(0, 0));
                }
            auto norm = make_norm(pool);
            for (int a = 0; a < data.num_algorithms(); ++a)
                for (int r = 0; r < data.reps; ++r) {
                    const RunResult& res = data.result(p, a, r);
                    if (res.failed) continue;
                    scores(t, static_cast<Eigen::Index>(a) * data.reps + r) =
                        norm(res.tasks[static_cast<std::size_t>(t)].obj.back()(0, 0));
                }
        }
        for (int a = 0; a < data.num_algorithms(); ++a)
            for (int r = 0; r < data.reps; ++r) {
                Eigen::Index col = static_cast<Eigen::Index>(a) * data.reps + r;
                double sum = 0.0;
                bool ok = true;
                for (int t = 0; t < num_tasks; ++t) {
                    double v = scores(t, col);
                    if (std::isnan(v)) {
                        ok = false;
                        break;
                    }
                    sum += v;
                }
                if (ok && num_tasks > 0) out.table.at(p, a, r) = sum / num_tasks;
            }
    }
    return out;
}

// Per-(problem, task) indicator metric over multi-objective archives.
MetricResult indicator_metric(const ExperimentData& data, const std::string& name,
                              MetricResult::Orientation orientation,
                              const std::function<double(const Matrix&, const TaskRecord&)>& indicator) {
    require_multi_objective(data, name);
    MetricResult out;
    out.orientation = orientation;
    out.column_names = algorithm_columns(data);
    int rows = 0;
    for (const auto& p : data.problems) rows += p.num_tasks();
    out.table = Tensor3(rows, data.num_algorithms(), data.reps, kNaN);
    out.converge = Tensor4(rows, data.num_algorithms(), data.reps, data.data_length, kNaN);
    out.converge_evals = Matrix::Zero(rows, data.data_length);
    out.pareto.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(data.num_algorithms()) *
                      static_cast<std::size_t>(data.reps));
    int row = 0;
    for (int p = 0; p < data.num_problems(); ++p) {
        const ProblemRecord& prob = data.problems[static_cast<std::size_t>(p)];
        for (int t = 0; t < prob.num_tasks(); ++t, ++row) {
            out.row_names.push_back(task_label(prob, t));
            const TaskRecord& task = prob.tasks[static_cast<std::size_t>(t)];
            bool have_axis = false;
            for (int a = 0; a < data.num_algorithms(); ++a) {
                for (int r = 0; r < data.reps; ++r) {
                    const RunResult& res = data.result(p, a, r);
                    if (!have_axis && !res.eval_points.empty()) {
                        for (int g = 0; g < data.data_length; ++g)
                            out.converge_evals(row, g) =
                                static_cast<double>(res.eval_points[static_cast<std::size_t>(g)]);
                        have_axis = true;
                    }
                    if (res.failed) continue;
                    const TaskSeries& series = res.tasks[static_cast<std::size_t>(t)];
                    for (int g = 0; g < data.data_length; ++g)
                        out.converge->at(row, a, r, g) = indicator(series.obj[static_cast<std::size_t>(g)], task);
                    out.table.at(row, a, r) = out.converge->at(row, a, r, data.data_length - 1);
                    out.pareto[out.pareto_idx(row, a, r)] = nondominated_filter(series.obj.back());
                }
            }
        }
    }
    return out;
}

} // namespace

MetricResult metric_obj(const ExperimentData& data) {
    return scalar_series_metric(data, "obj",
                                [](const TaskSeries& s, int g) { return s.obj[static_cast<std::size_t>(g)](0, 0); });
}

MetricResult metric_cv(const ExperimentData& data) {
    return scalar_series_metric(data, "cv",
                                [](const TaskSeries& s, int g) { return s.cv[static_cast<std::size_t>(g)][0]; });
}

MetricResult metric_mts(const ExperimentData& data) {
    return pooled_metric(data, "mts", [](const std::vector<double>& pool) -> std::function<double(double)> {
        double mu = 0.0;
        int n = 0;
        for (double v : pool)
            if (std::isfinite(v)) {
                mu += v;
                ++n;
            }
        if (n == 0) return [](double) { return 0.0; };
        mu /= n;
        double var = 0.0;
        for (double v : pool)
            if (std::isfinite(v)) var += (v - mu) * (v - mu);
        double sigma = std::sqrt(var / n);
        if (sigma <= 0.0) return [](double) { return 0.0; };
        return [mu, sigma](double y) { return (y - mu) / sigma; };
    });
}

MetricResult metric_uv(const ExperimentData& data) {
    return pooled_metric(data, "uv", [](const std::vector<double>& pool) -> std::function<double(double)> {
        double lo = kInf;
        double hi = -kInf;
        bool any_inf = false;
        for (double v : pool) {
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            } else {
                any_inf = true;
            }
        }
        if (!std::isfinite(lo) || hi <= lo) {
            return [any_inf](double y) { return any_inf && !std::isfinite(y) ? 1.0 : 0.0; };
        }
        return [lo, hi](double y) {
            if (!std::isfinite(y)) return 1.0;
            return std::clamp((y - lo) / (hi - lo), 0.0, 1.0);
        };
    });
}

MetricResult metric_igd(const ExperimentData& data) {
    return indicator_metric(data, "igd", MetricResult::Orientation::Min,
                            [](const Matrix& achieved, const TaskRecord& task) {
                                if (!task.optimum.front) throw ConfigError("igd needs a stored true front");
                                return igd(achieved, *task.optimum.front);
                            });
}

MetricResult metric_igd_plus(const ExperimentData& data) {
    return indicator_metric(data, "igd+", MetricResult::Orientation::Min,
                            [](const Matrix& achieved, const TaskRecord& task) {
                                if (!task.optimum.front) throw ConfigError("igd+ needs a stored true front");
                                return igd_plus(achieved, *task.optimum.front);
                            });
}

MetricResult metric_hv(const ExperimentData& data) {
    return indicator_metric(data, "hv", MetricResult::Orientation::Max,
                            [](const Matrix& achieved, const TaskRecord& task) {
                                if (!task.optimum.ref_point)
                                    throw ConfigError("hv needs a stored reference point");
                                return hypervolume(achieved, *task.optimum.ref_point);
                            });
}

MetricResult metric_runtime(const ExperimentData& data) {
    MetricResult out;
    out.orientation = MetricResult::Orientation::Min;
    out.column_names = algorithm_columns(data);
    out.table = Tensor3(data.num_problems(), data.num_algorithms(), data.reps, kNaN);
    for (int p = 0; p < data.num_problems(); ++p) {
        out.row_names.push_back(data.problems[static_cast<std::size_t>(p)].name);
        for (int a = 0; a < data.num_algorithms(); ++a)
            for (int r = 0; r < data.reps; ++r) out.table.at(p, a, r) = data.run_times[data.idx(p, a, r)];
    }
    return out;
}

std::vector<std::string> metric_names() { return {"obj", "cv", "mts", "uv", "igd", "igd+", "hv", "runtime"}; }

MetricResult compute_metric(const ExperimentData& data, const std::string& name) {
    if (name == "obj") return metric_obj(data);
    if (name == "cv") return metric_cv(data);
    if (name == "mts") return metric_mts(data);
    if (name == "uv") return metric_uv(data);
    if (name == "igd") return metric_igd(data);
    if (name == "igd+") return metric_igd_plus(data);
    if (name == "hv") return metric_hv(data);
    if (name == "runtime") return metric_runtime(data);
    std::string known;
    for (const auto& n : metric_names()) known += (known.empty() ? "" : ", ") + n;
    throw RegistryError("unknown metric: " + name + " (known: " + known + ")");
}

} // namespace mto
