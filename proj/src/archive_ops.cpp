#include "mto/archive_ops.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mto {

namespace {

bool deq(double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; }

bool deq(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!deq(x[i], y[i])) return false;
    return true;
}

bool deq(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
    for (Eigen::Index r = 0; r < x.rows(); ++r)
        for (Eigen::Index c = 0; c < x.cols(); ++c)
            if (!deq(x(r, c), y(r, c))) return false;
    return true;
}

template <typename T>
bool deq_opt(const std::optional<T>& x, const std::optional<T>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || deq(*x, *y);
}

bool deq(const OptimumData& x, const OptimumData& y) {
    if (x.value.has_value() != y.value.has_value()) return false;
    if (x.value && !deq(*x.value, *y.value)) return false;
    return deq_opt(x.decision, y.decision) && deq_opt(x.front, y.front) && deq_opt(x.ref_point, y.ref_point);
}

bool deq(const TaskRecord& x, const TaskRecord& y) {
    return x.dim == y.dim && x.num_objectives == y.num_objectives && deq(x.lower, y.lower) && deq(x.upper, y.upper) &&
           deq(x.optimum, y.optimum);
}

bool deq(const ProblemRecord& x, const ProblemRecord& y) {
    if (x.name != y.name || x.max_fe != y.max_fe || x.pop_size != y.pop_size || x.tasks.size() != y.tasks.size())
        return false;
    for (std::size_t i = 0; i < x.tasks.size(); ++i)
        if (!deq(x.tasks[i], y.tasks[i])) return false;
    return true;
}

bool deq(const AlgorithmRecord& x, const AlgorithmRecord& y) { return x.name == y.name && x.params == y.params; }

bool deq(const TaskSeries& x, const TaskSeries& y);
bool deq(const RunResult& x, const RunResult& y);
bool deq(const MetricResult& x, const MetricResult& y);

template <typename T>
bool deq_list(const std::vector<T>& x, const std::vector<T>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!deq(x[i], y[i])) return false;
    return true;
}

bool deq(const TaskSeries& x, const TaskSeries& y) {
    if (x.multi != y.multi || x.obj.size() != y.obj.size() || x.cv.size() != y.cv.size() ||
        x.dec.size() != y.dec.size())
        return false;
    for (std::size_t i = 0; i < x.obj.size(); ++i)
        if (!deq(x.obj[i], y.obj[i])) return false;
    for (std::size_t i = 0; i < x.cv.size(); ++i)
        if (!deq(x.cv[i], y.cv[i])) return false;
    for (std::size_t i = 0; i < x.dec.size(); ++i)
        if (!deq(x.dec[i], y.dec[i])) return false;
    return true;
}

bool deq(const RunResult& x, const RunResult& y) {
    if (x.eval_points != y.eval_points || x.nonfinite_evals != y.nonfinite_evals || x.failed != y.failed ||
        x.error != y.error)
        return false;
    return deq_list(x.tasks, y.tasks);
}

bool deq(const MetricResult& x, const MetricResult& y) {
    if (x.orientation != y.orientation || x.row_names != y.row_names || x.column_names != y.column_names) return false;
    auto tensor_eq = [](const auto& a, const auto& b) {
        if (a.v.size() != b.v.size()) return false;
        for (std::size_t i = 0; i < a.v.size(); ++i)
            if (!deq(a.v[i], b.v[i])) return false;
        return true;
    };
    if (x.table.d0 != y.table.d0 || x.table.d1 != y.table.d1 || x.table.d2 != y.table.d2 ||
        !tensor_eq(x.table, y.table))
        return false;
    if (x.converge.has_value() != y.converge.has_value()) return false;
    if (x.converge) {
        if (x.converge->d0 != y.converge->d0 || x.converge->d1 != y.converge->d1 ||
            x.converge->d2 != y.converge->d2 || x.converge->d3 != y.converge->d3 ||
            !tensor_eq(*x.converge, *y.converge))
            return false;
        if (!deq(x.converge_evals, y.converge_evals)) return false;
    }
    return deq_list(x.pareto, y.pareto);
}

void require(bool ok, const std::string& field) {
    if (!ok) throw MergeError("archives are incompatible: field '" + field + "' differs");
}

// Shared settings every merge demands; axis-specific checks come on top.
void check_common(const ExperimentData& a, const ExperimentData& b) {
    require(a.schema_version == b.schema_version, "schema_version");
    require(a.rng_id == b.rng_id, "rng");
    require(a.data_length == b.data_length, "data_length");
    require(a.save_dec == b.save_dec, "save_dec");
}

void check_same_seeds(const ExperimentData& a, const ExperimentData& b) {
    require(a.reps == b.reps, "reps");
    require(a.base_seed == b.base_seed, "base_seed");
    require(a.base_seeds == b.base_seeds, "base_seeds");
    require(a.rep_seeds == b.rep_seeds, "rep_seeds");
}

nlohmann::json merge_extra(const nlohmann::json& a, const nlohmann::json& b) {
    nlohmann::json out = a.is_object() ? a : nlohmann::json::object();
    if (b.is_object())
        for (auto it = b.begin(); it != b.end(); ++it)
            if (!out.contains(it.key())) out[it.key()] = it.value();
    return out;
}

std::vector<std::vector<int>> resolve_groups(std::vector<std::vector<int>> groups, int n) {
    if (groups.empty()) {
        for (int i = 0; i < n; ++i) groups.push_back({i});
        return groups;
    }
    std::set<int> seen;
    for (const auto& g : groups) {
        if (g.empty()) throw ConfigError("split groups must not be empty");
        for (int i : g) {
            if (i < 0 || i >= n) throw ConfigError("split index out of range: " + std::to_string(i));
            if (!seen.insert(i).second) throw ConfigError("split index listed twice: " + std::to_string(i));
        }
    }
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (!seen.count(i)) rest.push_back(i);
    if (!rest.empty()) groups.push_back(std::move(rest));
    return groups;
}

} // namespace

SplitAxis parse_split_axis(const std::string& name) {
    if (name == "reps") return SplitAxis::Reps;
    if (name == "algorithms") return SplitAxis::Algorithms;
    if (name == "problems") return SplitAxis::Problems;
    throw ConfigError("unknown split axis: " + name + " (expected reps, algorithms, or problems)");
}

bool deep_equal(const ExperimentData& a, const ExperimentData& b) {
    if (a.schema_version != b.schema_version || a.rng_id != b.rng_id || a.reps != b.reps ||
        a.data_length != b.data_length || a.save_dec != b.save_dec || a.base_seed != b.base_seed ||
        a.base_seeds != b.base_seeds || a.rep_seeds != b.rep_seeds)
        return false;
    if (!deq_list(a.algorithms, b.algorithms) || !deq_list(a.problems, b.problems)) return false;
    if (!deq_list(a.results, b.results)) return false;
    if (a.run_times.size() != b.run_times.size()) return false;
    for (std::size_t i = 0; i < a.run_times.size(); ++i)
        if (!deq(a.run_times[i], b.run_times[i])) return false;
    if (a.metrics.size() != b.metrics.size()) return false;
    for (const auto& [name, metric] : a.metrics) {
        auto it = b.metrics.find(name);
        if (it == b.metrics.end() || !deq(metric, it->second)) return false;
    }
    return a.extra == b.extra;
}

ExperimentData merge_reps(const ExperimentData& a, const ExperimentData& b) {
    check_common(a, b);
    require(deq_list(a.algorithms, b.algorithms), "algorithms");
    require(deq_list(a.problems, b.problems), "problems");
    ExperimentData out = a;
    out.metrics.clear();
    out.extra = merge_extra(a.extra, b.extra);
    out.reps = a.reps + b.reps;
    out.rep_seeds.insert(out.rep_seeds.end(), b.rep_seeds.begin(), b.rep_seeds.end());
    out.base_seeds.insert(out.base_seeds.end(), b.base_seeds.begin(), b.base_seeds.end());
    out.base_seed = out.base_seeds.empty() ? a.base_seed : out.base_seeds.front();
    out.results.clear();
    out.run_times.clear();
    for (int p = 0; p < a.num_problems(); ++p) {
        for (int al = 0; al < a.num_algorithms(); ++al) {
            for (int r = 0; r < a.reps; ++r) {
                out.results.push_back(a.results[a.idx(p, al, r)]);
                out.run_times.push_back(a.run_times[a.idx(p, al, r)]);
            }
            for (int r = 0; r < b.reps; ++r) {
                out.results.push_back(b.results[b.idx(p, al, r)]);
                out.run_times.push_back(b.run_times[b.idx(p, al, r)]);
            }
        }
    }
    out.validate();
    return out;
}

ExperimentData merge_algorithms(const ExperimentData& a, const ExperimentData& b) {
    check_common(a, b);
    check_same_seeds(a, b);
    require(deq_list(a.problems, b.problems), "problems");
    for (const auto& x : a.algorithms)
        for (const auto& y : b.algorithms)
            if (x.name == y.name) throw MergeError("duplicate algorithm name in merge: " + x.name);
    ExperimentData out = a;
    out.metrics.clear();
    out.extra = merge_extra(a.extra, b.extra);
    out.algorithms.insert(out.algorithms.end(), b.algorithms.begin(), b.algorithms.end());
    out.results.clear();
    out.run_times.clear();
    for (int p = 0; p < a.num_problems(); ++p) {
        for (int al = 0; al < a.num_algorithms(); ++al)
            for (int r = 0; r < a.reps; ++r) {
                out.results.push_back(a.results[a.idx(p, al, r)]);
                out.run_times.push_back(a.run_times[a.idx(p, al, r)]);
            }
        for (int al = 0; al < b.num_algorithms(); ++al)
            for (int r = 0; r < b.reps; ++r) {
                out.results.push_back(b.results[b.idx(p, al, r)]);
                out.run_times.push_back(b.run_times[b.idx(p, al, r)]);
            }
    }
    out.validate();
    return out;
}

ExperimentData merge_problems(const ExperimentData& a, const ExperimentData& b) {
    check_common(a, b);
    check_same_seeds(a, b);
    require(deq_list(a.algorithms, b.algorithms), "algorithms");
    for (const auto& x : a.problems)
        for (const auto& y : b.problems)
            if (x.name == y.name) throw MergeError("duplicate problem name in merge: " + x.name);
    ExperimentData out = a;
    out.metrics.clear();
    out.extra = merge_extra(a.extra, b.extra);
    out.problems.insert(out.problems.end(), b.problems.begin(), b.problems.end());
    out.results.insert(out.results.end(), b.results.begin(), b.results.end());
    out.run_times.insert(out.run_times.end(), b.run_times.begin(), b.run_times.end());
    out.validate();
    return out;
}

std::vector<ExperimentData> split(const ExperimentData& data, SplitAxis axis, std::vector<std::vector<int>> groups) {
    int n = axis == SplitAxis::Reps         ? data.reps
            : axis == SplitAxis::Algorithms ? data.num_algorithms()
                                            : data.num_problems();
    groups = resolve_groups(std::move(groups), n);
    std::vector<ExperimentData> out;
    out.reserve(groups.size());
    for (const auto& g : groups) {
        ExperimentData part = data;
        part.metrics.clear();
        part.results.clear();
        part.run_times.clear();
        if (axis == SplitAxis::Reps) {
            part.reps = static_cast<int>(g.size());
            part.rep_seeds.clear();
            part.base_seeds.clear();
            for (int r : g) {
                part.rep_seeds.push_back(data.rep_seeds[static_cast<std::size_t>(r)]);
                part.base_seeds.push_back(data.base_seeds[static_cast<std::size_t>(r)]);
            }
            part.base_seed = part.base_seeds.empty() ? data.base_seed : part.base_seeds.front();
            for (int p = 0; p < data.num_problems(); ++p)
                for (int al = 0; al < data.num_algorithms(); ++al)
                    for (int r : g) {
                        part.results.push_back(data.results[data.idx(p, al, r)]);
                        part.run_times.push_back(data.run_times[data.idx(p, al, r)]);
                    }
        } else if (axis == SplitAxis::Algorithms) {
            part.algorithms.clear();
            for (int al : g) part.algorithms.push_back(data.algorithms[static_cast<std::size_t>(al)]);
            for (int p = 0; p < data.num_problems(); ++p)
                for (int al : g)
                    for (int r = 0; r < data.reps; ++r) {
                        part.results.push_back(data.results[data.idx(p, al, r)]);
                        part.run_times.push_back(data.run_times[data.idx(p, al, r)]);
                    }
        } else {
            part.problems.clear();
            for (int p : g) part.problems.push_back(data.problems[static_cast<std::size_t>(p)]);
            for (int p : g)
                for (int al = 0; al < data.num_algorithms(); ++al)
                    for (int r = 0; r < data.reps; ++r) {
                        part.results.push_back(data.results[data.idx(p, al, r)]);
                        part.run_times.push_back(data.run_times[data.idx(p, al, r)]);
                    }
        }
        part.validate();
        out.push_back(std::move(part));
    }
    return out;
}

ExperimentData set_precision(const ExperimentData& data, int decimals) {
    double scale = std::pow(10.0, decimals);
    auto round_one = [scale](double v) {
        if (!std::isfinite(v) || !std::isfinite(scale)) return v;
        return std::round(v * scale) / scale;
    };
    ExperimentData out = data;
    out.metrics.clear();
    for (auto& res : out.results) {
        for (auto& series : res.tasks) {
            for (auto& m : series.obj)
                for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = round_one(m(i));
            for (auto& v : series.cv)
                for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = round_one(v[i]);
        }
        res.wall_time = round_one(res.wall_time);
    }
    for (auto& t : out.run_times) t = round_one(t);
    return out;
}

} // namespace mto
