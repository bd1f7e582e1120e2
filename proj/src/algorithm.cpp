#include "mto/algorithm.hpp"

#include <algorithm>
#include <chrono>

namespace mto {

void Algorithm::check_compatible(const ProblemInstance& problem) const {
    for (const auto& task : problem.tasks) {
        if (task.num_objectives > 1 && !tags_.multi_objective)
            throw ConfigError(name_ + " cannot run multi-objective tasks");
        if (task.num_objectives == 1 && !tags_.single_objective)
            throw ConfigError(name_ + " cannot run single-objective tasks");
    }
}

bool Algorithm::not_terminated(RunState& state, const ProblemInstance& problem,
                               const RunState::SnapshotFn& snap) const {
    state.record_due(snap);
    if (state.fe() >= problem.max_fe) {
        state.finish(snap);
        return false;
    }
    state.next_gen();
    return true;
}

OperatorParams Algorithm::operator_params(const ProblemInstance& problem) const {
    OperatorParams op;
    if (params_.has("sbx_eta")) op.sbx_eta = params_.get("sbx_eta");
    if (params_.has("pm_eta")) op.pm_eta = params_.get("pm_eta");
    if (params_.has("pc")) op.pc = params_.get("pc");
    if (params_.has("pm") && params_.get("pm") >= 0.0) op.pm = params_.get("pm");
    if (params_.has("de_f")) op.de_f = params_.get("de_f");
    if (params_.has("de_cr")) op.de_cr = params_.get("de_cr");
    if (params_.has("tournament_size")) op.tournament_size = static_cast<int>(params_.get("tournament_size"));
    if (!op.pm) op.pm = 1.0 / static_cast<double>(problem.unified_dim);
    op.validate();
    return op;
}

RunResult run(Algorithm& algorithm, const ProblemInstance& problem, std::uint64_t seed, int data_length,
              bool save_dec) {
    algorithm.check_compatible(problem);
    RunState state(problem, seed, data_length, save_dec);
    auto start = std::chrono::steady_clock::now();
    algorithm.run(problem, state);
    auto stop = std::chrono::steady_clock::now();
    if (static_cast<int>(state.history().size()) != state.data_length())
        throw Error("run produced a history of unexpected length");

    RunResult result;
    result.eval_points = state.eval_points();
    result.wall_time = std::chrono::duration<double>(stop - start).count();
    result.nonfinite_evals = state.nonfinite_evals();
    result.tasks.resize(problem.tasks.size());
    for (int t = 0; t < problem.num_tasks(); ++t) {
        TaskSeries& series = result.tasks[static_cast<std::size_t>(t)];
        series.multi = problem.tasks[static_cast<std::size_t>(t)].num_objectives > 1;
        for (const auto& row : state.history()) {
            const TaskSnapshot& snap = row[static_cast<std::size_t>(t)];
            series.obj.push_back(snap.obj);
            series.cv.push_back(snap.cv);
            if (save_dec) series.dec.push_back(snap.dec);
        }
    }
    return result;
}

AlgorithmRegistry& AlgorithmRegistry::instance() {
    static AlgorithmRegistry reg;
    return reg;
}

AlgorithmRegistry::AlgorithmRegistry() {
    add("ga", [] { return make_ga(); });
    add("de", [] { return make_de(); });
    add("mfea", [] { return make_mfea(); });
    add("mo-mfea", [] { return make_mo_mfea(); });
    add("mp-ekt", [] { return make_mp_ekt(); });
}

void AlgorithmRegistry::add(const std::string& name, Factory factory) {
    for (const auto& [n, f] : entries_)
        if (n == name) throw RegistryError("algorithm already registered: " + name);
    entries_.emplace_back(name, factory);
}

std::unique_ptr<Algorithm> AlgorithmRegistry::create(const std::string& name) const {
    for (const auto& [n, f] : entries_)
        if (n == name) return f();
    throw RegistryError("unknown algorithm: " + name);
}

std::vector<std::string> AlgorithmRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [n, f] : entries_) out.push_back(n);
    return out;
}

std::vector<long long> task_shares(long long max_fe, int num_tasks) {
    if (num_tasks <= 0) throw ConfigError("task_shares: need at least one task");
    std::vector<long long> shares(static_cast<std::size_t>(num_tasks), max_fe / num_tasks);
    long long rest = max_fe % num_tasks;
    for (long long t = 0; t < rest; ++t) ++shares[static_cast<std::size_t>(t)];
    return shares;
}

std::vector<Individual> random_population(int n, int unified_dim, int skill_factor, Rng& rng) {
    std::vector<Individual> pop(static_cast<std::size_t>(n));
    for (Individual& ind : pop) {
        ind.dec.resize(unified_dim);
        for (Eigen::Index i = 0; i < unified_dim; ++i) ind.dec[i] = rng.uniform();
        ind.skill_factor = skill_factor;
    }
    return pop;
}

} // namespace mto
