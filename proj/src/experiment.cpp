#include "mto/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "mto/algorithm.hpp"
#include "mto/metrics.hpp"

namespace mto {

namespace {

int effective_workers(const ExperimentConfig& config) {
    if (const char* env = std::getenv("MTOP_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    if (!config.parallel) return 1;
    if (config.workers > 0) return config.workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

ProblemRecord record_problem(const ProblemInstance& problem) {
    ProblemRecord rec;
    rec.name = problem.name;
    rec.max_fe = problem.max_fe;
    rec.pop_size = problem.pop_size;
    for (std::size_t t = 0; t < problem.tasks.size(); ++t) {
        TaskRecord task;
        task.dim = problem.tasks[t].dim;
        task.num_objectives = problem.tasks[t].num_objectives;
        task.lower = problem.tasks[t].lower;
        task.upper = problem.tasks[t].upper;
        if (t < problem.optima.size()) task.optimum = problem.optima[t];
        rec.tasks.push_back(std::move(task));
    }
    return rec;
}

RunResult failed_result(const ProblemInstance& problem, int data_length, const std::string& error) {
    RunResult res;
    res.failed = true;
    res.error = error;
    RunState probe(problem, 0, data_length, false);
    res.eval_points = probe.eval_points();
    return res;
}

} // namespace

ExperimentData run_experiment(const ExperimentConfig& config, const SeedHook& hook) {
    validate_config(config);
    std::vector<ProblemInstance> problems = resolve_problems(config);

    ExperimentData data;
    data.schema_version = kSchemaVersion;
    data.rng_id = kRngId;
    data.reps = config.reps;
    data.data_length = config.data_length;
    data.save_dec = config.save_dec;
    data.base_seed = config.base_seed;
    for (int r = 0; r < config.reps; ++r) {
        data.base_seeds.push_back(config.base_seed);
        data.rep_seeds.push_back(config.base_seed + static_cast<std::uint64_t>(r));
    }
    for (const auto& choice : config.algorithms) {
        auto algo = AlgorithmRegistry::instance().create(choice.name);
        for (const auto& [key, value] : choice.overrides.items()) algo->params().set(key, value);
        data.algorithms.push_back({algo->name(), algo->params()});
    }
    for (const auto& p : problems) data.problems.push_back(record_problem(p));

    const int P = static_cast<int>(problems.size());
    const int A = static_cast<int>(config.algorithms.size());
    const int R = config.reps;
    const std::size_t total = static_cast<std::size_t>(P) * static_cast<std::size_t>(A) * static_cast<std::size_t>(R);
    data.results.resize(total);
    data.run_times.assign(total, 0.0);

    std::mutex hook_mutex;
    auto execute = [&](std::size_t cell) {
        int r = static_cast<int>(cell % static_cast<std::size_t>(R));
        int a = static_cast<int>((cell / static_cast<std::size_t>(R)) % static_cast<std::size_t>(A));
        int p = static_cast<int>(cell / (static_cast<std::size_t>(R) * static_cast<std::size_t>(A)));
        std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(r);
        if (hook) {
            std::lock_guard<std::mutex> lock(hook_mutex);
            hook(p, a, r, seed);
        }
        auto start = std::chrono::steady_clock::now();
        RunResult res;
        try {
            auto algo = AlgorithmRegistry::instance().create(config.algorithms[static_cast<std::size_t>(a)].name);
            for (const auto& [key, value] : config.algorithms[static_cast<std::size_t>(a)].overrides.items())
                algo->params().set(key, value);
            res = run(*algo, problems[static_cast<std::size_t>(p)], seed, config.data_length, config.save_dec);
        } catch (const std::exception& e) {
            res = failed_result(problems[static_cast<std::size_t>(p)], config.data_length, e.what());
            res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        data.run_times[cell] = res.wall_time;
        data.results[cell] = std::move(res);
    };

    int workers = effective_workers(config);
    if (workers <= 1 || total <= 1) {
        for (std::size_t cell = 0; cell < total; ++cell) execute(cell);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int count = std::min<std::size_t>(static_cast<std::size_t>(workers), total) > 0
                        ? static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), total))
                        : 1;
        pool.reserve(static_cast<std::size_t>(count));
        for (int w = 0; w < count; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t cell = next.fetch_add(1);
                    if (cell >= total) return;
                    execute(cell);
                }
            });
        for (auto& t : pool) t.join();
    }

    data.validate();
    return data;
}

const MetricResult& ensure_metric(ExperimentData& data, const std::string& name) {
    auto it = data.metrics.find(name);
    if (it != data.metrics.end()) return it->second;
    MetricResult result = compute_metric(data, name);
    return data.metrics.emplace(name, std::move(result)).first->second;
}

} // namespace mto
