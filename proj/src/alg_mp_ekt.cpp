#include <algorithm>
#include <cmath>

#include "mto/algorithm.hpp"
#include "mto/evaluate.hpp"

namespace mto {

namespace {

// Multi-population DE with explicit knowledge transfer: one DE population per
// task; every transfer_interval generations the first transfer_count trials
// of each task are replaced by copies of elites (top 10%) sampled from a
// uniformly chosen other population. With transfer_count 0 the populations
// evolve independently.
class MpEktAlgorithm final : public Algorithm {
public:
    MpEktAlgorithm()
        : Algorithm("mp-ekt", AlgoTags{},
                    Params{{"de_f", 0.5}, {"de_cr", 0.9}, {"transfer_interval", 1.0}, {"transfer_count", -1.0}}) {}

    void run(const ProblemInstance& problem, RunState& state) override {
        OperatorParams op = operator_params(problem);
        int num_tasks = problem.num_tasks();
        int n = problem.pop_size;
        auto interval = static_cast<long long>(params().get("transfer_interval"));
        if (interval < 1) throw ConfigError("transfer_interval must be at least 1");
        double raw_count = params().get("transfer_count");
        int count = raw_count < 0 ? static_cast<int>(std::ceil(0.1 * n)) : static_cast<int>(raw_count);
        if (count < 0 || count > n) throw ConfigError("transfer_count must lie in [0, pop_size]");
        int elites = std::max(1, static_cast<int>(std::ceil(0.1 * n)));

        std::vector<std::vector<Individual>> pops(static_cast<std::size_t>(num_tasks));
        for (int t = 0; t < num_tasks; ++t) {
            auto& pop = pops[static_cast<std::size_t>(t)];
            pop = random_population(n, problem.unified_dim, t, state.rng());
            evaluate(problem, t, pop, state);
        }
        auto snap = [&](int t) { return best_snapshot(state, problem, t); };
        while (not_terminated(state, problem, snap)) {
            bool due = num_tasks > 1 && count > 0 && (state.gen() - 1) % interval == 0;
            for (int t = 0; t < num_tasks; ++t) {
                auto& pop = pops[static_cast<std::size_t>(t)];
                std::vector<Individual> trials;
                trials.reserve(static_cast<std::size_t>(n));
                int incoming = due ? count : 0;
                if (incoming > 0) {
                    int donor = state.rng().uniform_int(num_tasks - 1);
                    if (donor >= t) ++donor;
                    auto elite_idx = top_indices(pops[static_cast<std::size_t>(donor)], elites);
                    for (int i = 0; i < incoming; ++i) {
                        const Individual& src = pops[static_cast<std::size_t>(donor)]
                            [static_cast<std::size_t>(elite_idx[static_cast<std::size_t>(
                                state.rng().uniform_int(static_cast<int>(elite_idx.size())))])];
                        Individual copy;
                        copy.dec = src.dec;
                        copy.skill_factor = t;
                        trials.push_back(std::move(copy));
                    }
                }
                auto rest = de_trials(pop, incoming, op, state.rng());
                for (auto& tr : rest) trials.push_back(std::move(tr));
                evaluate(problem, t, trials, state);
                de_replace(pop, trials);
            }
        }
    }

private:
    static std::vector<int> top_indices(const std::vector<Individual>& pop, int k) {
        std::vector<int> order(pop.size());
        for (int i = 0; i < static_cast<int>(order.size()); ++i) order[static_cast<std::size_t>(i)] = i;
        std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
            const Individual& a = pop[static_cast<std::size_t>(i)];
            const Individual& b = pop[static_cast<std::size_t>(j)];
            return compare_feasible(a.obj[0], a.cv, b.obj[0], b.cv) < 0;
        });
        order.resize(static_cast<std::size_t>(std::min<int>(k, static_cast<int>(pop.size()))));
        return order;
    }
};

} // namespace

std::unique_ptr<Algorithm> make_mp_ekt() { return std::make_unique<MpEktAlgorithm>(); }

} // namespace mto
