#include "mto/algorithm.hpp"
#include "mto/evaluate.hpp"

namespace mto {

std::vector<Individual> de_trials(const std::vector<Individual>& pop, int from, const OperatorParams& params,
                                  Rng& rng) {
    std::vector<Vector> decs;
    decs.reserve(pop.size());
    for (const Individual& ind : pop) decs.push_back(ind.dec);
    std::vector<Individual> trials;
    trials.reserve(pop.size() - static_cast<std::size_t>(from));
    for (int i = from; i < static_cast<int>(pop.size()); ++i) {
        Individual t;
        t.dec = de_rand_1_bin(decs, i, params, rng);
        t.skill_factor = pop[static_cast<std::size_t>(i)].skill_factor;
        trials.push_back(std::move(t));
    }
    return trials;
}

void de_replace(std::vector<Individual>& pop, std::span<const Individual> trials) {
    if (trials.size() != pop.size()) throw OperatorError("de_replace: trial count must match the population");
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const Individual& t = trials[i];
        const Individual& x = pop[i];
        if (compare_feasible(t.obj[0], t.cv, x.obj[0], x.cv) <= 0) pop[i] = t;
    }
}

namespace {

// Single-task DE/rand/1/bin run independently per task on a near-equal split
// of the evaluation budget, with one-to-one greedy replacement.
class DeAlgorithm final : public Algorithm {
public:
    DeAlgorithm() : Algorithm("de", AlgoTags{}, Params{{"de_f", 0.5}, {"de_cr", 0.9}}) {}

    void run(const ProblemInstance& problem, RunState& state) override {
        OperatorParams op = operator_params(problem);
        int num_tasks = problem.num_tasks();
        int n = problem.pop_size;
        auto shares = task_shares(problem.max_fe, num_tasks);
        std::vector<std::vector<Individual>> pops(static_cast<std::size_t>(num_tasks));
        std::vector<long long> spent(static_cast<std::size_t>(num_tasks), 0);
        for (int t = 0; t < num_tasks; ++t) {
            auto& pop = pops[static_cast<std::size_t>(t)];
            pop = random_population(n, problem.unified_dim, t, state.rng());
            evaluate(problem, t, pop, state);
            spent[static_cast<std::size_t>(t)] += n;
        }
        auto snap = [&](int t) { return best_snapshot(state, problem, t); };
        while (not_terminated(state, problem, snap)) {
            for (int t = 0; t < num_tasks; ++t) {
                if (spent[static_cast<std::size_t>(t)] >= shares[static_cast<std::size_t>(t)]) continue;
                auto& pop = pops[static_cast<std::size_t>(t)];
                auto trials = de_trials(pop, 0, op, state.rng());
                evaluate(problem, t, trials, state);
                de_replace(pop, trials);
                spent[static_cast<std::size_t>(t)] += n;
            }
        }
    }
};

} // namespace

std::unique_ptr<Algorithm> make_de() { return std::make_unique<DeAlgorithm>(); }

} // namespace mto
