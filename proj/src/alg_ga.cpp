#include "mto/algorithm.hpp"
#include "mto/evaluate.hpp"

namespace mto {

namespace {

// Single-task elitist GA run independently per task on a near-equal split of
// the evaluation budget: binary tournaments pick parents, SBX plus polynomial
// mutation produce N offspring, (mu+lambda) truncation keeps the best N.
class GaAlgorithm final : public Algorithm {
public:
    GaAlgorithm()
        : Algorithm("ga", AlgoTags{},
                    Params{{"sbx_eta", 15.0}, {"pm_eta", 15.0}, {"pc", 1.0}, {"pm", -1.0}, {"tournament_size", 2.0}}) {}

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
                step(problem, t, pops[static_cast<std::size_t>(t)], op, state);
                spent[static_cast<std::size_t>(t)] += n;
            }
        }
    }

private:
    static void step(const ProblemInstance& problem, int task, std::vector<Individual>& pop,
                     const OperatorParams& op, RunState& state) {
        int n = static_cast<int>(pop.size());
        auto better = [&](int i, int j) {
            const Individual& a = pop[static_cast<std::size_t>(i)];
            const Individual& b = pop[static_cast<std::size_t>(j)];
            return compare_feasible(a.obj[0], a.cv, b.obj[0], b.cv);
        };
        std::vector<Individual> offspring;
        offspring.reserve(static_cast<std::size_t>(n));
        while (static_cast<int>(offspring.size()) < n) {
            int i = tournament_select(n, op.tournament_size, better, state.rng());
            int j = tournament_select(n, op.tournament_size, better, state.rng());
            auto [c1, c2] = sbx_crossover(pop[static_cast<std::size_t>(i)].dec, pop[static_cast<std::size_t>(j)].dec,
                                          op, state.rng());
            Individual a;
            a.dec = polynomial_mutation(c1, op, state.rng());
            a.skill_factor = task;
            offspring.push_back(std::move(a));
            if (static_cast<int>(offspring.size()) < n) {
                Individual b;
                b.dec = polynomial_mutation(c2, op, state.rng());
                b.skill_factor = task;
                offspring.push_back(std::move(b));
            }
        }
        evaluate(problem, task, offspring, state);
        pop = elitist_select(pop, offspring, n, false);
    }
};

} // namespace

std::unique_ptr<Algorithm> make_ga() { return std::make_unique<GaAlgorithm>(); }

} // namespace mto
