#include <algorithm>

#include "mto/algorithm.hpp"
#include "mto/evaluate.hpp"

namespace mto {

namespace {

// Multi-objective multifactorial EA: the MFEA mating scheme combined with
// per-task NSGA-II environmental selection over the parent+offspring members
// of each skill.
class MoMfeaAlgorithm final : public Algorithm {
public:
    MoMfeaAlgorithm()
        : Algorithm("mo-mfea", AlgoTags{.multi_objective = true, .single_objective = false, .constrained = true},
                    Params{{"rmp", 0.3}, {"sbx_eta", 15.0}, {"pm_eta", 15.0}, {"pc", 1.0}, {"pm", -1.0}}) {}

    void run(const ProblemInstance& problem, RunState& state) override {
        OperatorParams op = operator_params(problem);
        double rmp = params().get("rmp");
        int num_tasks = problem.num_tasks();
        int n = problem.pop_size;
        std::vector<std::vector<Individual>> pops(static_cast<std::size_t>(num_tasks));
        for (int t = 0; t < num_tasks; ++t) {
            auto& pop = pops[static_cast<std::size_t>(t)];
            pop = random_population(n, problem.unified_dim, t, state.rng());
            evaluate(problem, t, pop, state);
        }
        auto snap = [&](int t) {
            return population_snapshot(pops[static_cast<std::size_t>(t)], problem, t, state.save_dec());
        };
        while (not_terminated(state, problem, snap)) {
            std::vector<Individual> parents;
            parents.reserve(static_cast<std::size_t>(n * num_tasks));
            for (const auto& pop : pops) parents.insert(parents.end(), pop.begin(), pop.end());
            auto offspring = multifactorial_offspring(parents, rmp, op, state.rng());
            std::stable_sort(offspring.begin(), offspring.end(),
                             [](const Individual& a, const Individual& b) { return a.skill_factor < b.skill_factor; });
            std::size_t start = 0;
            for (int t = 0; t < num_tasks; ++t) {
                std::size_t end = start;
                while (end < offspring.size() && offspring[end].skill_factor == t) ++end;
                std::span<Individual> mine(offspring.data() + start, end - start);
                evaluate(problem, t, mine, state);
                pops[static_cast<std::size_t>(t)] =
                    elitist_select(pops[static_cast<std::size_t>(t)], mine, n, true);
                start = end;
            }
        }
    }
};

} // namespace

std::unique_ptr<Algorithm> make_mo_mfea() { return std::make_unique<MoMfeaAlgorithm>(); }

} // namespace mto
