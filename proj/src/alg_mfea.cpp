#include <algorithm>

#include "mto/algorithm.hpp"
#include "mto/evaluate.hpp"

namespace mto {

std::vector<Individual> multifactorial_offspring(const std::vector<Individual>& pop, double rmp,
                                                 const OperatorParams& params, Rng& rng) {
    int total = static_cast<int>(pop.size());
    std::vector<Individual> offspring;
    offspring.reserve(pop.size());
    auto perm = rng.permutation(total);
    auto child = [](Vector dec, int skill) {
        Individual c;
        c.dec = std::move(dec);
        c.skill_factor = skill;
        return c;
    };
    for (int k = 0; k + 1 < total; k += 2) {
        const Individual& p1 = pop[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
        const Individual& p2 = pop[static_cast<std::size_t>(perm[static_cast<std::size_t>(k + 1)])];
        if (p1.skill_factor == p2.skill_factor) {
            auto [c1, c2] = sbx_crossover(p1.dec, p2.dec, params, rng);
            offspring.push_back(child(polynomial_mutation(c1, params, rng), p1.skill_factor));
            offspring.push_back(child(polynomial_mutation(c2, params, rng), p1.skill_factor));
        } else if (rng.uniform() < rmp) {
            auto [c1, c2] = sbx_crossover(p1.dec, p2.dec, params, rng);
            int s1 = rng.uniform() < 0.5 ? p1.skill_factor : p2.skill_factor;
            int s2 = rng.uniform() < 0.5 ? p1.skill_factor : p2.skill_factor;
            offspring.push_back(child(std::move(c1), s1));
            offspring.push_back(child(std::move(c2), s2));
        } else {
            offspring.push_back(child(polynomial_mutation(p1.dec, params, rng), p1.skill_factor));
            offspring.push_back(child(polynomial_mutation(p2.dec, params, rng), p2.skill_factor));
        }
    }
    if (total % 2 == 1) {
        const Individual& p = pop[static_cast<std::size_t>(perm[static_cast<std::size_t>(total - 1)])];
        offspring.push_back(child(polynomial_mutation(p.dec, params, rng), p.skill_factor));
    }
    return offspring;
}

namespace {

// Multifactorial EA: one population over the unified space, each member tied
// to a skill factor, knowledge exchanged implicitly through cross-skill
// mating controlled by rmp. Survivors are the best by scalar fitness over the
// parent+offspring union.
class MfeaAlgorithm final : public Algorithm {
public:
    MfeaAlgorithm()
        : Algorithm("mfea", AlgoTags{},
                    Params{{"rmp", 0.3}, {"sbx_eta", 15.0}, {"pm_eta", 15.0}, {"pc", 1.0}, {"pm", -1.0}}) {}

    void run(const ProblemInstance& problem, RunState& state) override {
        OperatorParams op = operator_params(problem);
        double rmp = params().get("rmp");
        int num_tasks = problem.num_tasks();
        int n = problem.pop_size;
        int total = n * num_tasks;
        std::vector<Individual> pop;
        pop.reserve(static_cast<std::size_t>(total));
        for (int t = 0; t < num_tasks; ++t) {
            auto block = random_population(n, problem.unified_dim, t, state.rng());
            for (auto& ind : block) pop.push_back(std::move(ind));
        }
        for (int t = 0; t < num_tasks; ++t)
            evaluate(problem, t, std::span<Individual>(pop.data() + t * n, static_cast<std::size_t>(n)), state);
        assign_scalar_fitness(pop, num_tasks);

        auto snap = [&](int t) { return best_snapshot(state, problem, t); };
        while (not_terminated(state, problem, snap)) {
            auto offspring = multifactorial_offspring(pop, rmp, op, state.rng());
            evaluate_by_skill(problem, offspring, num_tasks, state);
            std::vector<Individual> merged = pop;
            merged.insert(merged.end(), offspring.begin(), offspring.end());
            assign_scalar_fitness(merged, num_tasks);
            std::vector<int> order(merged.size());
            for (int i = 0; i < static_cast<int>(order.size()); ++i) order[static_cast<std::size_t>(i)] = i;
            std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
                return merged[static_cast<std::size_t>(i)].scalar_fitness >
                       merged[static_cast<std::size_t>(j)].scalar_fitness;
            });
            std::vector<Individual> next;
            next.reserve(static_cast<std::size_t>(total));
            for (int i = 0; i < total; ++i) next.push_back(merged[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
            pop = std::move(next);
        }
    }

private:
    static void evaluate_by_skill(const ProblemInstance& problem, std::vector<Individual>& offspring, int num_tasks,
                                  RunState& state) {
        std::stable_sort(offspring.begin(), offspring.end(),
                         [](const Individual& a, const Individual& b) { return a.skill_factor < b.skill_factor; });
        std::size_t start = 0;
        for (int t = 0; t < num_tasks; ++t) {
            std::size_t end = start;
            while (end < offspring.size() && offspring[end].skill_factor == t) ++end;
            if (end > start)
                evaluate(problem, t, std::span<Individual>(offspring.data() + start, end - start), state);
            start = end;
        }
    }
};

} // namespace

std::unique_ptr<Algorithm> make_mfea() { return std::make_unique<MfeaAlgorithm>(); }

} // namespace mto
