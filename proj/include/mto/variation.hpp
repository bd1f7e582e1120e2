#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mto/rng.hpp"
#include "mto/types.hpp"

namespace mto {

// Shared knobs of the variation operators. All operators act on points in
// [0,1]^d and keep their output inside that box.
struct OperatorParams {
    double sbx_eta = 15.0;
    double pm_eta = 15.0;
    double pc = 1.0;                // per-gene crossover probability
    std::optional<double> pm;       // per-gene mutation probability, 1/d when unset
    double de_f = 0.5;
    double de_cr = 0.9;
    int tournament_size = 2;

    double mutation_rate(Eigen::Index dim) const { return pm ? *pm : 1.0 / static_cast<double>(dim); }
    void validate() const;
};

// Simulated binary crossover. Each gene recombines with probability pc,
// otherwise both children copy their parents. Children are clamped to [0,1].
std::pair<Vector, Vector> sbx_crossover(const Vector& a, const Vector& b, const OperatorParams& params, Rng& rng);

// Polynomial mutation: each gene mutates with probability pm, perturbed with
// distribution index pm_eta, clamped to [0,1].
Vector polynomial_mutation(const Vector& x, const OperatorParams& params, Rng& rng);

// DE/rand/1/bin trial for pop[target]: three distinct donors other than the
// target build the mutant, binomial crossover keeps at least one mutant gene,
// out-of-box genes are reflected back inside.
Vector de_rand_1_bin(std::span<const Vector> pop, int target, const OperatorParams& params, Rng& rng);

// Tournament over k contestants drawn without replacement; better(i, j) < 0
// means i wins. Ties are broken uniformly among the tied contestants.
// Returns the winner's population index.
int tournament_select(int pop_size, int k, const std::function<int(int, int)>& better, Rng& rng);

// Keeps the n best of parents+offspring. Single-objective data uses the
// feasibility-first comparison; multi-objective data uses non-dominated
// fronts refined by crowding distance. Stable: earlier candidates win exact
// ties, so the result is deterministic.
std::vector<Individual> elitist_select(std::span<const Individual> parents, std::span<const Individual> offspring,
                                       int n, bool multi_objective);

// Scalar fitness used by multifactorial algorithms: individuals are ranked per
// skill factor (feasibility-first comparison on their own task) and receive
// 1 / rank, rank counted from 1.
void assign_scalar_fitness(std::vector<Individual>& pop, int num_tasks);

} // namespace mto
