#include "mto/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mto/dominance.hpp"
#include "mto/evaluate.hpp"

namespace mto {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

double reflect01(double x) {
    while (x < 0.0 || x > 1.0) {
        if (x < 0.0) x = -x;
        if (x > 1.0) x = 2.0 - x;
    }
    return x;
}

} // namespace

void OperatorParams::validate() const {
    if (sbx_eta < 0.0 || pm_eta < 0.0) throw OperatorError("distribution indices must be non-negative");
    if (pc < 0.0 || pc > 1.0) throw OperatorError("pc must lie in [0,1]");
    if (pm && (*pm < 0.0 || *pm > 1.0)) throw OperatorError("pm must lie in [0,1]");
    if (de_f <= 0.0) throw OperatorError("de_f must be positive");
    if (de_cr < 0.0 || de_cr > 1.0) throw OperatorError("de_cr must lie in [0,1]");
    if (tournament_size < 1) throw OperatorError("tournament_size must be at least 1");
}

std::pair<Vector, Vector> sbx_crossover(const Vector& a, const Vector& b, const OperatorParams& params, Rng& rng) {
    if (a.size() != b.size()) throw OperatorError("sbx_crossover: parents differ in size");
    Vector c1 = a;
    Vector c2 = b;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (rng.uniform() >= params.pc) continue;
        double u = rng.uniform();
        double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (params.sbx_eta + 1.0))
                               : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (params.sbx_eta + 1.0));
        c1[i] = clamp01(0.5 * ((1.0 + beta) * a[i] + (1.0 - beta) * b[i]));
        c2[i] = clamp01(0.5 * ((1.0 - beta) * a[i] + (1.0 + beta) * b[i]));
    }
    return {std::move(c1), std::move(c2)};
}

Vector polynomial_mutation(const Vector& x, const OperatorParams& params, Rng& rng) {
    Vector y = x;
    double rate = params.mutation_rate(x.size());
    double e = params.pm_eta + 1.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (rng.uniform() >= rate) continue;
        double u = rng.uniform();
        double v = y[i];
        double dq;
        if (u < 0.5) {
            double bl = 1.0 - v;
            dq = std::pow(2.0 * u + (1.0 - 2.0 * u) * std::pow(bl, e), 1.0 / e) - 1.0;
        } else {
            double bu = v;
            dq = 1.0 - std::pow(2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(bu, e), 1.0 / e);
        }
        y[i] = clamp01(v + dq);
    }
    return y;
}

Vector de_rand_1_bin(std::span<const Vector> pop, int target, const OperatorParams& params, Rng& rng) {
    int n = static_cast<int>(pop.size());
    if (n < 4) throw OperatorError("de_rand_1_bin: population must hold at least four members");
    if (target < 0 || target >= n) throw OperatorError("de_rand_1_bin: target index out of range");
    int r1, r2, r3;
    do r1 = rng.uniform_int(n); while (r1 == target);
    do r2 = rng.uniform_int(n); while (r2 == target || r2 == r1);
    do r3 = rng.uniform_int(n); while (r3 == target || r3 == r1 || r3 == r2);
    const Vector& base = pop[static_cast<std::size_t>(r1)];
    const Vector& xa = pop[static_cast<std::size_t>(r2)];
    const Vector& xb = pop[static_cast<std::size_t>(r3)];
    const Vector& x = pop[static_cast<std::size_t>(target)];
    Eigen::Index d = x.size();
    Vector trial = x;
    int jrand = rng.uniform_int(static_cast<int>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
        if (rng.uniform() < params.de_cr || i == jrand)
            trial[i] = reflect01(base[i] + params.de_f * (xa[i] - xb[i]));
    }
    return trial;
}

int tournament_select(int pop_size, int k, const std::function<int(int, int)>& better, Rng& rng) {
    if (pop_size < 1) throw OperatorError("tournament_select: empty population");
    if (k < 1 || k > pop_size) throw OperatorError("tournament_select: k must lie in [1, population size]");
    std::vector<int> idx(static_cast<std::size_t>(pop_size));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> tied;
    int best = -1;
    for (int i = 0; i < k; ++i) {
        int j = i + rng.uniform_int(pop_size - i);
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        int c = idx[static_cast<std::size_t>(i)];
        if (best < 0) {
            best = c;
            tied.assign(1, c);
            continue;
        }
        int cmp = better(c, best);
        if (cmp < 0) {
            best = c;
            tied.assign(1, c);
        } else if (cmp == 0) {
            tied.push_back(c);
        }
    }
    if (tied.size() > 1) return tied[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(tied.size())))];
    return best;
}

std::vector<Individual> elitist_select(std::span<const Individual> parents, std::span<const Individual> offspring,
                                       int n, bool multi_objective) {
    auto total = static_cast<int>(parents.size() + offspring.size());
    if (n < 0 || n > total) throw OperatorError("elitist_select: n exceeds the candidate count");
    auto get = [&](int i) -> const Individual& {
        return i < static_cast<int>(parents.size()) ? parents[static_cast<std::size_t>(i)]
                                                    : offspring[static_cast<std::size_t>(i - parents.size())];
    };
    std::vector<int> order(static_cast<std::size_t>(total));
    std::iota(order.begin(), order.end(), 0);
    std::vector<Individual> out;
    out.reserve(static_cast<std::size_t>(n));
    if (!multi_objective) {
        std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
            const Individual& a = get(i);
            const Individual& b = get(j);
            return compare_feasible(a.obj[0], a.cv, b.obj[0], b.cv) < 0;
        });
        for (int i = 0; i < n; ++i) out.push_back(get(order[static_cast<std::size_t>(i)]));
        return out;
    }
    Matrix objs(total, total > 0 ? get(0).obj.size() : 0);
    Vector cv(total);
    for (int i = 0; i < total; ++i) {
        objs.row(i) = get(i).obj.transpose();
        cv[i] = get(i).cv;
    }
    auto fronts = nondominated_sort(objs, cv);
    int level = 0;
    while (static_cast<int>(out.size()) < n) {
        std::vector<int> members;
        for (int i = 0; i < total; ++i)
            if (fronts[static_cast<std::size_t>(i)] == level) members.push_back(i);
        if (members.empty()) throw OperatorError("elitist_select: ran out of fronts");
        int room = n - static_cast<int>(out.size());
        if (static_cast<int>(members.size()) <= room) {
            for (int i : members) out.push_back(get(i));
        } else {
            Matrix sub(static_cast<Eigen::Index>(members.size()), objs.cols());
            for (Eigen::Index r = 0; r < sub.rows(); ++r) sub.row(r) = objs.row(members[static_cast<std::size_t>(r)]);
            Vector dist = crowding_distance(sub);
            std::vector<int> pick(members.size());
            std::iota(pick.begin(), pick.end(), 0);
            std::stable_sort(pick.begin(), pick.end(), [&](int a, int b) { return dist[a] > dist[b]; });
            for (int i = 0; i < room; ++i) out.push_back(get(members[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]));
        }
        ++level;
    }
    return out;
}

void assign_scalar_fitness(std::vector<Individual>& pop, int num_tasks) {
    for (int t = 0; t < num_tasks; ++t) {
        std::vector<int> members;
        for (int i = 0; i < static_cast<int>(pop.size()); ++i)
            if (pop[static_cast<std::size_t>(i)].skill_factor == t) members.push_back(i);
        std::stable_sort(members.begin(), members.end(), [&](int i, int j) {
            const Individual& a = pop[static_cast<std::size_t>(i)];
            const Individual& b = pop[static_cast<std::size_t>(j)];
            return compare_feasible(a.obj[0], a.cv, b.obj[0], b.cv) < 0;
        });
        for (int r = 0; r < static_cast<int>(members.size()); ++r)
            pop[static_cast<std::size_t>(members[static_cast<std::size_t>(r)])].scalar_fitness = 1.0 / (r + 1.0);
    }
    for (const Individual& ind : pop)
        if (ind.skill_factor < 0 || ind.skill_factor >= num_tasks)
            throw OperatorError("assign_scalar_fitness: individual without a valid skill factor");
}

} // namespace mto
