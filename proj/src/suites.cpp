#include "mto/suites.hpp"

#include <cmath>

#include "mto/base_functions.hpp"
#include "mto/rng.hpp"

namespace mto {

namespace {

enum class Overlap { Complete, Partial, None };

struct PairPlan {
    const char* label;
    BaseKind first;
    BaseKind second;
    Overlap overlap;
};

// Pairings follow the high/medium/low-similarity texture of the classic
// two-task suites; the overlap class controls how much of the unified optimum
// the tasks share.
constexpr PairPlan kMtsoPlans[9] = {
    {"mtso-s1-ci-hs", BaseKind::Griewank, BaseKind::Rastrigin, Overlap::Complete},
    {"mtso-s2-ci-ms", BaseKind::Ackley, BaseKind::Rastrigin, Overlap::Complete},
    {"mtso-s3-ci-ls", BaseKind::Ackley, BaseKind::Schwefel, Overlap::Complete},
    {"mtso-s4-pi-hs", BaseKind::Rastrigin, BaseKind::Sphere, Overlap::Partial},
    {"mtso-s5-pi-ms", BaseKind::Ackley, BaseKind::Rosenbrock, Overlap::Partial},
    {"mtso-s6-pi-ls", BaseKind::Ackley, BaseKind::Weierstrass, Overlap::Partial},
    {"mtso-s7-ni-hs", BaseKind::Rosenbrock, BaseKind::Rastrigin, Overlap::None},
    {"mtso-s8-ni-ms", BaseKind::Griewank, BaseKind::Weierstrass, Overlap::None},
    {"mtso-s9-ni-ls", BaseKind::Rastrigin, BaseKind::Schwefel, Overlap::None},
};

Vector draw_unified_optimum(int dim, Rng& rng) {
    Vector u(dim);
    for (int i = 0; i < dim; ++i) u[i] = rng.uniform(0.2, 0.8);
    return u;
}

TaskSpec make_base_task(BaseKind kind, const Vector& unified_opt, Rng& rng) {
    int dim = static_cast<int>(unified_opt.size());
    auto [lo, hi] = native_range(kind);
    TaskSpec task;
    task.dim = dim;
    task.lower = Vector::Constant(dim, lo);
    task.upper = Vector::Constant(dim, hi);
    task.num_objectives = 1;
    BaseFunction fn;
    fn.kind = kind;
    fn.shift = task.lower + unified_opt * (hi - lo);
    if (kind != BaseKind::Schwefel) fn.rotation = random_rotation(dim, rng);
    fn.validate();
    task.objective = [fn](const Vector& x) { return EvalOutput{Vector::Constant(1, eval_base(fn, x)), Vector()}; };
    return task;
}

OptimumData point_optimum(const TaskSpec& task, const Vector& unified_opt) {
    OptimumData opt;
    opt.value = 0.0;
    opt.decision = task.lower + unified_opt.cwiseProduct(task.upper - task.lower);
    return opt;
}

} // namespace

std::vector<ProblemInstance> make_mtso_suite(const SuiteConfig& config) {
    int dim = config.dim.value_or(50);
    Rng rng(config.seed);
    std::vector<ProblemInstance> out;
    out.reserve(9);
    for (const PairPlan& plan : kMtsoPlans) {
        Vector u1 = draw_unified_optimum(dim, rng);
        Vector u2 = u1;
        if (plan.overlap == Overlap::Partial) {
            int shared = (dim + 1) / 2;
            for (int i = shared; i < dim; ++i) u2[i] = rng.uniform(0.2, 0.8);
        } else if (plan.overlap == Overlap::None) {
            u2 = draw_unified_optimum(dim, rng);
        }
        ProblemInstance prob;
        prob.name = plan.label;
        prob.max_fe = config.max_fe.value_or(100000);
        prob.pop_size = config.pop_size.value_or(100);
        prob.tasks.push_back(make_base_task(plan.first, u1, rng));
        prob.tasks.push_back(make_base_task(plan.second, u2, rng));
        prob.optima.push_back(point_optimum(prob.tasks[0], u1));
        prob.optima.push_back(point_optimum(prob.tasks[1], u2));
        prob.finalize();
        out.push_back(std::move(prob));
    }
    return out;
}

ProblemInstance make_cmt_pair(const SuiteConfig& config) {
    int dim = config.dim.value_or(10);
    Rng rng(config.seed);
    ProblemInstance prob;
    prob.name = "cmt-s1";
    prob.max_fe = config.max_fe.value_or(100000);
    prob.pop_size = config.pop_size.value_or(100);
    for (int t = 0; t < 2; ++t) {
        TaskSpec task;
        task.dim = dim;
        task.lower = Vector::Constant(dim, -100.0);
        task.upper = Vector::Constant(dim, 100.0);
        task.num_objectives = 1;
        Vector shift(dim);
        for (int i = 0; i < dim; ++i) shift[i] = rng.uniform(-40.0, 40.0);
        // Half-space g1: sum(x - shift) - 50 <= 0 (inactive at the optimum)
        // and exclusion ball g2: 100 - |x - shift - 20 e1|^2 <= 0, a radius-10
        // ball centered 20 units away along the first axis.
        Vector center = shift;
        center[0] += 20.0;
        task.objective = [shift, center](const Vector& x) {
            Vector obj = Vector::Constant(1, (x - shift).squaredNorm());
            Vector con(2);
            con[0] = (x - shift).sum() - 50.0;
            con[1] = 100.0 - (x - center).squaredNorm();
            return EvalOutput{obj, con};
        };
        prob.tasks.push_back(std::move(task));
        OptimumData opt;
        opt.value = 0.0;
        opt.decision = shift;
        prob.optima.push_back(std::move(opt));
    }
    prob.finalize();
    return prob;
}

ProblemInstance make_mtmo4_replica() {
    const int dim = 50;
    ProblemInstance prob;
    prob.name = "mtmo4";
    prob.max_fe = 100000;
    prob.pop_size = 100;
    for (int t = 0; t < 2; ++t) {
        TaskSpec task;
        task.dim = dim;
        task.lower = Vector::Zero(dim);
        task.upper = Vector::Ones(dim);
        task.num_objectives = 2;
        Vector center = Vector::Constant(dim, 0.5);
        if (t == 1)
            for (int i = 40; i < dim; ++i) center[i] = 0.5005;
        task.objective = [center](const Vector& x) {
            double g = 1.0;
            for (Eigen::Index i = 1; i < x.size(); ++i) {
                double d = x[i] - center[i];
                g += d * d;
            }
            Vector obj(2);
            obj[0] = x[0];
            obj[1] = g * (1.0 - std::sqrt(x[0] / g));
            return EvalOutput{obj, Vector()};
        };
        prob.tasks.push_back(std::move(task));

        OptimumData opt;
        Matrix front(1000, 2);
        for (int i = 0; i < 1000; ++i) {
            double f1 = static_cast<double>(i) / 999.0;
            front(i, 0) = f1;
            front(i, 1) = 1.0 - std::sqrt(f1);
        }
        opt.front = front;
        opt.ref_point = Vector::Constant(2, 1.1);
        prob.optima.push_back(std::move(opt));
    }
    prob.finalize();
    return prob;
}

std::vector<std::string> suite_ids() { return {"mtso-s", "cmt-s", "mtmo4"}; }

std::vector<ProblemInstance> make_suite(const SuiteConfig& config) {
    const std::string& id = config.suite_id;
    if (id == "mtso-s") return make_mtso_suite(config);
    if (id.rfind("mtso-s:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(id.substr(7));
        } catch (const std::exception&) {
            throw RegistryError("bad suite selector: " + id);
        }
        if (k < 1 || k > 9) throw RegistryError("mtso-s selector must lie in 1..9: " + id);
        auto all = make_mtso_suite(config);
        return {std::move(all[static_cast<std::size_t>(k - 1)])};
    }
    if (id == "cmt-s") return {make_cmt_pair(config)};
    if (id == "mtmo4") {
        if (config.dim) throw ConfigError("mtmo4 has a fixed dimension of 50");
        ProblemInstance prob = make_mtmo4_replica();
        if (config.max_fe) prob.max_fe = *config.max_fe;
        if (config.pop_size) prob.pop_size = *config.pop_size;
        prob.finalize();
        return {std::move(prob)};
    }
    throw RegistryError("unknown suite: " + id);
}

const OptimumData& get_optimum(const ProblemInstance& problem, int task) {
    if (task < 0 || task >= problem.num_tasks()) throw DimensionError("get_optimum: task index out of range");
    if (problem.optima.empty()) throw ConfigError("problem carries no optimum data: " + problem.name);
    return problem.optima[static_cast<std::size_t>(task)];
}

} // namespace mto
