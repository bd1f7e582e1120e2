#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mto/errors.hpp"

namespace mto {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Raw output of one task evaluation: objective values plus constraint
// violations (one entry per constraint, positive means violated).
struct EvalOutput {
    Vector obj;
    Vector con;
};

using ObjectiveFn = std::function<EvalOutput(const Vector&)>;

// One optimization task in its native search space.
struct TaskSpec {
    int dim = 0;
    Vector lower;
    Vector upper;
    int num_objectives = 1;
    ObjectiveFn objective;

    void validate() const;
};

// Known reference data for a task, carried inside archives so indicators can
// be computed without rebuilding the problem.
struct OptimumData {
    std::optional<double> value;     // single-objective optimum
    std::optional<Vector> decision;  // native optimum location, when known
    std::optional<Matrix> front;     // Pareto front samples, rows are points
    std::optional<Vector> ref_point; // hypervolume reference point
};

// A multitask problem: a set of tasks sharing one evaluation budget.
struct ProblemInstance {
    std::string name;
    std::vector<TaskSpec> tasks;
    std::vector<OptimumData> optima; // empty or one entry per task
    long long max_fe = 0;
    int pop_size = 100; // default population size per task
    int unified_dim = 0; // max task dimension, set by finalize()

    int num_tasks() const { return static_cast<int>(tasks.size()); }

    bool multi_objective() const {
        for (const auto& t : tasks)
            if (t.num_objectives > 1) return true;
        return false;
    }

    // Validates every field and computes unified_dim. Must be called once
    // after construction; instances are treated as immutable afterwards.
    void finalize();
};

// Per-run point in the unified space [0,1]^unified_dim.
struct Individual {
    Vector dec;
    Vector obj;                  // objectives of the assigned task
    Vector con;                  // clamped constraint violations
    double cv = 0.0;             // sum of con
    int skill_factor = -1;       // owning task, -1 when single-task
    double scalar_fitness = kNaN; // 1 / factorial rank, set by ranking
    bool evaluated = false;
};

// Ordered name->value map for algorithm parameters. Names are kept sorted so
// that serialization is canonical.
class Params {
public:
    Params() = default;
    Params(std::initializer_list<std::pair<std::string, double>> init);

    bool has(const std::string& name) const;

    // Throws RegistryError for unknown names.
    double get(const std::string& name) const;

    // Overwrites an existing entry; unknown names throw RegistryError so
    // configuration typos surface early.
    void set(const std::string& name, double value);

    // Inserts a new entry or overwrites an existing one.
    void define(const std::string& name, double value);

    const std::vector<std::pair<std::string, double>>& items() const { return items_; }
    bool operator==(const Params& other) const { return items_ == other.items_; }

private:
    std::vector<std::pair<std::string, double>> items_;
};

} // namespace mto
