#include "mto/types.hpp"

#include <algorithm>
#include <cmath>

namespace mto {

void TaskSpec::validate() const {
    if (dim <= 0) throw DimensionError("task dimension must be positive");
    if (lower.size() != dim || upper.size() != dim)
        throw DimensionError("task bounds must have one entry per dimension");
    for (int i = 0; i < dim; ++i) {
        if (!(lower[i] < upper[i])) throw DimensionError("task bounds must satisfy lower < upper");
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
            throw DimensionError("task bounds must be finite");
    }
    if (num_objectives <= 0) throw DimensionError("task needs at least one objective");
    if (!objective) throw ConfigError("task is missing an objective function");
}

void ProblemInstance::finalize() {
    if (tasks.empty()) throw ConfigError("problem needs at least one task");
    if (max_fe <= 0) throw ConfigError("max_fe must be positive");
    if (pop_size <= 0) throw ConfigError("pop_size must be positive");
    if (!optima.empty() && optima.size() != tasks.size())
        throw ConfigError("optima must be empty or match the task count");
    unified_dim = 0;
    for (const auto& t : tasks) {
        t.validate();
        unified_dim = std::max(unified_dim, t.dim);
    }
    for (std::size_t k = 0; k < optima.size(); ++k) {
        const auto& o = optima[k];
        int m = tasks[k].num_objectives;
        if (o.front && o.front->cols() != m)
            throw DimensionError("optimum front width must match the objective count");
        if (o.ref_point && o.ref_point->size() != m)
            throw DimensionError("reference point width must match the objective count");
    }
}

Params::Params(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& [k, v] : init) define(k, v);
}

bool Params::has(const std::string& name) const {
    return std::any_of(items_.begin(), items_.end(), [&](const auto& kv) { return kv.first == name; });
}

double Params::get(const std::string& name) const {
    for (const auto& [k, v] : items_)
        if (k == name) return v;
    throw RegistryError("unknown parameter: " + name);
}

void Params::set(const std::string& name, double value) {
    for (auto& [k, v] : items_) {
        if (k == name) {
            v = value;
            return;
        }
    }
    throw RegistryError("unknown parameter: " + name);
}

void Params::define(const std::string& name, double value) {
    auto it = std::lower_bound(items_.begin(), items_.end(), name,
                               [](const auto& kv, const std::string& n) { return kv.first < n; });
    if (it != items_.end() && it->first == name)
        it->second = value;
    else
        items_.insert(it, {name, value});
}

} // namespace mto
