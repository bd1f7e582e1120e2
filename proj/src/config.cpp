#include "mto/config.hpp"

#include "mto/algorithm.hpp"
#include "mto/toml.hpp"

namespace mto {

namespace {

using nlohmann::json;

double numeric(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

long long integer(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
    return v.get<long long>();
}

} // namespace

ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a table");
    ExperimentConfig cfg;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "reps") {
            cfg.reps = static_cast<int>(integer(v, key));
        } else if (key == "base_seed") {
            long long s = integer(v, key);
            if (s < 0) throw ConfigError("base_seed must be nonnegative");
            cfg.base_seed = static_cast<std::uint64_t>(s);
        } else if (key == "data_length") {
            cfg.data_length = static_cast<int>(integer(v, key));
        } else if (key == "save_dec") {
            if (!v.is_boolean()) throw ConfigError("save_dec must be a boolean");
            cfg.save_dec = v.get<bool>();
        } else if (key == "parallel") {
            if (!v.is_boolean()) throw ConfigError("parallel must be a boolean");
            cfg.parallel = v.get<bool>();
        } else if (key == "workers") {
            cfg.workers = static_cast<int>(integer(v, key));
        } else if (key == "output") {
            if (!v.is_string()) throw ConfigError("output must be a string");
            cfg.output = v.get<std::string>();
        } else if (key == "algorithms") {
            if (!v.is_array()) throw ConfigError("algorithms must be an array of tables");
            for (const auto& entry : v) {
                if (!entry.is_object() || !entry.contains("name") || !entry.at("name").is_string())
                    throw ConfigError("each algorithms entry needs a string 'name'");
                AlgorithmChoice choice;
                choice.name = entry.at("name").get<std::string>();
                for (auto p = entry.begin(); p != entry.end(); ++p)
                    if (p.key() != "name") choice.overrides.define(p.key(), numeric(p.value(), p.key()));
                cfg.algorithms.push_back(std::move(choice));
            }
        } else if (key == "problems") {
            if (!v.is_array()) throw ConfigError("problems must be an array of tables");
            for (const auto& entry : v) {
                if (!entry.is_object()) throw ConfigError("each problems entry must be a table");
                SuiteConfig sc;
                bool named = false;
                for (auto p = entry.begin(); p != entry.end(); ++p) {
                    const std::string& pk = p.key();
                    if (pk == "suite" || pk == "id") {
                        if (!p.value().is_string()) throw ConfigError("problem '" + pk + "' must be a string");
                        sc.suite_id = p.value().get<std::string>();
                        named = true;
                    } else if (pk == "seed") {
                        long long s = integer(p.value(), pk);
                        if (s < 0) throw ConfigError("problem seed must be nonnegative");
                        sc.seed = static_cast<std::uint64_t>(s);
                    } else if (pk == "dim") {
                        sc.dim = static_cast<int>(integer(p.value(), pk));
                    } else if (pk == "max_fe") {
                        sc.max_fe = integer(p.value(), pk);
                    } else if (pk == "pop_size") {
                        sc.pop_size = static_cast<int>(integer(p.value(), pk));
                    } else {
                        throw ConfigError("unknown problem key: " + pk);
                    }
                }
                if (!named) throw ConfigError("each problems entry needs a 'suite' id");
                cfg.problems.push_back(std::move(sc));
            }
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(parse_toml_file(path)); }

void validate_config(const ExperimentConfig& config) {
    if (config.reps < 1) throw ConfigError("reps must be at least 1");
    if (config.data_length < 1) throw ConfigError("data_length must be at least 1");
    if (config.workers < 0) throw ConfigError("workers must be nonnegative");
    if (config.algorithms.empty()) throw ConfigError("config selects no algorithms");
    if (config.problems.empty()) throw ConfigError("config selects no problems");
    for (const auto& choice : config.algorithms) {
        std::unique_ptr<Algorithm> algo;
        try {
            algo = AlgorithmRegistry::instance().create(choice.name);
        } catch (const RegistryError& e) {
            throw ConfigError(e.what());
        }
        for (const auto& [key, value] : choice.overrides.items()) {
            try {
                algo->params().set(key, value);
            } catch (const RegistryError&) {
                throw ConfigError("algorithm '" + choice.name + "' has no parameter '" + key + "'");
            }
        }
    }
    for (const auto& sc : config.problems) {
        if (sc.dim && *sc.dim < 1) throw ConfigError("problem dim override must be positive");
        if (sc.max_fe && *sc.max_fe < 1) throw ConfigError("problem max_fe override must be positive");
        if (sc.pop_size && *sc.pop_size < 2) throw ConfigError("problem pop_size override must be at least 2");
        try {
            make_suite(sc);
        } catch (const RegistryError& e) {
            throw ConfigError(e.what());
        }
    }
}

std::vector<ProblemInstance> resolve_problems(const ExperimentConfig& config) {
    std::vector<ProblemInstance> out;
    for (const auto& sc : config.problems) {
        auto suite = make_suite(sc);
        for (auto& p : suite) out.push_back(std::move(p));
    }
    return out;
}

} // namespace mto
