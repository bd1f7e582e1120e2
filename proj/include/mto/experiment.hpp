#pragma once

#include <functional>

#include "mto/archive.hpp"
#include "mto/config.hpp"

namespace mto {

// Observation seam for tests: called once per run, before it starts, with
// the cell coordinates and the seed handed to that run. May be called from
// worker threads but never concurrently.
using SeedHook = std::function<void(int problem, int algorithm, int rep, std::uint64_t seed)>;

// Executes all P x A x R runs. Run (p, a, r) is seeded with base_seed + r,
// the same seed across problems and algorithms within a rep. Results land in
// deterministic (p, a, r) order regardless of worker scheduling; a throwing
// run becomes a failed cell and the rest proceed. The worker count comes
// from the MTOP_WORKERS environment variable when set, otherwise from the
// config (parallel off means one worker).
ExperimentData run_experiment(const ExperimentConfig& config, const SeedHook& hook = {});

// Returns the cached metric, computing and attaching it on first use.
const MetricResult& ensure_metric(ExperimentData& data, const std::string& name);

} // namespace mto
