#pragma once

#include <string>
#include <vector>

#include "pomapf/episode.hpp"
#include "pomapf/scenario.hpp"

namespace pomapf {

struct AggregateReport {
    std::string name;
    int width = 0;
    int height = 0;
    double density = 0.0;
    int agents = 0;
    int max_steps = 0;
    int instances = 0;
    InfoRegime regime = InfoRegime::SharedMap;
    bool loop_detection = true;

    int successes = 0;
    int infeasible = 0;
    double sr = 0.0;   // mean success
    double el = 0.0;   // mean makespan, failures counted at max_steps
    double icr = 0.0;  // mean fraction of agents that arrived
    double mean_collisions = 0.0;
    std::size_t executed_conflicts = 0;

    friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

struct BatchOptions {
    // 0 picks the hardware concurrency.
    unsigned threads = 1;
};

// Seed-ordered records for config.instances episodes. Infeasible instances are
// recorded as failures instead of propagating.
std::vector<EpisodeRecord> run_batch_records(const ScenarioConfig& config,
                                             const BatchOptions& options = {});

AggregateReport aggregate(const ScenarioConfig& config, std::span<const EpisodeRecord> records);

AggregateReport run_batch(const ScenarioConfig& config, const BatchOptions& options = {});

// One report per agent count in config.agent_sweep (or config.agents if empty).
std::vector<AggregateReport> run_sweep(const ScenarioConfig& config, const BatchOptions& options = {});

struct ComparisonDelta {
    int agents = 0;
    std::string comparison;  // "shared-vs-local", "full-vs-shared", "loop-on-vs-off:<regime>"
    double d_sr = 0.0;
    double d_el = 0.0;
    double d_icr = 0.0;
};

struct AblationSuite {
    std::vector<AggregateReport> reports;
    std::vector<ComparisonDelta> deltas;
};

// Cross product {full, shared, local} x {loop on, loop off} over the agent sweep.
AblationSuite run_ablation_suite(const ScenarioConfig& base, const BatchOptions& options = {});

}  // namespace pomapf
