#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pomapf/hybrid_policy.hpp"
#include "pomapf/instance.hpp"
#include "pomapf/scenario.hpp"

namespace pomapf {

enum class FailureReason : std::uint8_t { None, Timeout, InfeasibleInstance };

std::string_view to_string(FailureReason r);

struct EpisodeRecord {
    std::uint64_t seed = 0;
    bool success = false;
    FailureReason failure = FailureReason::None;
    // Time of the last arrival, or max_steps on failure.
    int makespan = 0;
    int steps_executed = 0;
    std::vector<std::optional<int>> arrival_times;
    std::size_t collisions = 0;
    std::vector<int> mode_switches;
    std::vector<int> loop_events;
    // Steps where an active agent's position equals its position two steps earlier.
    std::vector<int> oscillations;
    // Vertex conflicts plus swaps among executed positions; zero by construction.
    std::size_t executed_conflicts = 0;
    std::uint64_t planner_expansions = 0;

    int n_agents() const { return static_cast<int>(arrival_times.size()); }
    int arrived() const;
    double completion_rate() const;

    friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

using PolicyFactory = std::function<std::unique_ptr<LocalPolicy>(int agent, std::uint64_t seed)>;

struct EpisodeOptions {
    // Defaults to SafeGreedyPolicy with the config's epsilon.
    PolicyFactory policy_factory;
    // Called once per decision, in agent order within each step.
    std::function<void(const DecisionTrace&)> trace_sink;
};

// Generates map and instance from the instance seed and runs the synchronous loop.
// Throws InstanceInfeasible when no instance can be sampled.
EpisodeRecord run_episode(const ScenarioConfig& config, std::uint64_t instance_seed,
                          const EpisodeOptions& options = {});

// Runs a fixed map and task list; `seed` drives the local policies and the channel.
EpisodeRecord run_episode(const ScenarioConfig& config, const GridMap& map,
                          std::span<const Task> tasks, std::uint64_t seed,
                          const EpisodeOptions& options = {});

// Seeds for the three random streams of one instance.
std::uint64_t map_seed(std::uint64_t instance_seed);
std::uint64_t task_seed(std::uint64_t instance_seed);
std::uint64_t policy_seed(std::uint64_t instance_seed);

}  // namespace pomapf
