#include "pomapf/episode.hpp"

#include <algorithm>
#include <string>

#include "pomapf/belief.hpp"
#include "pomapf/comm_channel.hpp"
#include "pomapf/dstar_lite.hpp"
#include "pomapf/errors.hpp"
#include "pomapf/grid_memory.hpp"
#include "pomapf/rng.hpp"

namespace pomapf {

std::string_view to_string(FailureReason r) {
    switch (r) {
        case FailureReason::None: return "none";
        case FailureReason::Timeout: return "timeout";
        case FailureReason::InfeasibleInstance: return "infeasible";
    }
    return "none";
}

int EpisodeRecord::arrived() const {
    return static_cast<int>(std::count_if(arrival_times.begin(), arrival_times.end(),
                                          [](const std::optional<int>& t) { return t.has_value(); }));
}

double EpisodeRecord::completion_rate() const {
    if (arrival_times.empty()) return success ? 1.0 : 0.0;
    return static_cast<double>(arrived()) / static_cast<double>(arrival_times.size());
}

std::uint64_t map_seed(std::uint64_t instance_seed) { return derive_seed(instance_seed, 1); }
std::uint64_t task_seed(std::uint64_t instance_seed) { return derive_seed(instance_seed, 2); }
std::uint64_t policy_seed(std::uint64_t instance_seed) { return derive_seed(instance_seed, 3); }

EpisodeRecord run_episode(const ScenarioConfig& config, std::uint64_t instance_seed, const EpisodeOptions& options) {
    config.validate();
    const GridMap map = generate_map(config.width, config.height, config.density, map_seed(instance_seed));
    const std::vector<Task> tasks = generate_instance(map, config.agents, task_seed(instance_seed));
    EpisodeRecord record = run_episode(config, map, tasks, policy_seed(instance_seed), options);
    record.seed = instance_seed;
    return record;
}

namespace {

// Everything one agent owns besides its AgentState.
struct AgentMind {
    BeliefMap belief;
    GridMemory memory;
    DStarLite planner;
    std::unique_ptr<LocalPolicy> policy;
    MapDelta unsent;
};

void absorb(AgentMind& mind, const MapDelta& delta, Coord pos) {
    const std::vector<Coord> changed = fuse(mind.belief, delta);
    mind.planner.apply_belief_delta(mind.belief, changed, pos);
}

}  // namespace

EpisodeRecord run_episode(const ScenarioConfig& config, const GridMap& map, std::span<const Task> tasks,
                          std::uint64_t seed, const EpisodeOptions& options) {
    config.validate();
    const std::size_t n = tasks.size();
    std::vector<AgentState> agents = make_agents(tasks, static_cast<std::size_t>(config.history_length));

    EpisodeRecord record;
    record.seed = seed;
    record.arrival_times.assign(n, std::nullopt);
    record.mode_switches.assign(n, 0);
    record.loop_events.assign(n, 0);
    record.oscillations.assign(n, 0);

    const PolicyFactory factory = options.policy_factory
                                      ? options.policy_factory
                                      : PolicyFactory([eps = config.epsilon](int, std::uint64_t s) {
                                            return std::make_unique<SafeGreedyPolicy>(eps, s);
                                        });

    const BeliefMap initial = config.regime == InfoRegime::FullInformation ? BeliefMap::from_truth(map)
                                                                           : BeliefMap(map.width(), map.height());
    std::vector<AgentMind> minds;
    minds.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        minds.push_back(AgentMind{initial, GridMemory{}, DStarLite(initial, tasks[i].start, tasks[i].goal),
                                  factory(static_cast<int>(i), derive_seed(seed, 100 + i)), MapDelta{}});
        minds.back().unsent.origin = static_cast<int>(i);
    }

    const bool sharing = config.regime == InfoRegime::SharedMap;
    CommChannel channel(static_cast<int>(n), config.latency, config.drop_rate, derive_seed(seed, 7));
    const HybridConfig hybrid = config.hybrid();

    std::vector<Observation> observations(n);
    std::vector<Action> actions(n, Action::Wait);
    std::vector<Mode> last_mode(n, Mode::DStarLite);
    std::vector<std::uint8_t> decided_before(n, 0);
    std::vector<Coord> before(n);
    std::vector<Coord> after(n);
    std::vector<std::uint8_t> was_active(n, 0);

    auto any_active = [&] {
        return std::any_of(agents.begin(), agents.end(), [](const AgentState& a) { return a.active; });
    };

    int t = 0;
    for (; t < config.max_steps && any_active(); ++t) {
        const OccupancyIndex occupancy(map, agents);

        // Sense: observe, fuse own delta, queue it for teammates.
        for (std::size_t i = 0; i < n; ++i) {
            if (!agents[i].active) continue;
            AgentMind& mind = minds[i];
            observations[i] = observe(map, agents, occupancy, static_cast<int>(i), config.observation_radius);
            mind.memory.update(observations[i]);
            MapDelta delta = extract_delta(observations[i], mind.belief, static_cast<int>(i), t);
            absorb(mind, delta, agents[i].pos);
            if (!sharing) continue;
            merge_delta(mind.unsent, delta);
            if (t % config.broadcast_period == 0 && !mind.unsent.empty()) {
                mind.unsent.step = t;
                channel.broadcast(std::move(mind.unsent), t);
                mind.unsent = MapDelta{};
                mind.unsent.origin = static_cast<int>(i);
            }
        }

        // Merge teammates' deltas due this step.
        if (sharing) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!agents[i].active) continue;
                for (const auto& delta : channel.receive(static_cast<int>(i), t)) {
                    absorb(minds[i], *delta, agents[i].pos);
                }
            }
            channel.end_step(t);
        }

        // Decide.
        for (std::size_t i = 0; i < n; ++i) {
            actions[i] = Action::Wait;
            was_active[i] = agents[i].active ? 1 : 0;
            before[i] = agents[i].pos;
            if (!agents[i].active) continue;
            AgentMind& mind = minds[i];
            const Decision d = decide(agents[i], observations[i], mind.belief, mind.memory, mind.planner,
                                      *mind.policy, hybrid, t);
            actions[i] = d.action;
            agents[i].mode = d.trace.mode;
            if (decided_before[i] && d.trace.mode != last_mode[i]) ++record.mode_switches[i];
            last_mode[i] = d.trace.mode;
            decided_before[i] = 1;
            if (d.trace.loop_detected) ++record.loop_events[i];
            if (options.trace_sink) options.trace_sink(d.trace);
        }

        // Act.
        const StepOutcome outcome = apply_joint_action(map, agents, actions, t + 1);
        record.collisions += outcome.collisions.size();
        for (std::size_t i = 0; i < n; ++i) {
            after[i] = agents[i].pos;
            if (!was_active[i]) continue;
            const PositionHistory& h = agents[i].history;
            if (h.size() >= 3 && h.back(0) == h.back(2)) ++record.oscillations[i];
        }
        const std::size_t conflicts = count_executed_conflicts(before, after, was_active);
        if (conflicts != 0) {
            throw InvariantViolation(std::to_string(conflicts) + " executed conflicts at step " + std::to_string(t + 1));
        }
        record.executed_conflicts += conflicts;
    }

    record.steps_executed = t;
    for (std::size_t i = 0; i < n; ++i) {
        record.arrival_times[i] = agents[i].arrival_time;
        record.planner_expansions += minds[i].planner.expansions();
    }
    record.success = std::all_of(agents.begin(), agents.end(), [](const AgentState& a) { return !a.active; });
    if (record.success) {
        int last = 0;
        for (const auto& at : record.arrival_times) last = std::max(last, *at);
        record.makespan = last;
        record.failure = FailureReason::None;
    } else {
        record.makespan = config.max_steps;
        record.failure = FailureReason::Timeout;
    }
    return record;
}

}  // namespace pomapf
