#include "pomapf/environment.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>

#include "pomapf/errors.hpp"

namespace pomapf {

PositionHistory::PositionHistory(std::size_t capacity) : capacity_(capacity < 3 ? 3 : capacity) {}

void PositionHistory::push(Coord c) {
    positions_.push_back(c);
    while (positions_.size() > capacity_) positions_.pop_front();
}

std::vector<AgentState> make_agents(std::span<const Task> tasks, std::size_t history_length) {
    std::vector<AgentState> agents;
    agents.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        AgentState a{.id = static_cast<int>(i),
                     .pos = tasks[i].start,
                     .start = tasks[i].start,
                     .goal = tasks[i].goal,
                     .active = true,
                     .history = PositionHistory(history_length),
                     .mode = Mode::DStarLite,
                     .arrival_time = std::nullopt};
        a.history.push(a.pos);
        if (a.start == a.goal) {
            a.active = false;
            a.arrival_time = 0;
        }
        agents.push_back(std::move(a));
    }
    return agents;
}

OccupancyIndex::OccupancyIndex(const GridMap& map, std::span<const AgentState> agents)
    : width_(static_cast<std::size_t>(map.width())), cells_(map.size(), -1) {
    for (const AgentState& a : agents) {
        if (a.active) cells_[map.index(a.pos)] = a.id;
    }
}

Observation observe(const GridMap& map, std::span<const AgentState> agents, int observer, int radius) {
    return observe(map, agents, OccupancyIndex(map, agents), observer, radius);
}

Observation observe(const GridMap& map, std::span<const AgentState> agents,
                    const OccupancyIndex& occupancy, int observer, int radius) {
    if (observer < 0 || static_cast<std::size_t>(observer) >= agents.size()) {
        throw ObserverInactive("observer " + std::to_string(observer) + " does not exist");
    }
    const AgentState& self = agents[static_cast<std::size_t>(observer)];
    if (!self.active) throw ObserverInactive("observer " + std::to_string(observer) + " is inactive");

    Observation obs;
    obs.center = self.pos;
    obs.radius = radius;
    obs.own_goal = self.goal;
    const auto side = static_cast<std::size_t>(obs.side());
    obs.obstacles.assign(side * side, CellView::OutOfBounds);
    obs.agents.assign(side * side, 0);

    for (int dr = -radius; dr <= radius; ++dr) {
        for (int dc = -radius; dc <= radius; ++dc) {
            const Coord c{self.pos.row + dr, self.pos.col + dc};
            if (!map.in_bounds(c)) continue;
            const std::size_t w = obs.window_index(dr, dc);
            obs.obstacles[w] = map.blocked(c) ? CellView::Blocked : CellView::Free;
            const int other = occupancy.at(c);
            if (other >= 0 && other != observer) obs.agents[w] = 1;
        }
    }
    return obs;
}

double compute_reward(bool /*moved*/, bool collided, bool reached_goal) {
    double r = kStepReward;
    if (collided) r += kCollisionReward;
    if (reached_goal) r += kGoalReward;
    return r;
}

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

StepOutcome apply_joint_action(const GridMap& map, std::vector<AgentState>& agents,
                               std::span<const Action> actions, int step) {
    const std::size_t n = agents.size();
    if (actions.size() != n) {
        throw MalformedActionSet("expected " + std::to_string(n) + " actions, got " +
                                 std::to_string(actions.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!agents[i].active && actions[i] != Action::Wait) {
            throw MalformedActionSet("inactive agent " + std::to_string(i) + " must carry Wait");
        }
    }

    StepOutcome out;
    out.collided.assign(n, 0);
    out.rewards.assign(n, 0.0);

    std::vector<Coord> intent(n);
    std::vector<std::uint8_t> moving(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        intent[i] = agents[i].pos;
        if (!agents[i].active || actions[i] == Action::Wait) continue;
        const Coord target = apply(agents[i].pos, actions[i]);
        if (!map.passable(target)) {
            out.collided[i] = 1;
            out.collisions.push_back({static_cast<int>(i), -1, ConflictKind::Obstacle});
            continue;
        }
        intent[i] = target;
        moving[i] = 1;
    }

    auto cancel = [&](std::size_t i) {
        intent[i] = agents[i].pos;
        moving[i] = 0;
        out.collided[i] = 1;
    };

    // Swaps: i moves onto j's cell while j moves onto i's.
    const OccupancyIndex before(map, agents);
    for (std::size_t i = 0; i < n; ++i) {
        if (!moving[i]) continue;
        const int j = before.at(intent[i]);
        if (j < 0 || static_cast<std::size_t>(j) <= i) continue;
        const auto ju = static_cast<std::size_t>(j);
        if (moving[ju] && intent[ju] == agents[i].pos) {
            cancel(i);
            cancel(ju);
            out.collisions.push_back({static_cast<int>(i), j, ConflictKind::Edge});
        }
    }

    // Vertex conflicts to a fixed point; each pass only turns movers into stayers.
    std::set<std::pair<int, int>> vertex_pairs;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
        if (agents[i].active) order.push_back(i);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (intent[a] != intent[b]) return intent[a] < intent[b];
            return a < b;
        });
        for (std::size_t lo = 0; lo < order.size();) {
            std::size_t hi = lo + 1;
            while (hi < order.size() && intent[order[hi]] == intent[order[lo]]) ++hi;
            if (hi - lo >= 2) {
                std::optional<std::size_t> stayer;
                for (std::size_t k = lo; k < hi; ++k) {
                    if (!moving[order[k]]) stayer = order[k];
                }
                for (std::size_t k = lo; k < hi; ++k) {
                    const std::size_t a = order[k];
                    if (stayer) {
                        if (a != *stayer) vertex_pairs.insert(ordered(static_cast<int>(a), static_cast<int>(*stayer)));
                    } else {
                        for (std::size_t m = k + 1; m < hi; ++m) {
                            vertex_pairs.insert(ordered(static_cast<int>(a), static_cast<int>(order[m])));
                        }
                    }
                }
                for (std::size_t k = lo; k < hi; ++k) {
                    if (moving[order[k]]) {
                        cancel(order[k]);
                        changed = true;
                    }
                }
            }
            lo = hi;
        }
    }
    for (const auto& [a, b] : vertex_pairs) out.collisions.push_back({a, b, ConflictKind::Vertex});

    out.new_positions.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        AgentState& agent = agents[i];
        out.new_positions[i] = intent[i];
        if (!agent.active) continue;
        const bool moved = intent[i] != agent.pos;
        agent.pos = intent[i];
        agent.history.push(agent.pos);
        const bool reached = agent.pos == agent.goal;
        if (reached) {
            agent.active = false;
            agent.arrival_time = step;
            out.newly_arrived.push_back(agent.id);
        }
        out.rewards[i] = compute_reward(moved, out.collided[i] != 0, reached);
    }
    return out;
}

std::size_t count_executed_conflicts(std::span<const Coord> before, std::span<const Coord> after,
                                     std::span<const std::uint8_t> was_active) {
    auto key = [](Coord c) {
        return (static_cast<std::int64_t>(c.row) << 32) ^ static_cast<std::int64_t>(static_cast<std::uint32_t>(c.col));
    };
    std::unordered_map<std::int64_t, std::size_t> at_after;
    std::unordered_map<std::int64_t, std::size_t> at_before;
    std::size_t conflicts = 0;
    for (std::size_t i = 0; i < after.size(); ++i) {
        if (!was_active[i]) continue;
        if (!at_after.emplace(key(after[i]), i).second) ++conflicts;
        at_before.emplace(key(before[i]), i);
    }
    for (std::size_t i = 0; i < after.size(); ++i) {
        if (!was_active[i] || after[i] == before[i]) continue;
        const auto it = at_before.find(key(after[i]));
        if (it == at_before.end()) continue;
        const std::size_t j = it->second;
        if (j > i && after[j] == before[i]) ++conflicts;
    }
    return conflicts;
}

}  // namespace pomapf
