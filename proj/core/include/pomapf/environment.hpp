#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "pomapf/grid.hpp"
#include "pomapf/instance.hpp"

namespace pomapf {

inline constexpr int kDefaultObservationRadius = 4;
inline constexpr std::size_t kDefaultHistoryLength = 8;

enum class Mode : std::uint8_t { DStarLite, LocalRL };

// Most recent positions of one agent, oldest first. Holds at most `capacity` entries.
class PositionHistory {
public:
    explicit PositionHistory(std::size_t capacity = kDefaultHistoryLength);

    void push(Coord c);
    std::size_t size() const { return positions_.size(); }
    std::size_t capacity() const { return capacity_; }
    bool empty() const { return positions_.empty(); }

    // back(0) is the current position, back(1) the previous one, and so on.
    Coord back(std::size_t steps_ago = 0) const { return positions_[positions_.size() - 1 - steps_ago]; }
    const std::deque<Coord>& positions() const { return positions_; }

private:
    std::size_t capacity_;
    std::deque<Coord> positions_;
};

struct AgentState {
    int id = 0;
    Coord pos;
    Coord start;
    Coord goal;
    bool active = true;
    PositionHistory history;
    Mode mode = Mode::DStarLite;
    std::optional<int> arrival_time;
};

// Agents start active at their start cell, with the start as the only history entry.
// An agent whose start equals its goal is marked arrived at time 0.
std::vector<AgentState> make_agents(std::span<const Task> tasks,
                                    std::size_t history_length = kDefaultHistoryLength);

enum class CellView : std::uint8_t { Free, Blocked, OutOfBounds };

// Square window of side 2R+1 centered on the observer.
struct Observation {
    Coord center;
    int radius = kDefaultObservationRadius;
    Coord own_goal;
    std::vector<CellView> obstacles;
    std::vector<std::uint8_t> agents;

    int side() const { return 2 * radius + 1; }
    // Window offsets are relative to the center, each in [-radius, radius].
    std::size_t window_index(int drow, int dcol) const {
        return static_cast<std::size_t>(drow + radius) * static_cast<std::size_t>(side()) +
               static_cast<std::size_t>(dcol + radius);
    }
    CellView cell(int drow, int dcol) const { return obstacles[window_index(drow, dcol)]; }
    bool agent_at(int drow, int dcol) const { return agents[window_index(drow, dcol)] != 0; }
    bool contains(Coord c) const { return chebyshev(c, center) <= radius; }
    CellView cell_at(Coord c) const { return cell(c.row - center.row, c.col - center.col); }
    bool agent_at(Coord c) const { return agent_at(c.row - center.row, c.col - center.col); }
};

// Cell -> id of the active agent standing there, or -1.
class OccupancyIndex {
public:
    OccupancyIndex(const GridMap& map, std::span<const AgentState> agents);
    int at(Coord c) const { return cells_[static_cast<std::size_t>(c.row) * width_ + static_cast<std::size_t>(c.col)]; }

private:
    std::size_t width_;
    std::vector<int> cells_;
};

Observation observe(const GridMap& map, std::span<const AgentState> agents, int observer,
                    int radius = kDefaultObservationRadius);
Observation observe(const GridMap& map, std::span<const AgentState> agents,
                    const OccupancyIndex& occupancy, int observer,
                    int radius = kDefaultObservationRadius);

enum class ConflictKind : std::uint8_t { Vertex, Edge, Obstacle };

struct Collision {
    int first = 0;
    int second = -1;  // -1 for obstacle collisions
    ConflictKind kind = ConflictKind::Vertex;

    friend bool operator==(const Collision&, const Collision&) = default;
};

struct StepOutcome {
    std::vector<Coord> new_positions;
    std::vector<Collision> collisions;
    std::vector<double> rewards;
    std::vector<int> newly_arrived;
    // True for agents whose intended move was cancelled this step.
    std::vector<std::uint8_t> collided;
};

inline constexpr double kStepReward = -0.0001;
inline constexpr double kCollisionReward = -0.0002;
inline constexpr double kGoalReward = 1.0;

double compute_reward(bool moved, bool collided, bool reached_goal);

// Synchronous joint transition. `step` is the time index of the resulting positions and
// becomes the arrival time of agents that reach their goal. Illegal and conflicting
// intents are cancelled (the agent stays), cascading to a fixed point.
StepOutcome apply_joint_action(const GridMap& map, std::vector<AgentState>& agents,
                               std::span<const Action> actions, int step);

// Independent check on executed positions: number of vertex conflicts plus edge swaps
// among the agents flagged in `was_active`.
std::size_t count_executed_conflicts(std::span<const Coord> before, std::span<const Coord> after,
                                     std::span<const std::uint8_t> was_active);

}  // namespace pomapf
