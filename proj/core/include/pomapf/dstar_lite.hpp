#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pomapf/belief.hpp"
#include "pomapf/grid.hpp"

namespace pomapf {

inline constexpr int kInfiniteCost = std::numeric_limits<int>::max() / 4;

struct PlanResult {
    std::optional<Action> next_action;  // empty iff path_cost is infinite
    int path_cost = kInfiniteCost;

    bool reachable() const { return path_cost < kInfiniteCost; }
};

struct PlannerKey {
    int primary = 0;
    int secondary = 0;

    friend constexpr auto operator<=>(const PlannerKey&, const PlannerKey&) = default;
};

// Incremental shortest paths (D* Lite) from any start to a fixed goal over a belief
// map. Unit costs, 4-connectivity, Unknown cells traversable, Manhattan heuristic.
// The search runs backwards from the goal so the agent's position can move freely.
class DStarLite {
public:
    // Throws GoalBlocked if the belief marks the goal Blocked.
    DStarLite(const BeliefMap& belief, Coord start, Coord goal);

    Coord goal() const { return goal_; }
    Coord last_start() const { return last_start_; }
    int km() const { return km_; }

    // Re-synchronizes with `belief` after `changed` cells were fused into it, and moves
    // the start to `current_pos`.
    void apply_belief_delta(const BeliefMap& belief, std::span<const Coord> changed, Coord current_pos);
    void apply_belief_delta(const BeliefMap& belief, const MapDelta& delta, Coord current_pos);

    // Repairs g/rhs until `start` is locally consistent or provably unreachable.
    // Throws StalePlanner if the belief changed without apply_belief_delta.
    PlanResult compute_shortest_path(const BeliefMap& belief, Coord start);
    PlanResult compute_shortest_path(const BeliefMap& belief) {
        return compute_shortest_path(belief, last_start_);
    }

    // Descent step from `pos`: Wait at the goal, empty when `pos` cannot reach the goal.
    // Throws StalePlanner if the belief changed since the last compute_shortest_path.
    std::optional<Action> get_first_action(const BeliefMap& belief, Coord pos) const;

    int g(Coord c) const { return g_[index(c)]; }
    int rhs(Coord c) const { return rhs_[index(c)]; }
    bool in_queue(Coord c) const { return heap_pos_[index(c)] >= 0; }
    std::size_t queue_size() const { return heap_.size(); }
    std::optional<PlannerKey> top_key() const;
    std::optional<PlannerKey> queued_key(Coord c) const;

    // Number of queue pops processed since construction.
    std::uint64_t expansions() const { return expansions_; }

    // g/rhs grid for diagnostics, one "g/rhs" token per cell ("inf" for infinity).
    std::string dump_values() const;

private:
    std::size_t index(Coord c) const {
        return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(c.col);
    }
    Coord coord(std::size_t idx) const {
        return {static_cast<int>(idx / static_cast<std::size_t>(width_)),
                static_cast<int>(idx % static_cast<std::size_t>(width_))};
    }
    PlannerKey calculate_key(std::size_t idx) const;
    int best_successor_cost(const BeliefMap& belief, std::size_t idx) const;
    void update_vertex(const BeliefMap& belief, std::size_t idx);
    void move_start(Coord pos);

    // Indexed binary min-heap over cell indices.
    void heap_push_or_update(std::size_t idx, PlannerKey key);
    void heap_erase(std::size_t idx);
    void heap_sift_up(std::size_t slot);
    void heap_sift_down(std::size_t slot);
    void heap_swap(std::size_t a, std::size_t b);
    bool heap_less(std::size_t a, std::size_t b) const;

    int width_;
    int height_;
    Coord goal_;
    Coord last_start_;
    int km_ = 0;
    std::uint64_t synced_version_ = 0;
    std::optional<std::uint64_t> computed_version_;
    std::uint64_t expansions_ = 0;

    std::vector<int> g_;
    std::vector<int> rhs_;
    std::vector<PlannerKey> key_;
    std::vector<int> heap_pos_;
    std::vector<int> heap_;
};

}  // namespace pomapf
