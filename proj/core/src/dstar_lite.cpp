#include "pomapf/dstar_lite.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "pomapf/errors.hpp"

namespace pomapf {

namespace {

int saturating_add(int a, int b) { return (a >= kInfiniteCost || b >= kInfiniteCost) ? kInfiniteCost : a + b; }

}  // namespace

DStarLite::DStarLite(const BeliefMap& belief, Coord start, Coord goal)
    : width_(belief.width()),
      height_(belief.height()),
      goal_(goal),
      last_start_(start),
      synced_version_(belief.version()) {
    if (!belief.in_bounds(goal)) throw std::out_of_range("planner goal out of bounds");
    if (!belief.in_bounds(start)) throw std::out_of_range("planner start out of bounds");
    if (belief.at(goal) == Knowledge::Blocked) {
        throw GoalBlocked("goal (" + std::to_string(goal.row) + "," + std::to_string(goal.col) + ") is blocked");
    }
    const std::size_t n = belief.size();
    g_.assign(n, kInfiniteCost);
    rhs_.assign(n, kInfiniteCost);
    key_.assign(n, PlannerKey{});
    heap_pos_.assign(n, -1);
    const std::size_t gi = index(goal_);
    rhs_[gi] = 0;
    heap_push_or_update(gi, calculate_key(gi));
}

PlannerKey DStarLite::calculate_key(std::size_t idx) const {
    const int m = std::min(g_[idx], rhs_[idx]);
    if (m >= kInfiniteCost) return {kInfiniteCost, kInfiniteCost};
    return {m + manhattan(last_start_, coord(idx)) + km_, m};
}

int DStarLite::best_successor_cost(const BeliefMap& belief, std::size_t idx) const {
    const Coord c = coord(idx);
    if (!belief.traversable(c)) return kInfiniteCost;
    int best = kInfiniteCost;
    for (Action a : kMoveActions) {
        const Coord n = apply(c, a);
        if (!belief.traversable(n)) continue;
        best = std::min(best, saturating_add(1, g_[index(n)]));
    }
    return best;
}

void DStarLite::update_vertex(const BeliefMap& belief, std::size_t idx) {
    if (idx != index(goal_)) rhs_[idx] = best_successor_cost(belief, idx);
    if (g_[idx] != rhs_[idx]) {
        heap_push_or_update(idx, calculate_key(idx));
    } else if (heap_pos_[idx] >= 0) {
        heap_erase(idx);
    }
}

void DStarLite::move_start(Coord pos) {
    if (pos == last_start_) return;
    km_ += manhattan(last_start_, pos);
    last_start_ = pos;
}

void DStarLite::apply_belief_delta(const BeliefMap& belief, std::span<const Coord> changed, Coord current_pos) {
    move_start(current_pos);
    // Only newly blocked cells change edge costs; Unknown and Free are both traversable.
    const std::vector<Edge> removed = remove_blocked_edges(changed, belief);
    std::vector<std::size_t> touched;
    touched.reserve(removed.size() * 2);
    for (const Edge& e : removed) {
        touched.push_back(index(e.a));
        touched.push_back(index(e.b));
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t idx : touched) update_vertex(belief, idx);
    synced_version_ = belief.version();
}

void DStarLite::apply_belief_delta(const BeliefMap& belief, const MapDelta& delta, Coord current_pos) {
    std::vector<Coord> cells;
    cells.reserve(delta.entries.size());
    for (const auto& entry : delta.entries) cells.push_back(entry.first);
    apply_belief_delta(belief, cells, current_pos);
}

PlanResult DStarLite::compute_shortest_path(const BeliefMap& belief, Coord start) {
    if (belief.version() != synced_version_) {
        throw StalePlanner("belief version " + std::to_string(belief.version()) +
                           " was not synchronized (planner at " + std::to_string(synced_version_) + ")");
    }
    move_start(start);
    const std::size_t si = index(last_start_);
    while (!heap_.empty() && (key_[static_cast<std::size_t>(heap_.front())] < calculate_key(si) || rhs_[si] != g_[si])) {
        ++expansions_;
        const auto u = static_cast<std::size_t>(heap_.front());
        const PlannerKey k_old = key_[u];
        const PlannerKey k_new = calculate_key(u);
        const Coord uc = coord(u);
        if (k_old < k_new) {
            heap_push_or_update(u, k_new);
        } else if (g_[u] > rhs_[u]) {
            g_[u] = rhs_[u];
            heap_erase(u);
            for (Action a : kMoveActions) {
                const Coord n = apply(uc, a);
                if (belief.in_bounds(n)) update_vertex(belief, index(n));
            }
        } else {
            g_[u] = kInfiniteCost;
            update_vertex(belief, u);
            for (Action a : kMoveActions) {
                const Coord n = apply(uc, a);
                if (belief.in_bounds(n)) update_vertex(belief, index(n));
            }
        }
    }
    computed_version_ = belief.version();

    PlanResult result;
    result.path_cost = g_[si] < kInfiniteCost ? g_[si] : kInfiniteCost;
    if (result.reachable()) result.next_action = get_first_action(belief, last_start_);
    return result;
}

std::optional<Action> DStarLite::get_first_action(const BeliefMap& belief, Coord pos) const {
    if (!computed_version_ || *computed_version_ != belief.version()) {
        throw StalePlanner("get_first_action called before compute_shortest_path on the current belief");
    }
    if (pos == goal_) return Action::Wait;
    if (g_[index(pos)] >= kInfiniteCost || !belief.traversable(pos)) return std::nullopt;
    std::optional<Action> best;
    int best_cost = kInfiniteCost;
    for (Action a : kMoveActions) {
        const Coord n = apply(pos, a);
        if (!belief.traversable(n)) continue;
        const int cost = saturating_add(1, g_[index(n)]);
        if (cost < best_cost) {
            best_cost = cost;
            best = a;
        }
    }
    return best;
}

std::optional<PlannerKey> DStarLite::top_key() const {
    if (heap_.empty()) return std::nullopt;
    return key_[static_cast<std::size_t>(heap_.front())];
}

std::optional<PlannerKey> DStarLite::queued_key(Coord c) const {
    const std::size_t idx = index(c);
    if (heap_pos_[idx] < 0) return std::nullopt;
    return key_[idx];
}

std::string DStarLite::dump_values() const {
    std::ostringstream out;
    auto token = [](int v) { return v >= kInfiniteCost ? std::string("inf") : std::to_string(v); };
    for (int r = 0; r < height_; ++r) {
        for (int c = 0; c < width_; ++c) {
            const std::size_t idx = index({r, c});
            if (c > 0) out << ' ';
            out << token(g_[idx]) << '/' << token(rhs_[idx]);
        }
        out << '\n';
    }
    return out.str();
}

bool DStarLite::heap_less(std::size_t a, std::size_t b) const {
    const auto ca = static_cast<std::size_t>(heap_[a]);
    const auto cb = static_cast<std::size_t>(heap_[b]);
    if (key_[ca] != key_[cb]) return key_[ca] < key_[cb];
    return ca < cb;
}

void DStarLite::heap_swap(std::size_t a, std::size_t b) {
    std::swap(heap_[a], heap_[b]);
    heap_pos_[static_cast<std::size_t>(heap_[a])] = static_cast<int>(a);
    heap_pos_[static_cast<std::size_t>(heap_[b])] = static_cast<int>(b);
}

void DStarLite::heap_sift_up(std::size_t slot) {
    while (slot > 0) {
        const std::size_t parent = (slot - 1) / 2;
        if (!heap_less(slot, parent)) break;
        heap_swap(slot, parent);
        slot = parent;
    }
}

void DStarLite::heap_sift_down(std::size_t slot) {
    for (;;) {
        const std::size_t left = 2 * slot + 1;
        if (left >= heap_.size()) break;
        std::size_t smallest = left;
        if (left + 1 < heap_.size() && heap_less(left + 1, left)) smallest = left + 1;
        if (!heap_less(smallest, slot)) break;
        heap_swap(slot, smallest);
        slot = smallest;
    }
}

void DStarLite::heap_push_or_update(std::size_t idx, PlannerKey key) {
    key_[idx] = key;
    if (heap_pos_[idx] < 0) {
        heap_.push_back(static_cast<int>(idx));
        heap_pos_[idx] = static_cast<int>(heap_.size() - 1);
        heap_sift_up(heap_.size() - 1);
        return;
    }
    const auto slot = static_cast<std::size_t>(heap_pos_[idx]);
    heap_sift_up(slot);
    heap_sift_down(static_cast<std::size_t>(heap_pos_[idx]));
}

void DStarLite::heap_erase(std::size_t idx) {
    const int slot_i = heap_pos_[idx];
    if (slot_i < 0) return;
    const auto slot = static_cast<std::size_t>(slot_i);
    const std::size_t last = heap_.size() - 1;
    if (slot != last) heap_swap(slot, last);
    heap_.pop_back();
    heap_pos_[idx] = -1;
    if (slot < heap_.size()) {
        const auto moved = static_cast<std::size_t>(heap_[slot]);
        heap_sift_up(slot);
        heap_sift_down(static_cast<std::size_t>(heap_pos_[moved]));
    }
}

}  // namespace pomapf
