#include "acceptance/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

#include "pomapf/dstar_lite.hpp"
#include "pomapf/episode.hpp"

namespace pomapf::acceptance {

int dijkstra_cost(const BeliefMap& belief, Coord start, Coord goal) {
    if (!belief.traversable(start) || !belief.traversable(goal)) return kInfiniteCost;
    std::vector<int> dist(belief.size(), kInfiniteCost);
    using Item = std::pair<int, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    dist[belief.index(start)] = 0;
    open.emplace(0, belief.index(start));
    while (!open.empty()) {
        const auto [d, idx] = open.top();
        open.pop();
        if (d != dist[idx]) continue;
        const Coord c = belief.coord(idx);
        if (c == goal) return d;
        for (Action a : kMoveActions) {
            const Coord n = apply(c, a);
            if (!belief.traversable(n)) continue;
            const std::size_t ni = belief.index(n);
            if (d + 1 < dist[ni]) {
                dist[ni] = d + 1;
                open.emplace(d + 1, ni);
            }
        }
    }
    return kInfiniteCost;
}

MapDelta window_delta(const GridMap& truth, Coord center, int radius) {
    MapDelta d;
    for (int r = center.row - radius; r <= center.row + radius; ++r) {
        for (int c = center.col - radius; c <= center.col + radius; ++c) {
            const Coord cell{r, c};
            if (!truth.in_bounds(cell)) continue;
            d.entries.emplace_back(cell, truth.blocked(cell) ? Knowledge::Blocked : Knowledge::Free);
        }
    }
    return d;
}

MapDelta random_subset_delta(const GridMap& truth, double keep, Rng& rng) {
    MapDelta d;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (!rng.bernoulli(keep)) continue;
        const Coord c = truth.coord(i);
        d.entries.emplace_back(c, truth.blocked(c) ? Knowledge::Blocked : Knowledge::Free);
    }
    return d;
}

Coord random_free_cell(const GridMap& truth, Rng& rng) {
    for (;;) {
        const Coord c = truth.coord(rng.uniform_index(truth.size()));
        if (truth.passable(c)) return c;
    }
}

GridMap corridor_map(int length) {
    GridMap map(length, 4);
    for (int c = 0; c < length; ++c) {
        map.set_blocked({0, c}, true);
        map.set_blocked({3, c}, true);
    }
    return map;
}

std::vector<Task> corridor_tasks(int length) {
    return {{{1, 0}, {1, length - 1}}, {{1, length - 1}, {1, 0}}};
}

double makespan_lower_bound(const ScenarioConfig& config) {
    double total = 0.0;
    for (int i = 0; i < config.instances; ++i) {
        const std::uint64_t seed = config.instance_seed(i);
        const GridMap map = generate_map(config.width, config.height, config.density, map_seed(seed));
        int longest = 0;
        for (const Task& t : generate_instance(map, config.agents, task_seed(seed))) {
            longest = std::max(longest, manhattan(t.start, t.goal));
        }
        total += longest;
    }
    return total / config.instances;
}

}  // namespace pomapf::acceptance
