#include "unit/test_util.hpp"

#include <deque>
#include <stdexcept>

namespace pomapf::testutil {

GridMap parse_rows(const std::vector<std::string>& rows) {
    GridMap map(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
    for (int r = 0; r < map.height(); ++r) {
        for (int c = 0; c < map.width(); ++c) {
            map.set_blocked({r, c}, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == '#');
        }
    }
    return map;
}

BeliefMap belief_from_rows(const std::vector<std::string>& rows) {
    BeliefMap belief(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
    for (int r = 0; r < belief.height(); ++r) {
        for (int c = 0; c < belief.width(); ++c) {
            const char ch = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (ch == '#') belief.set({r, c}, Knowledge::Blocked);
            if (ch == '.') belief.set({r, c}, Knowledge::Free);
        }
    }
    return belief;
}

int bfs_cost(const BeliefMap& belief, Coord start, Coord goal) {
    if (!belief.traversable(start) || !belief.traversable(goal)) return start == goal ? 0 : kInfiniteCost;
    std::vector<int> dist(belief.size(), -1);
    std::deque<Coord> frontier{start};
    dist[belief.index(start)] = 0;
    while (!frontier.empty()) {
        const Coord c = frontier.front();
        frontier.pop_front();
        if (c == goal) return dist[belief.index(c)];
        for (Action a : kMoveActions) {
            const Coord n = apply(c, a);
            if (!belief.traversable(n) || dist[belief.index(n)] >= 0) continue;
            dist[belief.index(n)] = dist[belief.index(c)] + 1;
            frontier.push_back(n);
        }
    }
    return kInfiniteCost;
}

BeliefMap random_belief(int width, int height, double p_blocked, Rng& rng) {
    BeliefMap belief(width, height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (rng.bernoulli(p_blocked)) {
                belief.set({r, c}, Knowledge::Blocked);
            } else if (rng.bernoulli(0.5)) {
                belief.set({r, c}, Knowledge::Free);
            }
        }
    }
    return belief;
}

Coord random_cell(int width, int height, Rng& rng) {
    return {static_cast<int>(rng.uniform_index(static_cast<std::size_t>(height))),
            static_cast<int>(rng.uniform_index(static_cast<std::size_t>(width)))};
}

}  // namespace pomapf::testutil
