#include "pomapf/instance.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "pomapf/errors.hpp"
#include "pomapf/rng.hpp"

namespace pomapf {

GridMap generate_map(int width, int height, double density, std::uint64_t seed) {
    if (!(density >= 0.0 && density < 1.0)) {
        throw std::invalid_argument("density must lie in [0, 1)");
    }
    GridMap map(width, height);
    const std::size_t cells = map.size();
    const auto n_blocked = static_cast<std::size_t>(std::llround(density * static_cast<double>(cells)));

    // Partial Fisher-Yates: the first n_blocked slots become obstacles.
    std::vector<std::size_t> order(cells);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < n_blocked; ++i) {
        const std::size_t j = i + rng.uniform_index(cells - i);
        std::swap(order[i], order[j]);
        map.set_blocked(map.coord(order[i]), true);
    }
    return map;
}

std::vector<int> label_components(const GridMap& map) {
    std::vector<int> label(map.size(), -1);
    int next = 0;
    std::queue<std::size_t> frontier;
    for (std::size_t seed = 0; seed < map.size(); ++seed) {
        if (label[seed] >= 0 || map.blocked(map.coord(seed))) continue;
        label[seed] = next;
        frontier.push(seed);
        while (!frontier.empty()) {
            const Coord c = map.coord(frontier.front());
            frontier.pop();
            for (Action a : kMoveActions) {
                const Coord n = apply(c, a);
                if (!map.passable(n)) continue;
                const std::size_t ni = map.index(n);
                if (label[ni] >= 0) continue;
                label[ni] = next;
                frontier.push(ni);
            }
        }
        ++next;
    }
    return label;
}

std::vector<Task> generate_instance(const GridMap& map, int n_agents, std::uint64_t seed) {
    if (n_agents < 0) throw std::invalid_argument("n_agents must be >= 0");
    const std::size_t needed = 2 * static_cast<std::size_t>(n_agents);
    if (map.free_count() < needed) {
        throw InstanceInfeasible("instance needs " + std::to_string(needed) + " free cells, map has " +
                                 std::to_string(map.free_count()) + " (retry budget " +
                                 std::to_string(kInstanceRetryBudget) + " per agent not attempted)");
    }

    const std::vector<int> label = label_components(map);
    std::vector<std::vector<std::size_t>> members;
    std::vector<std::size_t> free_cells;
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (label[i] < 0) continue;
        if (static_cast<std::size_t>(label[i]) >= members.size()) members.resize(static_cast<std::size_t>(label[i]) + 1);
        members[static_cast<std::size_t>(label[i])].push_back(i);
        free_cells.push_back(i);
    }

    Rng rng(seed);
    std::vector<std::uint8_t> used_start(map.size(), 0);
    std::vector<std::uint8_t> used_goal(map.size(), 0);
    std::vector<Task> tasks;
    tasks.reserve(static_cast<std::size_t>(n_agents));

    for (int agent = 0; agent < n_agents; ++agent) {
        bool placed = false;
        for (int attempt = 0; attempt < kInstanceRetryBudget && !placed; ++attempt) {
            const std::size_t s = free_cells[rng.uniform_index(free_cells.size())];
            if (used_start[s]) continue;
            const auto& component = members[static_cast<std::size_t>(label[s])];
            const std::size_t g = component[rng.uniform_index(component.size())];
            if (g == s || used_goal[g]) continue;
            used_start[s] = 1;
            used_goal[g] = 1;
            tasks.push_back({map.coord(s), map.coord(g)});
            placed = true;
        }
        if (!placed) {
            throw InstanceInfeasible("could not place agent " + std::to_string(agent) + " of " +
                                     std::to_string(n_agents) + " within retry budget " +
                                     std::to_string(kInstanceRetryBudget));
        }
    }
    return tasks;
}

}  // namespace pomapf
