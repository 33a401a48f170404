#pragma once

#include <cstdint>
#include <vector>

#include "pomapf/grid.hpp"

namespace pomapf {

struct Task {
    Coord start;
    Coord goal;

    friend bool operator==(const Task&, const Task&) = default;
};

// Number of (start, goal) draws attempted per agent before giving up.
inline constexpr int kInstanceRetryBudget = 100;

// Places exactly round(density * width * height) obstacles by a seeded partial shuffle.
GridMap generate_map(int width, int height, double density, std::uint64_t seed);

// Samples distinct starts and distinct goals such that every agent's goal lies in its
// start's 4-connected free component. Throws InstanceInfeasible.
std::vector<Task> generate_instance(const GridMap& map, int n_agents, std::uint64_t seed);

// Component label per cell (-1 for blocked cells), labels dense from 0.
std::vector<int> label_components(const GridMap& map);

}  // namespace pomapf
