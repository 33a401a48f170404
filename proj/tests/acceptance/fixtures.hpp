#pragma once

#include <cstdint>
#include <vector>

#include "pomapf/belief.hpp"
#include "pomapf/grid.hpp"
#include "pomapf/instance.hpp"
#include "pomapf/rng.hpp"
#include "pomapf/scenario.hpp"

namespace pomapf::acceptance {

// Uniform-cost search from scratch over cells not Blocked in the belief.
// kInfiniteCost when unreachable.
int dijkstra_cost(const BeliefMap& belief, Coord start, Coord goal);

// Truthful delta over the cells of `truth` within Chebyshev radius of `center`.
MapDelta window_delta(const GridMap& truth, Coord center, int radius);

// Truthful delta over a random subset of cells, each kept with probability `keep`.
MapDelta random_subset_delta(const GridMap& truth, double keep, Rng& rng);

// Free cell of `truth` chosen uniformly.
Coord random_free_cell(const GridMap& truth, Rng& rng);

// Two-wide corridor of `length` columns (walls on the top and bottom rows) with
// two agents starting at opposite ends, each heading for the other's start.
GridMap corridor_map(int length);
std::vector<Task> corridor_tasks(int length);

// Mean over the batch's instances of the largest start-goal Manhattan distance.
double makespan_lower_bound(const ScenarioConfig& config);

}  // namespace pomapf::acceptance
