#include <gtest/gtest.h>

#include "pomapf/dstar_lite.hpp"
#include "pomapf/errors.hpp"
#include "pomapf/instance.hpp"
#include "unit/test_util.hpp"

using namespace pomapf;
using pomapf::testutil::belief_from_rows;
using pomapf::testutil::bfs_cost;
using pomapf::testutil::random_belief;
using pomapf::testutil::random_cell;

namespace {

// Walks the planner's descent from `start`, replanning at every cell, and returns the
// number of moves taken to the goal (or -1 if the walk stalls or loops).
int walk_descent(DStarLite& planner, const BeliefMap& belief, Coord start) {
    Coord pos = start;
    const int limit = static_cast<int>(belief.size()) + 1;
    for (int steps = 0; steps <= limit; ++steps) {
        if (pos == planner.goal()) return steps;
        const PlanResult plan = planner.compute_shortest_path(belief, pos);
        if (!plan.next_action || *plan.next_action == Action::Wait) return -1;
        pos = apply(pos, *plan.next_action);
        if (!belief.traversable(pos)) return -1;
    }
    return -1;
}

void expect_consistent_outside_queue(const DStarLite& planner, const BeliefMap& belief) {
    for (std::size_t i = 0; i < belief.size(); ++i) {
        const Coord c = belief.coord(i);
        if (!planner.in_queue(c)) EXPECT_EQ(planner.g(c), planner.rhs(c)) << c.row << "," << c.col;
    }
}

}  // namespace

TEST(DStarLite, InitialQueueHoldsOnlyGoal) {
    const BeliefMap belief(5, 5);
    const DStarLite planner(belief, {0, 0}, {3, 4});
    EXPECT_EQ(planner.queue_size(), 1u);
    EXPECT_EQ(planner.rhs({3, 4}), 0);
    EXPECT_EQ(planner.g({3, 4}), kInfiniteCost);
    EXPECT_EQ(planner.top_key(), (PlannerKey{7, 0}));
    EXPECT_EQ(planner.km(), 0);
}

TEST(DStarLite, BlockedGoalThrows) {
    BeliefMap belief(3, 3);
    belief.set({2, 2}, Knowledge::Blocked);
    EXPECT_THROW(DStarLite(belief, {0, 0}, {2, 2}), GoalBlocked);
}

TEST(DStarLite, StartEqualsGoal) {
    const BeliefMap belief(3, 3);
    DStarLite planner(belief, {1, 1}, {1, 1});
    const PlanResult plan = planner.compute_shortest_path(belief);
    EXPECT_EQ(plan.path_cost, 0);
    EXPECT_EQ(plan.next_action, Action::Wait);
}

TEST(DStarLite, OpenGridCornerToCorner) {
    const BeliefMap belief(3, 3);
    DStarLite planner(belief, {0, 0}, {2, 2});
    const PlanResult plan = planner.compute_shortest_path(belief);
    EXPECT_EQ(plan.path_cost, 4);
    ASSERT_TRUE(plan.next_action);
    EXPECT_TRUE(*plan.next_action == Action::Down || *plan.next_action == Action::Right);
}

TEST(DStarLite, WalledOffStartIsUnreachable) {
    const BeliefMap belief = belief_from_rows({
        ".#...",
        "##...",
        ".....",
    });
    DStarLite planner(belief, {0, 0}, {2, 4});
    const PlanResult plan = planner.compute_shortest_path(belief);
    EXPECT_FALSE(plan.reachable());
    EXPECT_EQ(plan.path_cost, kInfiniteCost);
    EXPECT_FALSE(plan.next_action);
}

TEST(DStarLite, UnknownCellsAreTraversable) {
    const BeliefMap belief = belief_from_rows({
        ".??.",
        "####",
    });
    DStarLite planner(belief, {0, 0}, {0, 3});
    EXPECT_EQ(planner.compute_shortest_path(belief).path_cost, 3);
}

TEST(DStarLite, FirstActionFollowsCorridor) {
    const BeliefMap belief = belief_from_rows({
        "...",
        ".#.",
        ".#.",
    });
    DStarLite planner(belief, {2, 0}, {2, 2});
    const PlanResult plan = planner.compute_shortest_path(belief);
    EXPECT_EQ(plan.path_cost, 6);
    EXPECT_EQ(plan.next_action, Action::Up);
    EXPECT_EQ(planner.get_first_action(belief, {0, 1}), Action::Right);
    EXPECT_EQ(planner.get_first_action(belief, {2, 2}), Action::Wait);
}

TEST(DStarLite, EmptyDeltaIsIdentity) {
    const BeliefMap belief(6, 6);
    DStarLite planner(belief, {0, 0}, {5, 5});
    planner.compute_shortest_path(belief);
    const std::string before = planner.dump_values();
    planner.apply_belief_delta(belief, MapDelta{}, {0, 0});
    EXPECT_EQ(planner.compute_shortest_path(belief).path_cost, 10);
    EXPECT_EQ(planner.dump_values(), before);
}

TEST(DStarLite, BlockingCorridorMakesGoalUnreachable) {
    BeliefMap belief = belief_from_rows({
        "#####",
        "..?..",
        "#####",
    });
    DStarLite planner(belief, {1, 0}, {1, 4});
    EXPECT_EQ(planner.compute_shortest_path(belief).path_cost, 4);
    MapDelta d;
    d.entries = {{{1, 2}, Knowledge::Blocked}};
    const auto changed = fuse(belief, d);
    planner.apply_belief_delta(belief, changed, {1, 0});
    const PlanResult plan = planner.compute_shortest_path(belief);
    EXPECT_FALSE(plan.reachable());
    EXPECT_FALSE(plan.next_action);
}

TEST(DStarLite, DetourAfterNewObstacle) {
    BeliefMap belief(5, 5);
    DStarLite planner(belief, {2, 0}, {2, 4});
    EXPECT_EQ(planner.compute_shortest_path(belief).path_cost, 4);
    MapDelta d;
    d.entries = {{{2, 2}, Knowledge::Blocked}};
    planner.apply_belief_delta(belief, fuse(belief, d), {2, 0});
    EXPECT_EQ(planner.compute_shortest_path(belief).path_cost, 6);
    expect_consistent_outside_queue(planner, belief);
}

TEST(DStarLite, StaleBeliefIsRejected) {
    BeliefMap belief(4, 4);
    DStarLite planner(belief, {0, 0}, {3, 3});
    planner.compute_shortest_path(belief);
    MapDelta d;
    d.entries = {{{1, 1}, Knowledge::Blocked}};
    fuse(belief, d);
    EXPECT_THROW(planner.compute_shortest_path(belief), StalePlanner);
    EXPECT_THROW((void)planner.get_first_action(belief, {0, 0}), StalePlanner);
}

TEST(DStarLite, MatchesBreadthFirstSearchOnRandomBeliefs) {
    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const BeliefMap belief = random_belief(20, 20, 0.3, rng);
        const Coord start = random_cell(20, 20, rng);
        Coord goal = random_cell(20, 20, rng);
        if (belief.at(goal) == Knowledge::Blocked) continue;
        DStarLite planner(belief, start, goal);
        const PlanResult plan = planner.compute_shortest_path(belief, start);
        const int expected = belief.traversable(start) ? bfs_cost(belief, start, goal) : kInfiniteCost;
        ASSERT_EQ(plan.path_cost, expected) << "trial " << trial;
        EXPECT_EQ(plan.next_action.has_value(), plan.reachable());
        expect_consistent_outside_queue(planner, belief);
    }
}

TEST(DStarLite, DescentReachesGoalInPathCostSteps) {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const BeliefMap belief = random_belief(15, 15, 0.25, rng);
        const Coord start = random_cell(15, 15, rng);
        const Coord goal = random_cell(15, 15, rng);
        if (!belief.traversable(start) || !belief.traversable(goal)) continue;
        DStarLite planner(belief, start, goal);
        const int cost = planner.compute_shortest_path(belief, start).path_cost;
        if (cost >= kInfiniteCost) continue;
        EXPECT_EQ(walk_descent(planner, belief, start), cost) << "trial " << trial;
    }
}

TEST(DStarLite, IncrementalRepairMatchesOracleDuringWalk) {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const GridMap truth = generate_map(20, 20, 0.3, rng.next());
        BeliefMap belief(20, 20);
        Coord pos = random_cell(20, 20, rng);
        while (truth.blocked(pos)) pos = random_cell(20, 20, rng);
        Coord goal = random_cell(20, 20, rng);
        while (truth.blocked(goal)) goal = random_cell(20, 20, rng);
        DStarLite planner(belief, pos, goal);
        for (int step = 0; step < 100; ++step) {
            // Reveal a random patch of truth, then query from the current position.
            auto agents = make_agents(std::vector<Task>{{random_cell(20, 20, rng), {-1, -1}}});
            const MapDelta d = extract_delta(observe(truth, agents, 0, 2), belief);
            planner.apply_belief_delta(belief, fuse(belief, d), pos);
            const PlanResult plan = planner.compute_shortest_path(belief, pos);
            ASSERT_EQ(plan.path_cost, bfs_cost(belief, pos, goal)) << "trial " << trial << " step " << step;
            if (!plan.next_action || pos == goal) break;
            const Coord next = apply(pos, *plan.next_action);
            if (!truth.blocked(next)) pos = next;
        }
    }
}

TEST(DStarLite, KmAccumulatesStartMovement) {
    const BeliefMap belief(6, 6);
    DStarLite planner(belief, {0, 0}, {5, 5});
    planner.compute_shortest_path(belief, {0, 0});
    planner.compute_shortest_path(belief, {0, 1});
    planner.compute_shortest_path(belief, {1, 1});
    EXPECT_EQ(planner.km(), 2);
    EXPECT_EQ(planner.last_start(), (Coord{1, 1}));
}
