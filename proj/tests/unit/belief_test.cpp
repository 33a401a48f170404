#include <gtest/gtest.h>

#include "pomapf/belief.hpp"
#include "pomapf/errors.hpp"
#include "pomapf/instance.hpp"
#include "pomapf/rng.hpp"
#include "unit/test_util.hpp"

using namespace pomapf;

namespace {

Observation observe_at(const GridMap& map, Coord pos, int radius = 4) {
    const std::vector<Task> tasks{{pos, pos}};
    auto agents = make_agents(tasks);
    agents[0].active = true;
    return observe(map, agents, 0, radius);
}

// Truthful delta over a random subset of cells.
MapDelta random_delta(const GridMap& truth, double keep, Rng& rng) {
    MapDelta d;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (!rng.bernoulli(keep)) continue;
        const Coord c = truth.coord(i);
        d.entries.emplace_back(c, truth.blocked(c) ? Knowledge::Blocked : Knowledge::Free);
    }
    return d;
}

BeliefMap fused(BeliefMap b, const MapDelta& d) {
    fuse(b, d);
    return b;
}

}  // namespace

TEST(ExtractDelta, FreshInteriorAgentLearnsFullWindow) {
    const GridMap map = generate_map(20, 20, 0.3, 1);
    const BeliefMap belief(20, 20);
    const MapDelta d = extract_delta(observe_at(map, {10, 10}), belief, 0, 0);
    EXPECT_EQ(d.size(), 81u);  // (2*4+1)^2
    for (const auto& [c, k] : d.entries) {
        EXPECT_EQ(k == Knowledge::Blocked, map.blocked(c));
    }
}

TEST(ExtractDelta, KnownWindowYieldsNothing) {
    const GridMap map = generate_map(20, 20, 0.3, 1);
    const BeliefMap belief = BeliefMap::from_truth(map);
    EXPECT_TRUE(extract_delta(observe_at(map, {10, 10}), belief).empty());
}

TEST(ExtractDelta, EdgeWindowExcludesOutOfBounds) {
    const GridMap map(20, 20);
    const MapDelta d = extract_delta(observe_at(map, {0, 0}), BeliefMap(20, 20));
    EXPECT_EQ(d.size(), 25u);
    for (const auto& [c, k] : d.entries) EXPECT_TRUE(map.in_bounds(c));
}

TEST(ExtractDelta, ContradictionIsReported) {
    const GridMap map(10, 10);
    BeliefMap belief(10, 10);
    belief.set({5, 5}, Knowledge::Blocked);
    EXPECT_THROW(extract_delta(observe_at(map, {5, 4}), belief), ConflictingEvidence);
}

TEST(Fuse, EmptyDeltaIsIdentity) {
    BeliefMap b(4, 4);
    b.set({1, 1}, Knowledge::Free);
    const auto version = b.version();
    const BeliefMap copy = b;
    EXPECT_TRUE(fuse(b, MapDelta{}).empty());
    EXPECT_EQ(b, copy);
    EXPECT_EQ(b.version(), version);
}

TEST(Fuse, ReportsChangedCellsAndBumpsVersionOnce) {
    BeliefMap b(4, 4);
    b.set({0, 0}, Knowledge::Free);
    const auto version = b.version();
    MapDelta d;
    d.entries = {{{0, 0}, Knowledge::Free}, {{0, 1}, Knowledge::Blocked}, {{2, 3}, Knowledge::Free}};
    const auto changed = fuse(b, d);
    EXPECT_EQ(changed, (std::vector<Coord>{{0, 1}, {2, 3}}));
    EXPECT_EQ(b.version(), version + 1);
    EXPECT_EQ(b.at({0, 1}), Knowledge::Blocked);
}

TEST(Fuse, ConflictingEvidenceLeavesBeliefUntouched) {
    BeliefMap b(4, 4);
    b.set({0, 1}, Knowledge::Free);
    const BeliefMap copy = b;
    MapDelta d;
    d.entries = {{{0, 0}, Knowledge::Free}, {{0, 1}, Knowledge::Blocked}};
    EXPECT_THROW(fuse(b, d), ConflictingEvidence);
    EXPECT_EQ(b, copy);
}

TEST(Fuse, IdempotentAndOrderIndependentOnRandomMaps) {
    Rng rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const GridMap truth = generate_map(16, 16, 0.3, rng.next());
        const BeliefMap base = fused(BeliefMap(16, 16), random_delta(truth, 0.2, rng));
        const MapDelta d1 = random_delta(truth, 0.3, rng);
        const MapDelta d2 = random_delta(truth, 0.3, rng);
        EXPECT_EQ(fused(fused(base, d1), d1), fused(base, d1));
        EXPECT_EQ(fused(fused(base, d1), d2), fused(fused(base, d2), d1));
    }
}

TEST(Fuse, SoundAgainstTruthAndMonotone) {
    Rng rng(9);
    const GridMap truth = generate_map(24, 24, 0.3, 11);
    BeliefMap b(24, 24);
    std::size_t unknown = b.unknown_count();
    for (int i = 0; i < 100; ++i) {
        const Coord c = testutil::random_cell(24, 24, rng);
        fuse(b, extract_delta(observe_at(truth, c), b));
        EXPECT_LE(b.unknown_count(), unknown);
        unknown = b.unknown_count();
    }
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const Coord c = truth.coord(i);
        if (b.at(c) != Knowledge::Unknown) EXPECT_EQ(b.at(c) == Knowledge::Blocked, truth.blocked(c));
    }
}

TEST(MergeDelta, UnionKeepsOrder) {
    MapDelta a;
    a.entries = {{{0, 0}, Knowledge::Free}, {{1, 1}, Knowledge::Blocked}};
    MapDelta b;
    b.entries = {{{0, 1}, Knowledge::Free}, {{1, 1}, Knowledge::Blocked}};
    merge_delta(a, b);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_EQ(a.entries[1].first, (Coord{0, 1}));
}

TEST(RemoveBlockedEdges, InteriorCornerAndFree) {
    BeliefMap b(5, 5);
    b.set({2, 2}, Knowledge::Blocked);
    b.set({0, 0}, Knowledge::Blocked);
    b.set({4, 4}, Knowledge::Free);
    const std::vector<Coord> interior{{2, 2}};
    const std::vector<Coord> corner{{0, 0}};
    const std::vector<Coord> free_cell{{4, 4}};
    EXPECT_EQ(remove_blocked_edges(interior, b).size(), 4u);
    EXPECT_EQ(remove_blocked_edges(corner, b).size(), 2u);
    EXPECT_TRUE(remove_blocked_edges(free_cell, b).empty());
}

TEST(RemoveBlockedEdges, SharedEdgeCountedOnce) {
    BeliefMap b(5, 5);
    b.set({2, 2}, Knowledge::Blocked);
    b.set({2, 3}, Knowledge::Blocked);
    const std::vector<Coord> changed{{2, 2}, {2, 3}};
    EXPECT_EQ(remove_blocked_edges(changed, b).size(), 7u);
}
