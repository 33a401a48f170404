#include <benchmark/benchmark.h>

#include "pomapf/belief.hpp"
#include "pomapf/dstar_lite.hpp"
#include "pomapf/instance.hpp"

using namespace pomapf;

namespace {

struct WalkSetup {
    GridMap map;
    std::vector<Task> tasks;
};

WalkSetup make_walk(int side, std::uint64_t seed) {
    GridMap map = generate_map(side, side, 0.3, seed);
    auto tasks = generate_instance(map, 1, seed + 1);
    return {std::move(map), std::move(tasks)};
}

// Full episode of sensing and repair for one agent.
template <bool Incremental>
void walk(benchmark::State& state) {
    const WalkSetup setup = make_walk(static_cast<int>(state.range(0)), 7);
    std::uint64_t expansions = 0;
    for (auto _ : state) {
        auto agents = make_agents(setup.tasks);
        BeliefMap belief(setup.map.width(), setup.map.height());
        DStarLite planner(belief, setup.tasks[0].start, setup.tasks[0].goal);
        for (int t = 0; t < 4 * setup.map.width() && agents[0].active; ++t) {
            const auto changed = fuse(belief, extract_delta(observe(setup.map, agents, 0), belief));
            std::optional<Action> next;
            std::uint64_t before = 0;
            if constexpr (Incremental) {
                before = planner.expansions();
                planner.apply_belief_delta(belief, changed, agents[0].pos);
                next = planner.compute_shortest_path(belief, agents[0].pos).next_action;
            } else {
                planner = DStarLite(belief, agents[0].pos, setup.tasks[0].goal);
                next = planner.compute_shortest_path(belief).next_action;
            }
            expansions += planner.expansions() - before;
            const std::vector<Action> step{next.value_or(Action::Wait)};
            apply_joint_action(setup.map, agents, step, t + 1);
        }
    }
    state.counters["expansions"] = benchmark::Counter(static_cast<double>(expansions), benchmark::Counter::kAvgIterations);
}

void BM_WalkIncremental(benchmark::State& state) { walk<true>(state); }
void BM_WalkFullReplan(benchmark::State& state) { walk<false>(state); }

void BM_InitialPlan(benchmark::State& state) {
    const auto side = static_cast<int>(state.range(0));
    const GridMap map = generate_map(side, side, 0.3, 3);
    const BeliefMap belief = BeliefMap::from_truth(map);
    const auto tasks = generate_instance(map, 1, 4);
    for (auto _ : state) {
        DStarLite planner(belief, tasks[0].start, tasks[0].goal);
        benchmark::DoNotOptimize(planner.compute_shortest_path(belief));
    }
}

}  // namespace

BENCHMARK(BM_WalkIncremental)->Arg(20)->Arg(64);
BENCHMARK(BM_WalkFullReplan)->Arg(20)->Arg(64);
BENCHMARK(BM_InitialPlan)->Arg(20)->Arg(64)->Arg(128);
