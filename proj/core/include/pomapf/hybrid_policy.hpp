#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include "pomapf/belief.hpp"
#include "pomapf/dstar_lite.hpp"
#include "pomapf/environment.hpp"
#include "pomapf/grid_memory.hpp"
#include "pomapf/rng.hpp"

namespace pomapf {

inline constexpr int kDefaultSwitchThreshold = 4;
inline constexpr double kDefaultEpsilon = 0.5;

// Which repeats count as a loop: only x(t) == x(t-2), or also x(t) == x(t-1).
enum class LoopRule : std::uint8_t { SecondToLastOnly, LastOrSecondToLast };

enum class ActionSource : std::uint8_t { Planner, LocalPolicy, Fallback };

struct HybridConfig {
    int switch_threshold = kDefaultSwitchThreshold;
    bool loop_detection = true;
    LoopRule loop_rule = LoopRule::LastOrSecondToLast;
};

struct PolicyInput {
    const Observation& observation;
    const BeliefMap& belief;
    const GridMemory& memory;
    Coord position;
    Coord goal;
};

// Local decision seam. Implementations must return one of the five actions and be
// deterministic given their seed.
class LocalPolicy {
public:
    virtual ~LocalPolicy() = default;
    virtual Action act(const PolicyInput& input) = 0;
};

// Greedy Manhattan descent over safe moves with epsilon-uniform exploration.
// A move is safe if its target is in bounds, not Blocked in belief, and not occupied
// by a visible agent.
Action safe_greedy_act(const Observation& obs, const BeliefMap& belief, Coord goal, double epsilon,
                       Rng& rng);

class SafeGreedyPolicy final : public LocalPolicy {
public:
    SafeGreedyPolicy(double epsilon, std::uint64_t seed) : epsilon_(epsilon), rng_(seed) {}

    Action act(const PolicyInput& input) override {
        return safe_greedy_act(input.observation, input.belief, input.goal, epsilon_, rng_);
    }
    double epsilon() const { return epsilon_; }

private:
    double epsilon_;
    Rng rng_;
};

struct DecisionTrace {
    int step = 0;
    int agent = 0;
    int neighbors = 0;
    Mode mode = Mode::DStarLite;
    bool loop_detected = false;
    bool planner_none = false;
    bool replanned = false;
    Action action = Action::Wait;
    ActionSource source = ActionSource::Planner;

    friend bool operator==(const DecisionTrace&, const DecisionTrace&) = default;
};

struct Decision {
    Action action = Action::Wait;
    DecisionTrace trace;
};

int count_neighbors(const Observation& obs);
Mode select_mode(int neighbors, int threshold = kDefaultSwitchThreshold);
bool detect_loop(const PositionHistory& history, LoopRule rule = LoopRule::LastOrSecondToLast);

// One step of the hybrid controller for one agent. The planner may be rebuilt from
// scratch when its incremental plan is empty.
Decision decide(const AgentState& agent, const Observation& obs, const BeliefMap& belief,
                const GridMemory& memory, DStarLite& planner, LocalPolicy& policy,
                const HybridConfig& config, int step);

std::string_view to_string(Mode m);
std::string_view to_string(ActionSource s);

// "step=3 agent=1 n=0 mode=dstar loop=0 none=0 replan=0 action=right source=planner"
std::string format_trace(const DecisionTrace& trace);
DecisionTrace parse_trace(const std::string& line);

}  // namespace pomapf
