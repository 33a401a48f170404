#include "pomapf/hybrid_policy.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "pomapf/errors.hpp"

namespace pomapf {

std::string_view to_string(Mode m) { return m == Mode::LocalRL ? "local" : "dstar"; }

std::string_view to_string(ActionSource s) {
    switch (s) {
        case ActionSource::Planner: return "planner";
        case ActionSource::LocalPolicy: return "local";
        case ActionSource::Fallback: return "fallback";
    }
    return "planner";
}

int count_neighbors(const Observation& obs) {
    return static_cast<int>(std::count(obs.agents.begin(), obs.agents.end(), std::uint8_t{1}));
}

Mode select_mode(int neighbors, int threshold) {
    return neighbors > threshold ? Mode::LocalRL : Mode::DStarLite;
}

bool detect_loop(const PositionHistory& history, LoopRule rule) {
    if (history.size() >= 3 && history.back(0) == history.back(2)) return true;
    if (rule == LoopRule::LastOrSecondToLast && history.size() >= 2 && history.back(0) == history.back(1)) {
        return true;
    }
    return false;
}

Action safe_greedy_act(const Observation& obs, const BeliefMap& belief, Coord goal, double epsilon, Rng& rng) {
    std::vector<Action> safe;
    for (Action a : kMoveActions) {
        const Coord target = apply(obs.center, a);
        if (!obs.contains(target) || obs.cell_at(target) == CellView::OutOfBounds) continue;
        if (!belief.in_bounds(target) || belief.at(target) == Knowledge::Blocked) continue;
        if (obs.cell_at(target) == CellView::Blocked) continue;
        if (obs.agent_at(target)) continue;
        safe.push_back(a);
    }
    if (safe.empty()) return Action::Wait;
    if (rng.uniform01() < epsilon) return safe[rng.uniform_index(safe.size())];
    Action best = safe.front();
    int best_distance = manhattan(apply(obs.center, best), goal);
    for (Action a : safe) {
        const int d = manhattan(apply(obs.center, a), goal);
        if (d < best_distance) {
            best = a;
            best_distance = d;
        }
    }
    return best;
}

Decision decide(const AgentState& agent, const Observation& obs, const BeliefMap& belief,
                const GridMemory& memory, DStarLite& planner, LocalPolicy& policy,
                const HybridConfig& config, int step) {
    Decision d;
    DecisionTrace& trace = d.trace;
    trace.step = step;
    trace.agent = agent.id;
    trace.neighbors = count_neighbors(obs);
    trace.mode = select_mode(trace.neighbors, config.switch_threshold);

    const PolicyInput input{obs, belief, memory, agent.pos, agent.goal};
    if (trace.mode == Mode::LocalRL) {
        d.action = policy.act(input);
        trace.source = ActionSource::LocalPolicy;
        trace.action = d.action;
        return d;
    }

    std::optional<Action> planned = planner.compute_shortest_path(belief, agent.pos).next_action;
    if (!planned) {
        // Empty incremental plan: rebuild the planner from scratch on the current belief.
        trace.replanned = true;
        planner = DStarLite(belief, agent.pos, agent.goal);
        planned = planner.compute_shortest_path(belief, agent.pos).next_action;
    }
    trace.planner_none = !planned.has_value();
    trace.loop_detected = config.loop_detection && agent.pos != agent.goal &&
                          detect_loop(agent.history, config.loop_rule);

    if (trace.loop_detected || !planned) {
        d.action = policy.act(input);
        trace.source = ActionSource::Fallback;
    } else {
        d.action = *planned;
        trace.source = ActionSource::Planner;
    }
    trace.action = d.action;
    return d;
}

std::string format_trace(const DecisionTrace& t) {
    std::ostringstream out;
    out << "step=" << t.step << " agent=" << t.agent << " n=" << t.neighbors << " mode=" << to_string(t.mode)
        << " loop=" << (t.loop_detected ? 1 : 0) << " none=" << (t.planner_none ? 1 : 0)
        << " replan=" << (t.replanned ? 1 : 0) << " action=" << to_string(t.action)
        << " source=" << to_string(t.source);
    return out.str();
}

DecisionTrace parse_trace(const std::string& line) {
    DecisionTrace t;
    std::istringstream in(line);
    std::string field;
    int seen = 0;
    while (in >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw ParseError("trace: bad field '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        try {
            if (key == "step") t.step = std::stoi(value);
            else if (key == "agent") t.agent = std::stoi(value);
            else if (key == "n") t.neighbors = std::stoi(value);
            else if (key == "mode") t.mode = value == "local" ? Mode::LocalRL : Mode::DStarLite;
            else if (key == "loop") t.loop_detected = value == "1";
            else if (key == "none") t.planner_none = value == "1";
            else if (key == "replan") t.replanned = value == "1";
            else if (key == "action") {
                const auto a = parse_action(value);
                if (!a) throw ParseError("trace: bad action '" + value + "'");
                t.action = *a;
            } else if (key == "source") {
                if (value == "planner") t.source = ActionSource::Planner;
                else if (value == "local") t.source = ActionSource::LocalPolicy;
                else if (value == "fallback") t.source = ActionSource::Fallback;
                else throw ParseError("trace: bad source '" + value + "'");
            } else {
                throw ParseError("trace: unknown key '" + key + "'");
            }
        } catch (const std::logic_error&) {
            throw ParseError("trace: bad value in '" + field + "'");
        }
        ++seen;
    }
    if (seen != 9) throw ParseError("trace: expected 9 fields, got " + std::to_string(seen));
    return t;
}

}  // namespace pomapf
