#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pomapf/environment.hpp"
#include "pomapf/hybrid_policy.hpp"

namespace pomapf {

enum class InfoRegime : std::uint8_t { FullInformation, SharedMap, LocalOnly };

std::string_view to_string(InfoRegime r);
std::optional<InfoRegime> parse_regime(std::string_view s);
std::string_view to_string(LoopRule r);
std::optional<LoopRule> parse_loop_rule(std::string_view s);

struct ScenarioConfig {
    std::string name = "custom";
    int width = 40;
    int height = 40;
    double density = 0.30;
    int agents = 8;
    int max_steps = 320;
    int instances = 100;
    // Instance i of a batch uses seed + i.
    std::uint64_t seed = 0;

    InfoRegime regime = InfoRegime::SharedMap;
    bool loop_detection = true;
    LoopRule loop_rule = LoopRule::LastOrSecondToLast;
    int switch_threshold = kDefaultSwitchThreshold;

    int observation_radius = kDefaultObservationRadius;
    int history_length = static_cast<int>(kDefaultHistoryLength);

    int latency = 0;
    double drop_rate = 0.0;
    int broadcast_period = 1;

    double epsilon = kDefaultEpsilon;

    // Agent counts for sweep and ablation runs.
    std::vector<int> agent_sweep;

    HybridConfig hybrid() const { return {switch_threshold, loop_detection, loop_rule}; }
    std::uint64_t instance_seed(int i) const { return seed + static_cast<std::uint64_t>(i); }
    void validate() const;  // throws ConfigError
};

// Key-value text, one "key = value" per line, '#' starts a comment. Keys are the
// field names above; agent_sweep is a comma separated list.
ScenarioConfig parse_config(std::istream& in, ScenarioConfig base = {});
void write_config(std::ostream& out, const ScenarioConfig& config);
void apply_config_entry(ScenarioConfig& config, std::string_view key, std::string_view value);

// Step cap used by the experiment presets for a given map side.
int default_max_steps(int map_side);

std::vector<std::string> preset_names();
ScenarioConfig preset(std::string_view name);  // throws ConfigError for unknown names

}  // namespace pomapf
