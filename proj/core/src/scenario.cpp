#include "pomapf/scenario.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pomapf/errors.hpp"

namespace pomapf {

std::string_view to_string(InfoRegime r) {
    switch (r) {
        case InfoRegime::FullInformation: return "full";
        case InfoRegime::SharedMap: return "shared";
        case InfoRegime::LocalOnly: return "local";
    }
    return "shared";
}

std::optional<InfoRegime> parse_regime(std::string_view s) {
    if (s == "full") return InfoRegime::FullInformation;
    if (s == "shared") return InfoRegime::SharedMap;
    if (s == "local") return InfoRegime::LocalOnly;
    return std::nullopt;
}

std::string_view to_string(LoopRule r) {
    return r == LoopRule::SecondToLastOnly ? "second-to-last" : "last-or-second-to-last";
}

std::optional<LoopRule> parse_loop_rule(std::string_view s) {
    if (s == "second-to-last") return LoopRule::SecondToLastOnly;
    if (s == "last-or-second-to-last") return LoopRule::LastOrSecondToLast;
    return std::nullopt;
}

void ScenarioConfig::validate() const {
    auto fail = [this](const std::string& what) { throw ConfigError("config '" + name + "': " + what); };
    if (width < 1 || height < 1) fail("map dimensions must be >= 1");
    if (!(density >= 0.0 && density < 1.0)) fail("density must lie in [0, 1)");
    if (agents < 0) fail("agents must be >= 0");
    if (max_steps < 1) fail("max_steps must be >= 1");
    if (instances < 1) fail("instances must be >= 1");
    if (switch_threshold < 0) fail("switch_threshold must be >= 0");
    if (observation_radius < 1) fail("observation_radius must be >= 1");
    if (history_length < 3) fail("history_length must be >= 3");
    if (latency < 0) fail("latency must be >= 0");
    if (!(drop_rate >= 0.0 && drop_rate <= 1.0)) fail("drop_rate must lie in [0, 1]");
    if (broadcast_period < 1) fail("broadcast_period must be >= 1");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail("epsilon must lie in [0, 1]");
    for (int n : agent_sweep) {
        if (n < 0) fail("agent_sweep entries must be >= 0");
    }
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("bad value '" + std::string(value) + "' for key '" + std::string(key) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "off" || value == "no") return false;
    throw ConfigError("bad boolean '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
    std::vector<int> out;
    while (!value.empty()) {
        const auto comma = value.find(',');
        const std::string_view item = trim(value.substr(0, comma));
        if (!item.empty()) out.push_back(parse_number<int>(key, item));
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

void apply_config_entry(ScenarioConfig& c, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "name") c.name = std::string(value);
    else if (key == "width") c.width = parse_number<int>(key, value);
    else if (key == "height") c.height = parse_number<int>(key, value);
    else if (key == "map_size") c.width = c.height = parse_number<int>(key, value);
    else if (key == "density") c.density = parse_number<double>(key, value);
    else if (key == "agents") c.agents = parse_number<int>(key, value);
    else if (key == "max_steps") c.max_steps = parse_number<int>(key, value);
    else if (key == "instances") c.instances = parse_number<int>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "regime") {
        const auto r = parse_regime(value);
        if (!r) throw ConfigError("unknown regime '" + std::string(value) + "' (full|shared|local)");
        c.regime = *r;
    } else if (key == "loop_detection") c.loop_detection = parse_bool(key, value);
    else if (key == "loop_rule") {
        const auto r = parse_loop_rule(value);
        if (!r) throw ConfigError("unknown loop_rule '" + std::string(value) + "'");
        c.loop_rule = *r;
    } else if (key == "switch_threshold") c.switch_threshold = parse_number<int>(key, value);
    else if (key == "observation_radius") c.observation_radius = parse_number<int>(key, value);
    else if (key == "history_length") c.history_length = parse_number<int>(key, value);
    else if (key == "latency") c.latency = parse_number<int>(key, value);
    else if (key == "drop_rate") c.drop_rate = parse_number<double>(key, value);
    else if (key == "broadcast_period") c.broadcast_period = parse_number<int>(key, value);
    else if (key == "epsilon") c.epsilon = parse_number<double>(key, value);
    else if (key == "agent_sweep") c.agent_sweep = parse_int_list(key, value);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

ScenarioConfig parse_config(std::istream& in, ScenarioConfig base) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        apply_config_entry(base, view.substr(0, eq), view.substr(eq + 1));
    }
    base.validate();
    return base;
}

void write_config(std::ostream& out, const ScenarioConfig& c) {
    out << "name = " << c.name << '\n'
        << "width = " << c.width << '\n'
        << "height = " << c.height << '\n'
        << "density = " << c.density << '\n'
        << "agents = " << c.agents << '\n'
        << "max_steps = " << c.max_steps << '\n'
        << "instances = " << c.instances << '\n'
        << "seed = " << c.seed << '\n'
        << "regime = " << to_string(c.regime) << '\n'
        << "loop_detection = " << (c.loop_detection ? "true" : "false") << '\n'
        << "loop_rule = " << to_string(c.loop_rule) << '\n'
        << "switch_threshold = " << c.switch_threshold << '\n'
        << "observation_radius = " << c.observation_radius << '\n'
        << "history_length = " << c.history_length << '\n'
        << "latency = " << c.latency << '\n'
        << "drop_rate = " << c.drop_rate << '\n'
        << "broadcast_period = " << c.broadcast_period << '\n'
        << "epsilon = " << c.epsilon << '\n'
        << "agent_sweep = ";
    for (std::size_t i = 0; i < c.agent_sweep.size(); ++i) out << (i ? "," : "") << c.agent_sweep[i];
    out << '\n';
}

int default_max_steps(int map_side) {
    if (map_side <= 20) return 256;
    if (map_side <= 40) return 320;
    return 512;
}

namespace {

ScenarioConfig make_preset(std::string name, int side, double density, std::vector<int> sweep,
                           std::uint64_t seed) {
    ScenarioConfig c;
    c.name = std::move(name);
    c.width = c.height = side;
    c.density = density;
    c.agents = sweep.front();
    c.agent_sweep = std::move(sweep);
    c.max_steps = default_max_steps(side);
    c.instances = 100;
    c.seed = seed;
    return c;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"grid20-d30", "table40-d30", "table40-d15", "table40-d0", "ablation-shared-80",
            "ablation-loop-40", "perf-64"};
}

ScenarioConfig preset(std::string_view name) {
    if (name == "grid20-d30") return make_preset("grid20-d30", 20, 0.30, {4, 8, 16, 32, 64}, 20000);
    if (name == "table40-d30") return make_preset("table40-d30", 40, 0.30, {8, 16, 32, 64, 128}, 40030);
    if (name == "table40-d15") return make_preset("table40-d15", 40, 0.15, {8, 16, 32, 64, 128}, 40015);
    if (name == "table40-d0") return make_preset("table40-d0", 40, 0.0, {8, 16, 32, 64, 128}, 40000);
    if (name == "ablation-shared-80") {
        return make_preset("ablation-shared-80", 80, 0.30, {8, 16, 32, 64, 128}, 80030);
    }
    if (name == "ablation-loop-40") return make_preset("ablation-loop-40", 40, 0.30, {8, 16, 32, 64, 128}, 41030);
    if (name == "perf-64") {
        ScenarioConfig c = make_preset("perf-64", 64, 0.30, {64}, 64030);
        return c;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace pomapf
