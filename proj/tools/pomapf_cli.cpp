#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pomapf/batch.hpp"
#include "pomapf/episode.hpp"
#include "pomapf/errors.hpp"
#include "pomapf/instance.hpp"
#include "pomapf/map_io.hpp"
#include "pomapf/results.hpp"
#include "pomapf/scenario.hpp"

namespace {

using namespace pomapf;

struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::string> preset_name;
    std::optional<int> map_size;
    std::optional<double> density;
    std::vector<int> agents;
    std::optional<int> max_steps;
    std::optional<int> instances;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> regime;
    bool no_loop_detection = false;
    std::optional<int> switch_threshold;
    std::optional<int> latency;
    std::optional<double> drop_rate;
    std::vector<std::string> set_entries;
};

struct OutputFlags {
    std::string out_dir = "results";
    std::string format = "table";
    unsigned threads = 1;
};

void add_scenario_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "Key-value config file");
    cmd->add_option("--preset", o.preset_name, "Named preset (see `pomapf presets`)");
    cmd->add_option("--map-size", o.map_size, "Square map side")->check(CLI::PositiveNumber);
    cmd->add_option("--density", o.density, "Obstacle density in [0, 1)");
    cmd->add_option("--agents", o.agents, "Agent count, or comma separated counts for sweeps")
        ->delimiter(',');
    cmd->add_option("--max-steps", o.max_steps, "Episode step cap");
    cmd->add_option("--instances", o.instances, "Instances per configuration");
    cmd->add_option("--seed", o.seed, "Base seed; instance i uses seed + i");
    cmd->add_option("--regime", o.regime, "Information regime")
        ->check(CLI::IsMember({"full", "shared", "local"}));
    cmd->add_flag("--no-loop-detection", o.no_loop_detection, "Disable the loop fallback");
    cmd->add_option("--switch-threshold", o.switch_threshold, "Switch to the local policy above this many neighbors");
    cmd->add_option("--latency", o.latency, "Delta delivery latency in steps");
    cmd->add_option("--drop-rate", o.drop_rate, "Per-recipient delta drop probability");
    cmd->add_option("--set", o.set_entries, "Extra key=value config entries");
}

void add_output_flags(CLI::App* cmd, OutputFlags& f) {
    cmd->add_option("--out", f.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--format", f.format, "table: CSV only; plot: CSV and SVG plots")
        ->check(CLI::IsMember({"table", "plot"}))
        ->capture_default_str();
    cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

ScenarioConfig build_config(const Overrides& o, bool sweep) {
    ScenarioConfig c = o.preset_name ? preset(*o.preset_name) : ScenarioConfig{};
    if (o.config_path) {
        std::ifstream in(*o.config_path);
        if (!in) throw ConfigError("cannot open config file '" + *o.config_path + "'");
        c = parse_config(in, c);
    }
    if (o.map_size) {
        c.width = c.height = *o.map_size;
        if (!o.max_steps) c.max_steps = default_max_steps(*o.map_size);
    }
    if (o.density) c.density = *o.density;
    if (!o.agents.empty()) {
        if (!sweep && o.agents.size() > 1) throw ConfigError("run takes a single --agents value");
        c.agents = o.agents.front();
        c.agent_sweep = o.agents;
    }
    if (o.max_steps) c.max_steps = *o.max_steps;
    if (o.instances) c.instances = *o.instances;
    if (o.seed) c.seed = *o.seed;
    if (o.regime) c.regime = *parse_regime(*o.regime);
    if (o.no_loop_detection) c.loop_detection = false;
    if (o.switch_threshold) c.switch_threshold = *o.switch_threshold;
    if (o.latency) c.latency = *o.latency;
    if (o.drop_rate) c.drop_rate = *o.drop_rate;
    for (const std::string& entry : o.set_entries) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + entry + "'");
        apply_config_entry(c, entry.substr(0, eq), entry.substr(eq + 1));
    }
    c.validate();
    return c;
}

OutputFormats formats_of(const OutputFlags& f) { return {true, f.format == "plot"}; }

void print_written(const std::vector<std::filesystem::path>& paths) {
    for (const auto& p : paths) std::cerr << "wrote " << p.string() << '\n';
}

int cmd_run(const Overrides& o, const OutputFlags& f, const std::optional<std::string>& trace_path) {
    const ScenarioConfig c = build_config(o, false);
    AggregateReport report;
    if (trace_path) {
        std::ofstream trace(*trace_path);
        if (!trace) throw Error("cannot open trace file '" + *trace_path + "'");
        EpisodeOptions options;
        options.trace_sink = [&](const DecisionTrace& t) { trace << format_trace(t) << '\n'; };
        std::vector<EpisodeRecord> records;
        for (int i = 0; i < c.instances; ++i) {
            trace << "# instance seed=" << c.instance_seed(i) << '\n';
            try {
                records.push_back(run_episode(c, c.instance_seed(i), options));
            } catch (const InstanceInfeasible&) {
                EpisodeRecord r;
                r.seed = c.instance_seed(i);
                r.failure = FailureReason::InfeasibleInstance;
                r.makespan = c.max_steps;
                r.arrival_times.assign(static_cast<std::size_t>(c.agents), std::nullopt);
                records.push_back(r);
            }
        }
        report = aggregate(c, records);
    } else {
        report = run_batch(c, {f.threads});
    }
    write_results_table(std::cout, {report});
    print_written(emit_results({report}, f.out_dir, formats_of(f)));
    return 0;
}

int cmd_sweep(const Overrides& o, const OutputFlags& f) {
    const ScenarioConfig c = build_config(o, true);
    const auto reports = run_sweep(c, {f.threads});
    write_results_table(std::cout, reports);
    print_written(emit_results(reports, f.out_dir, formats_of(f)));
    return 0;
}

int cmd_ablate(const Overrides& o, const OutputFlags& f) {
    const ScenarioConfig c = build_config(o, true);
    const AblationSuite suite = run_ablation_suite(c, {f.threads});
    write_results_table(std::cout, suite.reports);
    write_deltas_table(std::cout, suite.deltas);
    auto paths = emit_results(suite.reports, f.out_dir, formats_of(f));
    const auto deltas_path = std::filesystem::path(f.out_dir) / kDeltasTableName;
    std::ofstream deltas(deltas_path);
    if (!deltas) throw Error("cannot write '" + deltas_path.string() + "'");
    write_deltas_table(deltas, suite.deltas);
    paths.push_back(deltas_path);
    print_written(paths);
    return 0;
}

int cmd_plot(const std::string& table_path, const std::string& out_dir) {
    std::ifstream in(table_path);
    if (!in) throw Error("cannot open results table '" + table_path + "'");
    const auto reports = read_results_table(in);
    std::filesystem::create_directories(out_dir);
    for (const auto& [metric, name] : {std::pair{PlotMetric::SuccessRate, kSrPlotName},
                                       std::pair{PlotMetric::EpisodeLength, kElPlotName}}) {
        const auto path = std::filesystem::path(out_dir) / name;
        std::ofstream out(path);
        if (!out) throw Error("cannot write '" + path.string() + "'");
        out << render_svg_plot(reports, metric);
        std::cerr << "wrote " << path.string() << '\n';
    }
    return 0;
}

int cmd_generate(const Overrides& o, const std::string& out_dir) {
    const ScenarioConfig c = build_config(o, false);
    std::filesystem::create_directories(out_dir);
    for (int i = 0; i < c.instances; ++i) {
        const std::uint64_t seed = c.instance_seed(i);
        const GridMap map = generate_map(c.width, c.height, c.density, map_seed(seed));
        const auto tasks = generate_instance(map, c.agents, task_seed(seed));
        const auto stem = std::filesystem::path(out_dir) / ("instance_" + std::to_string(seed));
        std::ofstream map_out(stem.string() + ".map");
        std::ofstream task_out(stem.string() + ".agents");
        if (!map_out || !task_out) throw Error("cannot write '" + stem.string() + ".*'");
        write_map(map_out, map);
        write_instance(task_out, tasks);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partially observable multi-agent pathfinding simulator"};
    app.require_subcommand(1);

    Overrides overrides;
    OutputFlags output;
    std::optional<std::string> trace_path;

    CLI::App* run = app.add_subcommand("run", "Run one configuration and aggregate its instances");
    add_scenario_flags(run, overrides);
    add_output_flags(run, output);
    run->add_option("--trace", trace_path, "Write per-decision traces to this file");

    CLI::App* sweep = app.add_subcommand("sweep", "Run one configuration per agent count");
    add_scenario_flags(sweep, overrides);
    add_output_flags(sweep, output);

    CLI::App* ablate = app.add_subcommand("ablate", "Information regime x loop detection ablation");
    add_scenario_flags(ablate, overrides);
    add_output_flags(ablate, output);

    std::string table_path;
    std::string plot_out = "results";
    CLI::App* plot = app.add_subcommand("plot", "Render SVG plots from a results table");
    plot->add_option("table", table_path, "results.csv to plot")->required();
    plot->add_option("--out", plot_out, "Output directory")->capture_default_str();

    std::string generate_out = "instances";
    CLI::App* generate = app.add_subcommand("generate", "Write maps and agent files for a configuration");
    add_scenario_flags(generate, overrides);
    generate->add_option("--out", generate_out, "Output directory")->capture_default_str();

    CLI::App* presets = app.add_subcommand("presets", "List presets, or print one as a config file");
    std::optional<std::string> preset_to_show;
    presets->add_option("name", preset_to_show, "Preset to print");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(overrides, output, trace_path);
        if (sweep->parsed()) return cmd_sweep(overrides, output);
        if (ablate->parsed()) return cmd_ablate(overrides, output);
        if (plot->parsed()) return cmd_plot(table_path, plot_out);
        if (generate->parsed()) return cmd_generate(overrides, generate_out);
        if (presets->parsed()) {
            if (preset_to_show) {
                write_config(std::cout, preset(*preset_to_show));
            } else {
                for (const auto& name : preset_names()) std::cout << name << '\n';
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
