#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pomapf/batch.hpp"

namespace pomapf {

struct OutputFormats {
    bool table = true;
    bool plot = false;
};

inline constexpr const char* kResultsTableName = "results.csv";
inline constexpr const char* kDeltasTableName = "deltas.csv";
inline constexpr const char* kSrPlotName = "sr_vs_agents.svg";
inline constexpr const char* kElPlotName = "el_vs_agents.svg";

void write_results_table(std::ostream& out, const std::vector<AggregateReport>& reports);
std::vector<AggregateReport> read_results_table(std::istream& in);
void write_deltas_table(std::ostream& out, const std::vector<ComparisonDelta>& deltas);

// Writes results.csv and, when requested and non-empty, the SR and EL plots.
// Returns the written paths. IO failures throw pomapf::Error naming the path.
std::vector<std::filesystem::path> emit_results(const std::vector<AggregateReport>& reports,
                                                const std::filesystem::path& out_dir,
                                                const OutputFormats& formats);

// Line chart of a metric against agent count, one series per (name, regime, loop) group.
enum class PlotMetric { SuccessRate, EpisodeLength };
std::string render_svg_plot(const std::vector<AggregateReport>& reports, PlotMetric metric);

}  // namespace pomapf
