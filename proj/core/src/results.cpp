#include "pomapf/results.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "pomapf/errors.hpp"

namespace pomapf {

namespace {

constexpr std::array<const char*, 16> kColumns{
    "name", "width", "height", "density", "agents", "max_steps", "instances", "regime", "loop_detection",
    "successes", "infeasible", "sr", "el", "icr", "mean_collisions", "executed_conflicts"};

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

template <typename T>
T parse_field(const std::string& s, const char* column) {
    T out{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(std::string("results table: bad ") + column + " value '" + s + "'");
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else if (ch != '\r') {
            current.push_back(ch);
        }
    }
    fields.push_back(current);
    return fields;
}

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    return s;
}

}  // namespace

void write_results_table(std::ostream& out, const std::vector<AggregateReport>& reports) {
    for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
    out << '\n';
    for (const AggregateReport& r : reports) {
        out << sanitize(r.name) << ',' << r.width << ',' << r.height << ',' << format_double(r.density) << ','
            << r.agents << ',' << r.max_steps << ',' << r.instances << ',' << to_string(r.regime) << ','
            << (r.loop_detection ? 1 : 0) << ',' << r.successes << ',' << r.infeasible << ','
            << format_double(r.sr) << ',' << format_double(r.el) << ',' << format_double(r.icr) << ','
            << format_double(r.mean_collisions) << ',' << r.executed_conflicts << '\n';
    }
}

std::vector<AggregateReport> read_results_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("results table: missing header");
    const std::vector<std::string> header = split_csv(line);
    if (header.size() != kColumns.size() || !std::equal(header.begin(), header.end(), kColumns.begin())) {
        throw ParseError("results table: unexpected header '" + line + "'");
    }
    std::vector<AggregateReport> reports;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> f = split_csv(line);
        if (f.size() != kColumns.size()) throw ParseError("results table: bad row '" + line + "'");
        AggregateReport r;
        r.name = f[0];
        r.width = parse_field<int>(f[1], "width");
        r.height = parse_field<int>(f[2], "height");
        r.density = parse_field<double>(f[3], "density");
        r.agents = parse_field<int>(f[4], "agents");
        r.max_steps = parse_field<int>(f[5], "max_steps");
        r.instances = parse_field<int>(f[6], "instances");
        const auto regime = parse_regime(f[7]);
        if (!regime) throw ParseError("results table: bad regime '" + f[7] + "'");
        r.regime = *regime;
        r.loop_detection = parse_field<int>(f[8], "loop_detection") != 0;
        r.successes = parse_field<int>(f[9], "successes");
        r.infeasible = parse_field<int>(f[10], "infeasible");
        r.sr = parse_field<double>(f[11], "sr");
        r.el = parse_field<double>(f[12], "el");
        r.icr = parse_field<double>(f[13], "icr");
        r.mean_collisions = parse_field<double>(f[14], "mean_collisions");
        r.executed_conflicts = parse_field<std::size_t>(f[15], "executed_conflicts");
        reports.push_back(std::move(r));
    }
    return reports;
}

void write_deltas_table(std::ostream& out, const std::vector<ComparisonDelta>& deltas) {
    out << "agents,comparison,d_sr,d_el,d_icr\n";
    for (const ComparisonDelta& d : deltas) {
        out << d.agents << ',' << sanitize(d.comparison) << ',' << format_double(d.d_sr) << ','
            << format_double(d.d_el) << ',' << format_double(d.d_icr) << '\n';
    }
}

std::string render_svg_plot(const std::vector<AggregateReport>& reports, PlotMetric metric) {
    constexpr double kWidth = 640;
    constexpr double kHeight = 420;
    constexpr double kLeft = 70;
    constexpr double kRight = 200;
    constexpr double kTop = 40;
    constexpr double kBottom = 60;
    constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    std::set<int> agent_counts;
    double y_max = metric == PlotMetric::SuccessRate ? 1.0 : 0.0;
    std::map<std::string, std::vector<const AggregateReport*>> series;
    for (const AggregateReport& r : reports) {
        agent_counts.insert(r.agents);
        if (metric == PlotMetric::EpisodeLength) y_max = std::max<double>(y_max, r.max_steps);
        const std::string label = r.name + " " + std::string(to_string(r.regime)) + (r.loop_detection ? "" : " no-loop");
        series[label].push_back(&r);
    }
    if (y_max <= 0.0) y_max = 1.0;
    const std::vector<int> xs(agent_counts.begin(), agent_counts.end());
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto x_of = [&](int agents) {
        const auto pos = static_cast<double>(std::lower_bound(xs.begin(), xs.end(), agents) - xs.begin());
        return xs.size() <= 1 ? kLeft + plot_w / 2 : kLeft + plot_w * pos / static_cast<double>(xs.size() - 1);
    };
    auto y_of = [&](double v) { return kTop + plot_h * (1.0 - v / y_max); };
    auto value = [&](const AggregateReport& r) { return metric == PlotMetric::SuccessRate ? r.sr : r.el; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
        << (metric == PlotMetric::SuccessRate ? "Success rate" : "Episode length") << " vs agents</text>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
        << kTop + plot_h << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
        << "\" stroke=\"black\"/>\n";
    for (int x : xs) {
        svg << "<text x=\"" << x_of(x) << "\" y=\"" << kTop + plot_h + 18
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << x << "</text>\n";
    }
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = y_max * tick / 4.0;
        svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << y_of(v) + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << v << "</text>\n"
            << "<line x1=\"" << kLeft << "\" y1=\"" << y_of(v) << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
            << y_of(v) << "\" stroke=\"#dddddd\"/>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 20
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">agents</text>\n";

    std::size_t color = 0;
    for (auto& [label, points] : series) {
        std::sort(points.begin(), points.end(), [](const auto* a, const auto* b) { return a->agents < b->agents; });
        const char* stroke = kPalette[color % kPalette.size()];
        svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
        for (const AggregateReport* p : points) svg << x_of(p->agents) << ',' << y_of(value(*p)) << ' ';
        svg << "\"/>\n";
        for (const AggregateReport* p : points) {
            svg << "<circle cx=\"" << x_of(p->agents) << "\" cy=\"" << y_of(value(*p)) << "\" r=\"3\" fill=\""
                << stroke << "\"/>\n";
        }
        const double ly = kTop + 16.0 * static_cast<double>(color);
        svg << "<rect x=\"" << kLeft + plot_w + 12 << "\" y=\"" << ly << "\" width=\"10\" height=\"10\" fill=\""
            << stroke << "\"/>\n"
            << "<text x=\"" << kLeft + plot_w + 28 << "\" y=\"" << ly + 9
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
        ++color;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::filesystem::path> emit_results(const std::vector<AggregateReport>& reports,
                                                const std::filesystem::path& out_dir,
                                                const OutputFormats& formats) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    auto write_file = [&](const std::filesystem::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot open " + path.string() + " for writing");
        out << content;
        out.close();
        if (!out) throw Error("failed writing " + path.string());
        written.push_back(path);
    };

    if (formats.table) {
        std::ostringstream table;
        write_results_table(table, reports);
        write_file(out_dir / kResultsTableName, table.str());
    }
    if (formats.plot && !reports.empty()) {
        write_file(out_dir / kSrPlotName, render_svg_plot(reports, PlotMetric::SuccessRate));
        write_file(out_dir / kElPlotName, render_svg_plot(reports, PlotMetric::EpisodeLength));
    }
    return written;
}

}  // namespace pomapf
