#include "pomapf/map_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pomapf/errors.hpp"

namespace pomapf {

namespace {

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

}  // namespace

void write_map(std::ostream& out, const GridMap& map) {
    out << map.width() << ' ' << map.height() << '\n';
    for (int r = 0; r < map.height(); ++r) {
        for (int c = 0; c < map.width(); ++c) out << (map.blocked({r, c}) ? '#' : '.');
        out << '\n';
    }
}

GridMap read_map(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) throw ParseError("map: missing header line");
    std::istringstream header(line);
    int width = 0;
    int height = 0;
    if (!(header >> width >> height) || width < 1 || height < 1) {
        throw ParseError("map: bad header '" + line + "'");
    }
    GridMap map(width, height);
    for (int r = 0; r < height; ++r) {
        if (!std::getline(in, line)) throw ParseError("map: expected " + std::to_string(height) + " rows, got " + std::to_string(r));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (static_cast<int>(line.size()) != width) {
            throw ParseError("map: row " + std::to_string(r) + " has " + std::to_string(line.size()) +
                             " characters, expected " + std::to_string(width));
        }
        for (int c = 0; c < width; ++c) {
            switch (line[static_cast<std::size_t>(c)]) {
                case '.': break;
                case '#': map.set_blocked({r, c}, true); break;
                default:
                    throw ParseError("map: unexpected character '" + std::string(1, line[static_cast<std::size_t>(c)]) +
                                     "' at row " + std::to_string(r));
            }
        }
    }
    return map;
}

void write_instance(std::ostream& out, const std::vector<Task>& tasks) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& t = tasks[i];
        out << i << ' ' << t.start.row << ' ' << t.start.col << ' ' << t.goal.row << ' ' << t.goal.col << '\n';
    }
}

std::vector<Task> read_instance(std::istream& in) {
    std::vector<std::pair<int, Task>> rows;
    std::string line;
    while (next_content_line(in, line)) {
        std::istringstream fields(line);
        int id = 0;
        Task t;
        if (!(fields >> id >> t.start.row >> t.start.col >> t.goal.row >> t.goal.col)) {
            throw ParseError("instance: bad line '" + line + "'");
        }
        rows.emplace_back(id, t);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != static_cast<int>(i)) {
            throw ParseError("instance: agent ids must be 0.." + std::to_string(rows.size() - 1));
        }
        tasks.push_back(rows[i].second);
    }
    return tasks;
}

std::string map_to_string(const GridMap& map) {
    std::ostringstream out;
    write_map(out, map);
    return out.str();
}

GridMap map_from_string(const std::string& text) {
    std::istringstream in(text);
    return read_map(in);
}

}  // namespace pomapf
