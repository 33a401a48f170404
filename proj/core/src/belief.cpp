#include "pomapf/belief.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pomapf/errors.hpp"

namespace pomapf {

BeliefMap::BeliefMap(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("BeliefMap dimensions must be >= 1");
    cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), Knowledge::Unknown);
}

BeliefMap BeliefMap::from_truth(const GridMap& map) {
    BeliefMap belief(map.width(), map.height());
    for (std::size_t i = 0; i < map.size(); ++i) {
        belief.cells_[i] = map.blocked(map.coord(i)) ? Knowledge::Blocked : Knowledge::Free;
    }
    return belief;
}

std::size_t BeliefMap::unknown_count() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), Knowledge::Unknown));
}

bool BeliefMap::set(Coord c, Knowledge k) {
    Knowledge& cell = cells_[index(c)];
    if (cell == k) return false;
    cell = k;
    ++version_;
    return true;
}

MapDelta extract_delta(const Observation& obs, const BeliefMap& belief, int origin, int step) {
    MapDelta delta;
    delta.origin = origin;
    delta.step = step;
    for (int dr = -obs.radius; dr <= obs.radius; ++dr) {
        for (int dc = -obs.radius; dc <= obs.radius; ++dc) {
            const CellView view = obs.cell(dr, dc);
            if (view == CellView::OutOfBounds) continue;
            const Coord c{obs.center.row + dr, obs.center.col + dc};
            const Knowledge seen = view == CellView::Blocked ? Knowledge::Blocked : Knowledge::Free;
            const Knowledge known = belief.at(c);
            if (known == Knowledge::Unknown) {
                delta.entries.emplace_back(c, seen);
            } else if (known != seen) {
                throw ConflictingEvidence("observation contradicts belief at (" + std::to_string(c.row) + "," +
                                          std::to_string(c.col) + ")");
            }
        }
    }
    return delta;
}

std::vector<Coord> fuse(BeliefMap& belief, const MapDelta& delta) {
    for (const auto& [c, value] : delta.entries) {
        if (!belief.in_bounds(c)) {
            throw std::out_of_range("delta entry (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                                    ") outside belief bounds");
        }
        const Knowledge known = belief.at(c);
        if (known != Knowledge::Unknown && known != value) {
            throw ConflictingEvidence("delta from agent " + std::to_string(delta.origin) +
                                      " contradicts known cell (" + std::to_string(c.row) + "," +
                                      std::to_string(c.col) + ")");
        }
    }
    std::vector<Coord> changed;
    for (const auto& [c, value] : delta.entries) {
        Knowledge& cell = belief.cells_[belief.index(c)];
        if (cell == Knowledge::Unknown) {
            cell = value;
            changed.push_back(c);
        }
    }
    if (!changed.empty()) ++belief.version_;
    return changed;
}

void merge_delta(MapDelta& into, const MapDelta& extra) {
    std::vector<std::pair<Coord, Knowledge>> merged;
    merged.reserve(into.entries.size() + extra.entries.size());
    std::merge(into.entries.begin(), into.entries.end(), extra.entries.begin(), extra.entries.end(),
               std::back_inserter(merged), [](const auto& a, const auto& b) { return a.first < b.first; });
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](const auto& a, const auto& b) { return a.first == b.first; }),
                 merged.end());
    into.entries = std::move(merged);
}

std::vector<Edge> remove_blocked_edges(std::span<const Coord> changed, const BeliefMap& belief) {
    std::vector<Edge> edges;
    for (const Coord c : changed) {
        if (belief.at(c) != Knowledge::Blocked) continue;
        for (Action a : kMoveActions) {
            const Coord n = apply(c, a);
            if (!belief.in_bounds(n)) continue;
            edges.push_back(c < n ? Edge{c, n} : Edge{n, c});
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

void write_belief(std::ostream& out, const BeliefMap& belief) {
    out << belief.width() << ' ' << belief.height() << '\n';
    for (int r = 0; r < belief.height(); ++r) {
        for (int c = 0; c < belief.width(); ++c) {
            switch (belief.at({r, c})) {
                case Knowledge::Unknown: out << '?'; break;
                case Knowledge::Free: out << '.'; break;
                case Knowledge::Blocked: out << '#'; break;
            }
        }
        out << '\n';
    }
}

BeliefMap read_belief(std::istream& in) {
    std::string line;
    while (std::getline(in, line) && line.empty()) {}
    std::istringstream header(line);
    int width = 0;
    int height = 0;
    if (!(header >> width >> height) || width < 1 || height < 1) {
        throw ParseError("belief: bad header '" + line + "'");
    }
    BeliefMap belief(width, height);
    for (int r = 0; r < height; ++r) {
        if (!std::getline(in, line)) throw ParseError("belief: missing row " + std::to_string(r));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (static_cast<int>(line.size()) != width) throw ParseError("belief: row " + std::to_string(r) + " has wrong width");
        for (int c = 0; c < width; ++c) {
            switch (line[static_cast<std::size_t>(c)]) {
                case '?': break;
                case '.': belief.set({r, c}, Knowledge::Free); break;
                case '#': belief.set({r, c}, Knowledge::Blocked); break;
                default: throw ParseError("belief: unexpected character at row " + std::to_string(r));
            }
        }
    }
    return belief;
}

std::string belief_to_string(const BeliefMap& belief) {
    std::ostringstream out;
    write_belief(out, belief);
    return out.str();
}

}  // namespace pomapf
