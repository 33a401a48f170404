#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pomapf/environment.hpp"
#include "pomapf/grid.hpp"

namespace pomapf {

enum class Knowledge : std::uint8_t { Unknown, Free, Blocked };

struct MapDelta;

// Tri-state knowledge of the world held by one agent. Knowledge is monotone:
// cells only move from Unknown to Free or Blocked.
class BeliefMap {
public:
    BeliefMap(int width, int height);
    static BeliefMap from_truth(const GridMap& map);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return cells_.size(); }
    std::uint64_t version() const { return version_; }

    bool in_bounds(Coord c) const {
        return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
    }
    std::size_t index(Coord c) const {
        return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(c.col);
    }
    Coord coord(std::size_t idx) const {
        return {static_cast<int>(idx / static_cast<std::size_t>(width_)),
                static_cast<int>(idx % static_cast<std::size_t>(width_))};
    }

    Knowledge at(Coord c) const { return cells_[index(c)]; }
    // Unknown cells are traversable for planning purposes.
    bool traversable(Coord c) const { return in_bounds(c) && at(c) != Knowledge::Blocked; }
    std::size_t unknown_count() const;

    // Writes a value and bumps the version if it changed. Prefer fuse().
    bool set(Coord c, Knowledge k);

    // Compares geometry and cell contents; the version counter is bookkeeping only.
    friend bool operator==(const BeliefMap& a, const BeliefMap& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.cells_ == b.cells_;
    }

private:
    friend std::vector<Coord> fuse(BeliefMap& belief, const MapDelta& delta);

    int width_;
    int height_;
    std::vector<Knowledge> cells_;
    std::uint64_t version_ = 0;
};

struct MapDelta {
    int origin = -1;
    int step = 0;
    // Row-major sorted, one value (Free or Blocked) per coordinate.
    std::vector<std::pair<Coord, Knowledge>> entries;

    bool empty() const { return entries.empty(); }
    std::size_t size() const { return entries.size(); }
};

// Observed in-bounds cells that are still Unknown in `belief`.
MapDelta extract_delta(const Observation& obs, const BeliefMap& belief, int origin = -1, int step = 0);

// Writes every entry; returns the cells that changed. All-or-nothing: throws
// ConflictingEvidence before writing anything if an entry contradicts a known cell.
std::vector<Coord> fuse(BeliefMap& belief, const MapDelta& delta);

// Merges `extra` into `into`, keeping row-major order and first-seen values.
void merge_delta(MapDelta& into, const MapDelta& extra);

struct Edge {
    Coord a;  // row-major smaller endpoint
    Coord b;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// All 4-neighbor edges incident to cells of `changed` that are Blocked in `belief`.
std::vector<Edge> remove_blocked_edges(std::span<const Coord> changed, const BeliefMap& belief);

// Same text grid as GridMap with '?' for Unknown.
void write_belief(std::ostream& out, const BeliefMap& belief);
BeliefMap read_belief(std::istream& in);
std::string belief_to_string(const BeliefMap& belief);

}  // namespace pomapf
