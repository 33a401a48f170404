#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pomapf/belief.hpp"
#include "pomapf/environment.hpp"

namespace pomapf {

// Inclusive rectangle in map coordinates.
struct Rect {
    int min_row = 0;
    int min_col = 0;
    int max_row = -1;
    int max_col = -1;

    bool empty() const { return max_row < min_row || max_col < min_col; }
    int rows() const { return empty() ? 0 : max_row - min_row + 1; }
    int cols() const { return empty() ? 0 : max_col - min_col + 1; }
    bool contains(Coord c) const {
        return c.row >= min_row && c.row <= max_row && c.col >= min_col && c.col <= max_col;
    }
    friend bool operator==(const Rect&, const Rect&) = default;
};

Rect bounding_union(const Rect& a, const Rect& b);

// Agent-local record of everything it has observed. Storage grows with the
// observed region rather than being sized to the map.
class GridMemory {
public:
    GridMemory() = default;

    const Rect& bounds() const { return bounds_; }
    // Unknown outside the bounds.
    Knowledge at(Coord c) const;
    std::size_t known_count() const;

    // Grows the bounds to cover the in-bounds part of the observation window and
    // writes the observed values. Cells outside the window are untouched.
    void update(const Observation& obs);

private:
    void grow_to(const Rect& target);

    Rect bounds_;
    std::vector<Knowledge> cells_;
};

}  // namespace pomapf
