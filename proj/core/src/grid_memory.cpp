#include "pomapf/grid_memory.hpp"

#include <algorithm>

namespace pomapf {

Rect bounding_union(const Rect& a, const Rect& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {std::min(a.min_row, b.min_row), std::min(a.min_col, b.min_col),
            std::max(a.max_row, b.max_row), std::max(a.max_col, b.max_col)};
}

Knowledge GridMemory::at(Coord c) const {
    if (!bounds_.contains(c)) return Knowledge::Unknown;
    const auto r = static_cast<std::size_t>(c.row - bounds_.min_row);
    const auto col = static_cast<std::size_t>(c.col - bounds_.min_col);
    return cells_[r * static_cast<std::size_t>(bounds_.cols()) + col];
}

std::size_t GridMemory::known_count() const {
    return static_cast<std::size_t>(
        std::count_if(cells_.begin(), cells_.end(), [](Knowledge k) { return k != Knowledge::Unknown; }));
}

void GridMemory::grow_to(const Rect& target) {
    if (target == bounds_) return;
    std::vector<Knowledge> grown(static_cast<std::size_t>(target.rows()) * static_cast<std::size_t>(target.cols()),
                                 Knowledge::Unknown);
    for (int r = bounds_.min_row; r <= bounds_.max_row; ++r) {
        for (int c = bounds_.min_col; c <= bounds_.max_col; ++c) {
            const auto dst = static_cast<std::size_t>(r - target.min_row) * static_cast<std::size_t>(target.cols()) +
                             static_cast<std::size_t>(c - target.min_col);
            grown[dst] = at({r, c});
        }
    }
    bounds_ = target;
    cells_ = std::move(grown);
}

void GridMemory::update(const Observation& obs) {
    Rect window;
    for (int dr = -obs.radius; dr <= obs.radius; ++dr) {
        for (int dc = -obs.radius; dc <= obs.radius; ++dc) {
            if (obs.cell(dr, dc) == CellView::OutOfBounds) continue;
            const Coord c{obs.center.row + dr, obs.center.col + dc};
            window = bounding_union(window, Rect{c.row, c.col, c.row, c.col});
        }
    }
    if (window.empty()) return;
    grow_to(bounding_union(bounds_, window));
    for (int dr = -obs.radius; dr <= obs.radius; ++dr) {
        for (int dc = -obs.radius; dc <= obs.radius; ++dc) {
            const CellView view = obs.cell(dr, dc);
            if (view == CellView::OutOfBounds) continue;
            const Coord c{obs.center.row + dr, obs.center.col + dc};
            const auto idx = static_cast<std::size_t>(c.row - bounds_.min_row) * static_cast<std::size_t>(bounds_.cols()) +
                             static_cast<std::size_t>(c.col - bounds_.min_col);
            cells_[idx] = view == CellView::Blocked ? Knowledge::Blocked : Knowledge::Free;
        }
    }
}

}  // namespace pomapf
