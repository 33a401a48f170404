#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string_view>
#include <vector>

namespace pomapf {

struct Coord {
    int row = 0;
    int col = 0;

    friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

enum class Action : std::uint8_t { Up, Down, Left, Right, Wait };

// Fixed total order used for every tie-break in the library.
inline constexpr std::array<Action, 5> kAllActions{Action::Up, Action::Down, Action::Left,
                                                   Action::Right, Action::Wait};
inline constexpr std::array<Action, 4> kMoveActions{Action::Up, Action::Down, Action::Left,
                                                    Action::Right};

constexpr Coord apply(Coord c, Action a) {
    switch (a) {
        case Action::Up: return {c.row - 1, c.col};
        case Action::Down: return {c.row + 1, c.col};
        case Action::Left: return {c.row, c.col - 1};
        case Action::Right: return {c.row, c.col + 1};
        case Action::Wait: break;
    }
    return c;
}

constexpr int manhattan(Coord a, Coord b) {
    return (a.row > b.row ? a.row - b.row : b.row - a.row) +
           (a.col > b.col ? a.col - b.col : b.col - a.col);
}

constexpr int chebyshev(Coord a, Coord b) {
    const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
    const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
    return dr > dc ? dr : dc;
}

std::string_view to_string(Action a);
std::optional<Action> parse_action(std::string_view s);

// The action that moves `from` onto the 4-neighbor `to`, if they are adjacent or equal.
std::optional<Action> action_between(Coord from, Coord to);

// Ground-truth static occupancy grid. Cells are addressed row-major.
class GridMap {
public:
    GridMap(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return blocked_.size(); }

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

    bool blocked(Coord c) const { return blocked_[index(c)] != 0; }
    // Out-of-bounds cells are not passable.
    bool passable(Coord c) const { return in_bounds(c) && !blocked(c); }
    void set_blocked(Coord c, bool value) { blocked_[index(c)] = value ? 1 : 0; }

    std::size_t blocked_count() const;
    std::size_t free_count() const { return size() - blocked_count(); }

    friend bool operator==(const GridMap&, const GridMap&) = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> blocked_;
};

}  // namespace pomapf
