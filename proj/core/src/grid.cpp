#include "pomapf/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace pomapf {

std::string_view to_string(Action a) {
    switch (a) {
        case Action::Up: return "up";
        case Action::Down: return "down";
        case Action::Left: return "left";
        case Action::Right: return "right";
        case Action::Wait: return "wait";
    }
    return "wait";
}

std::optional<Action> parse_action(std::string_view s) {
    for (Action a : kAllActions) {
        if (to_string(a) == s) return a;
    }
    return std::nullopt;
}

std::optional<Action> action_between(Coord from, Coord to) {
    for (Action a : kAllActions) {
        if (apply(from, a) == to) return a;
    }
    return std::nullopt;
}

GridMap::GridMap(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("GridMap dimensions must be >= 1");
    blocked_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

std::size_t GridMap::blocked_count() const {
    return static_cast<std::size_t>(std::count(blocked_.begin(), blocked_.end(), std::uint8_t{1}));
}

}  // namespace pomapf
