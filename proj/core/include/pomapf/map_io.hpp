#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pomapf/grid.hpp"
#include "pomapf/instance.hpp"

namespace pomapf {

// Text grid: first line "W H", then H rows of W characters ('.' free, '#' blocked).
void write_map(std::ostream& out, const GridMap& map);
GridMap read_map(std::istream& in);

// One line per agent: "agent_id sr sc gr gc". Agent ids must be 0..n-1 in any order.
void write_instance(std::ostream& out, const std::vector<Task>& tasks);
std::vector<Task> read_instance(std::istream& in);

std::string map_to_string(const GridMap& map);
GridMap map_from_string(const std::string& text);

}  // namespace pomapf
