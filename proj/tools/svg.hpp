#pragma once

#include <string>
#include <vector>

#include "capsys/geometry.hpp"
#include "capsys/loops.hpp"

namespace capsys {

// One panel per symplectic plane (x_j, y_j): the body's shadow outline (built
// from support evaluations, so it works for every body kind) plus loop traces.
std::string loops_svg(const Body& body, const std::vector<const TimeLoop*>& loops,
                      const std::vector<std::string>& labels);

void write_loops_svg(const std::string& path, const Body& body,
                     const std::vector<const TimeLoop*>& loops,
                     const std::vector<std::string>& labels);

}  // namespace capsys
