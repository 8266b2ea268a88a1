#pragma once

#include <span>
#include <string>

#include "pierce/instance_io.hpp"

namespace pierce {

// Curve as a circle, one <path> per body, one marker circle (class
// "transversal") per transversal point, and the heavy point if given.
std::string render_svg(const Instance& inst, std::span<const Point2> transversal = {},
                       const Point2* heavy = nullptr);

}  // namespace pierce
