#pragma once

#include <string>
#include <string_view>

#include "polyproj/instance.hpp"
#include "polyproj/methods.hpp"

namespace polyproj {

/// Static SVG of a 2-D instance: one <path class="ellipse"> per set, the unit
/// circle, and the iterates as <polyline class="iterates">. Geometry is
/// emitted in problem coordinates inside a transformed group, so coordinates
/// parsed back from the file are the iterates themselves.
std::string render_trace_svg(const Instance& instance, const Trace& trace, std::string_view title);

}  // namespace polyproj
