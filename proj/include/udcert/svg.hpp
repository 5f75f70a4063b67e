#pragma once

#include <map>
#include <string>

#include "udcert/udgraph.hpp"

namespace udcert {

/// Schematic SVG 1.1 drawing. Axes are the first two coordinates; a third
/// coordinate, when present, shades uncolored vertices from light to dark.
/// `coloring` (may be empty) selects fill colors from a fixed palette.
std::string render_svg(const UnitDistanceGraph& g, const Coloring& coloring = {},
                       const std::map<std::string, std::string>& metadata = {});

}  // namespace udcert
