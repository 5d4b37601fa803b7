#pragma once

#include <string>
#include <vector>

#include "rpr/model.hpp"
#include "rpr/solution.hpp"

namespace rpr {

/// Renders the base triangle and the platform at every solution, one
/// sub-figure (SVG group) per assembly mode, legs drawn as segments A_iB_i.
/// With no solutions only the base triangle is drawn. The shared viewport is
/// auto-scaled to the bounding box of all anchor and platform points with a
/// 10% margin.
std::string render_svg(const Geometry& g, const std::vector<FkSolution>& solutions);

}  // namespace rpr
