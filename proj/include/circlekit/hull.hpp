#pragma once

#include <vector>

#include "circlekit/surface.hpp"

namespace circlekit {

// Convex hull of a 3D point set as an outward-oriented triangle mesh.
// Interior points are dropped; input must span 3 dimensions.
SimplicialSurface convex_hull(const std::vector<Point3>& points);

}  // namespace circlekit
