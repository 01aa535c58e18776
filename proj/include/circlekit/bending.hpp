#pragma once

#include <string>
#include <vector>

#include "circlekit/surface.hpp"

namespace circlekit {

// cos beta(theta) = (l3^2 cos theta - l1 l2) / (r1 r2), r_i = sqrt(l_i^2 + l3^2):
// circumcircle intersection angle of two triangles hinged at a common edge of
// length 2 l3, circumcenters at distances l1, l2 from the edge midpoint, folded
// by the dihedral external angle theta.
double beta_of_theta(double l1, double l2, double l3, double theta);

enum class BendingCenter { circumcenter, barycenter };

struct BendingReport {
    double total = 0.0;
    std::vector<double> per_edge;      // (l/L) theta^2
    std::vector<int> singular_edges;   // edges where the center distance vanishes
};

// Bending energy sum_e (l/L) theta^2 with l the edge length, theta the external
// dihedral angle and L the distance between the adjacent face centers
// (circumcenters by default, signed along the edge normal; barycenters behind
// the option flag). Throws listing the edges when some L vanishes.
BendingReport bending_energy(const SimplicialSurface& s,
                             BendingCenter center = BendingCenter::circumcenter);

}  // namespace circlekit
