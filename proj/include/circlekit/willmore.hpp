#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "circlekit/surface.hpp"

namespace circlekit {

// Discrete Willmore energy of a closed surface: per-edge external circumcircle
// intersection angles, per-vertex local energies and the total
// W = sum_e beta(e) - pi |V| = 1/2 sum_v W(v).
struct EnergyReport {
    double total = 0.0;
    std::vector<double> per_vertex;  // W(v)
    std::vector<double> per_edge;    // beta(e), indexed like surface.edges()
    double consistency_defect() const;
    std::string to_text() const;
};

// External circumcircle angle at edge e of s; requires both incident faces.
double edge_beta(const SimplicialSurface& s, int e);

// W(v) = sum of beta over edges at v minus 2 pi. The star of v must be closed
// (every incident edge interior); the surface itself may have boundary.
double willmore_local(const SimplicialSurface& s, int v);

// Whole-surface energy; the surface must be a closed oriented manifold.
EnergyReport willmore_total(const SimplicialSurface& s);

// Lower bound pi(|V_w| - |V_b|) from a black/white coloring with no
// white-white edges. Throws when the hypothesis fails or colors are missing.
double steinitz_bound(const SimplicialSurface& s);

// Angle defect 2 pi minus the sum of incident face angles.
double angle_defect(const SimplicialSurface& s, int v);

// Sums of polygon external angles and pyramid apex angles for a closed polygon
// and an apex point: returns (sum_beta, sum_alpha).
std::pair<double, double> pyramid_angle_sums(const std::vector<Point3>& polygon, const Point3& apex);

}  // namespace circlekit
