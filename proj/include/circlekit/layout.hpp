#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "circlekit/pattern.hpp"

namespace circlekit {

struct Point2 {
    double x = 0.0, y = 0.0;
    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
};

struct LayoutSeed {
    int node = -1;      // default: first placeable node
    int neighbor = -1;  // default: its first rotation entry
    double angle = 0.0; // direction from node to neighbor
};

// Planar realization of a solved pattern. Circles are placed by breadth-first
// propagation: neighbor directions around a placed circle follow from the
// rotation order and the chord half-angles arctan(r_k / r_j).
struct PatternLayout {
    std::vector<Point2> centers;
    std::vector<double> radii;
    std::vector<char> placed;

    // Tangency corners keyed by the sorted triple of mutually touching /
    // intersecting circles meeting there (node; consecutive neighbor pair).
    std::map<std::array<int, 3>, Point2> corners;

    // Per adjacency (aligned with the problem list): the two intersection points.
    std::vector<std::array<Point2, 2>> intersections;

    double max_orthogonality_defect = 0.0;  // | |cj-ck|^2 - rj^2 - rk^2 | / (rj^2 + rk^2)
    double max_tangency_defect = 0.0;       // corner pairs: | |ca-cb| - ra - rb | / (ra + rb)
    double max_position_defect = 0.0;       // re-placement disagreement, relative to radius scale
    double max_corner_defect = 0.0;         // corner seen from different host circles
};

// rho must cover every node (including excluded ones, whose radii still occupy
// angular room in the rotations). Excluded nodes are never placed. Throws when
// the solution is too inconsistent to propagate or rotations are missing.
PatternLayout layout(const PatternProblem& p, const std::vector<double>& rho,
                     const std::vector<int>& exclude = {}, const LayoutSeed& seed = {});

// SVG rendering of the placed circles and their intersection points.
std::string layout_svg(const PatternLayout& l);
std::string write_layout_text(const PatternLayout& l);

}  // namespace circlekit
