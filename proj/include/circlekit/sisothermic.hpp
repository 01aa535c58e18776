#pragma once

#include <map>

#include "circlekit/circles.hpp"
#include "circlekit/isothermic.hpp"
#include "circlekit/quadgraph.hpp"

namespace circlekit {

// Discrete S-isothermic surface: spheres at ws vertices, circles at wc
// vertices, contact points at black vertices. Neighboring spheres touch,
// neighboring circles touch, circles cross their quads' spheres orthogonally,
// all at the contact points. Quad positions hold the central extension
// (sphere centers, circle centers, contact points).
struct SIsothermicSurface {
    QuadGraph quad;  // S-labeled colors; positions = central extension
    std::map<int, Sphere3> spheres;
    std::map<int, Circle3> circles;
    std::map<int, Point3> contacts;

    double length_scale() const;
};

struct SIsothermicChecks {
    double incidence = 0.0;       // contacts on their white carriers (relative)
    double orthogonality = 0.0;   // circle/sphere crossing angle defect, radians
    double sphere_tangency = 0.0; // touching spheres (relative)
    double circle_tangency = 0.0; // touching circles (relative)
    double kite_cross_ratio = 0.0;    // | q + 1 | over central extension kites
    double kite_diag_angle = 0.0;     // kite diagonal orthogonality defect, radians
    double max_defect() const;
};

SIsothermicChecks check_s_isothermic(const SIsothermicSurface& s);

// Locality diagnostic: number of kite pairs without a common vertex that are
// nevertheless coplanar (flat packings violate it, honest surfaces do not).
int coplanar_distant_kites(const SIsothermicSurface& s, double tol = 1e-9);

// Central extension as a labeled isothermic quad surface (kite mesh).
IsothermicQuadSurface central_extension(const SIsothermicSurface& s);

// Dual S-isothermic surface via dualization of the central extension;
// closing_defect receives the max per-kite defect of the dual form.
SIsothermicSurface dual_s_isothermic(const SIsothermicSurface& s, double* closing_defect = nullptr);

}  // namespace circlekit
