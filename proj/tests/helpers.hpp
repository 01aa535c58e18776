#pragma once

#include <cmath>
#include <vector>

#include "circlekit/hull.hpp"
#include "circlekit/rng.hpp"
#include "circlekit/surface.hpp"

namespace circlekit::testing {

inline Point3 random_sphere_point(Rng& rng) { return rng.unit_vector(); }

// Closed convex mesh inscribed in the unit sphere.
inline SimplicialSurface random_inscribed_hull(Rng& rng, int npts) {
    std::vector<Point3> pts;
    pts.reserve(npts);
    for (int i = 0; i < npts; ++i) pts.push_back(rng.unit_vector());
    return convex_hull(pts);
}

// Closed mesh with nontrivial energy: hull of points on a random ellipsoid
// with radial jitter.
inline SimplicialSurface random_bumpy_mesh(Rng& rng, int npts) {
    const double ax = rng.uniform(0.6, 1.6), ay = rng.uniform(0.6, 1.6), az = rng.uniform(0.6, 1.6);
    std::vector<Point3> pts;
    for (int i = 0; i < npts; ++i) {
        const Point3 u = rng.unit_vector();
        const double bump = rng.uniform(1.0, 1.15);
        pts.push_back({ax * u.x * bump, ay * u.y * bump, az * u.z * bump});
    }
    return convex_hull(pts);
}

inline double mesh_radius(const SimplicialSurface& s) {
    double r = 0.0;
    for (const Point3& p : s.positions()) r = std::max(r, p.norm());
    return r;
}

inline SimplicialSurface transformed(const SimplicialSurface& s, const MobiusMap& m) {
    std::vector<Point3> pos;
    pos.reserve(s.positions().size());
    for (const Point3& p : s.positions()) pos.push_back(m(p));
    SimplicialSurface out(std::move(pos), std::vector<std::array<int, 3>>(s.faces()));
    out.colors = s.colors;
    return out;
}

}  // namespace circlekit::testing
