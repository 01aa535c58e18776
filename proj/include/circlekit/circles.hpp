#pragma once

#include <utility>

#include "circlekit/quaternion.hpp"

namespace circlekit {

// Oriented circle in 3-space. `orientation` is the traversal sign around `normal`
// (right-hand rule); the carrier geometry ignores it.
struct Circle3 {
    Point3 center;
    double radius = 0.0;
    Point3 normal{0, 0, 1};
    int orientation = +1;
};

struct Sphere3 {
    Point3 center;
    double radius = 0.0;
};

struct Plane3 {
    Point3 normal{0, 0, 1};  // unit
    double offset = 0.0;     // <normal, x> = offset
};

// Circumcircle of a nondegenerate triangle; the normal follows the vertex order,
// orientation is +1. Throws on (near-)collinear input.
Circle3 circumcircle(const Point3& p1, const Point3& p2, const Point3& p3);

// Unit tangent of the oriented circle at a point p on it.
Point3 circle_tangent(const Circle3& c, const Point3& p);

// Unsigned angle in [0,pi] between the tangents of two circles at a common point.
double circle_angle_at(const Circle3& a, const Circle3& b, const Point3& p);

double point_circle_distance(const Circle3& c, const Point3& p);
bool point_on_circle(const Circle3& c, const Point3& p, double tol);

// Inversion of p in the sphere s: image on the ray from the center through p with
// |center,p| * |center,image| = radius^2. Throws when p is the center.
Point3 sphere_invert(const Sphere3& s, const Point3& p);

// Stereographic projection between the unit sphere and the plane z = 0,
// projecting from the north pole (0,0,1). The plane origin maps to (0,0,-1).
Point3 stereographic_to_sphere(double u, double v);
std::pair<double, double> stereographic_to_plane(const Point3& p);  // throws at the north pole

// Lift of the planar circle (center, radius) to the unit sphere.
Circle3 stereographic_lift_circle(double cu, double cv, double radius);

// Plane of a circle on the unit sphere, oriented so offset >= 0.
Plane3 spherical_circle_plane(const Circle3& c);

// Sphere intersecting the unit sphere orthogonally along the given spherical
// circle. Throws when the circle is (numerically) a great circle.
Sphere3 orthogonal_sphere(const Circle3& spherical_circle);

// Second intersection point of two distinct circles known to pass through
// `common`. Handles both coplanar pairs and pairs in transversal planes;
// `residual` receives the distance defect of the result against both carriers.
Point3 circle_second_intersection(const Circle3& a, const Circle3& b, const Point3& common,
                                  double* residual = nullptr);

}  // namespace circlekit
