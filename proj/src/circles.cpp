#include "circlekit/circles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace circlekit {

Circle3 circumcircle(const Point3& p1, const Point3& p2, const Point3& p3) {
    if (triangle_degenerate(p1, p2, p3))
        throw std::invalid_argument("circumcircle: degenerate triangle");
    const Point3 a = p2 - p1, b = p3 - p1;
    const Point3 n = cross(a, b);
    const double n2 = n.norm2();
    const Point3 o = (a.norm2() * cross(b, n) + b.norm2() * cross(n, a)) / (2.0 * n2);
    Circle3 c;
    c.center = p1 + o;
    c.radius = o.norm();
    c.normal = n / std::sqrt(n2);
    c.orientation = +1;
    return c;
}

Point3 circle_tangent(const Circle3& c, const Point3& p) {
    Point3 t = cross(c.normal, p - c.center) * static_cast<double>(c.orientation);
    return normalized(t);
}

double circle_angle_at(const Circle3& a, const Circle3& b, const Point3& p) {
    const Point3 ta = circle_tangent(a, p), tb = circle_tangent(b, p);
    return std::atan2(cross(ta, tb).norm(), dot(ta, tb));
}

double point_circle_distance(const Circle3& c, const Point3& p) {
    const Point3 d = p - c.center;
    const double h = dot(d, c.normal);
    const Point3 in_plane = d - h * c.normal;
    const double radial = in_plane.norm() - c.radius;
    return std::sqrt(h * h + radial * radial);
}

bool point_on_circle(const Circle3& c, const Point3& p, double tol) {
    return point_circle_distance(c, p) <= tol;
}

Point3 sphere_invert(const Sphere3& s, const Point3& p) {
    const Point3 d = p - s.center;
    const double d2 = d.norm2();
    if (d2 <= 1e-30 * s.radius * s.radius)
        throw std::invalid_argument("sphere_invert: point at the inversion center");
    return s.center + d * (s.radius * s.radius / d2);
}

Point3 stereographic_to_sphere(double u, double v) {
    const double s = u * u + v * v + 1.0;
    return {2.0 * u / s, 2.0 * v / s, (u * u + v * v - 1.0) / s};
}

std::pair<double, double> stereographic_to_plane(const Point3& p) {
    if (1.0 - p.z <= 1e-14)
        throw std::invalid_argument("stereographic_to_plane: north pole has no image");
    return {p.x / (1.0 - p.z), p.y / (1.0 - p.z)};
}

Circle3 stereographic_lift_circle(double cu, double cv, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("stereographic_lift_circle: radius must be positive");
    // Substituting the chart into |w - c| = r gives the section plane
    // <(2c, |c|^2 - r^2 - 1), x> = 1 + |c|^2 - r^2 directly.
    const double c2 = cu * cu + cv * cv;
    Point3 n{2 * cu, 2 * cv, c2 - radius * radius - 1};
    double off = 1 + c2 - radius * radius;
    const double len = n.norm();
    n = n / len;
    off /= len;
    // Counterclockwise planar traversal lifts to the orientation that keeps
    // the projection pole on the negative side of the circle plane.
    if (n.z > off) {
        n = -n;
        off = -off;
    }
    if (std::abs(off) >= 1.0)
        throw std::runtime_error("stereographic_lift_circle: circle does not meet the sphere");
    Circle3 c;
    c.normal = n;
    c.center = off * n;
    c.radius = std::sqrt(1.0 - off * off);
    c.orientation = +1;
    return c;
}

Plane3 spherical_circle_plane(const Circle3& c) {
    Plane3 pl;
    pl.normal = c.normal;
    pl.offset = dot(c.normal, c.center);
    if (pl.offset < 0.0) {
        pl.normal = -pl.normal;
        pl.offset = -pl.offset;
    }
    return pl;
}

Sphere3 orthogonal_sphere(const Circle3& spherical_circle) {
    const Plane3 pl = spherical_circle_plane(spherical_circle);
    if (pl.offset < 1e-12)
        throw std::runtime_error("orthogonal_sphere: great circle bounds a hemisphere, no orthogonal sphere");
    Sphere3 s;
    s.center = pl.normal / pl.offset;
    s.radius = std::sqrt(1.0 - pl.offset * pl.offset) / pl.offset;
    return s;
}

namespace {

Point3 reflect_across_line(const Point3& p, const Point3& base, const Point3& dir_unit) {
    const Point3 d = p - base;
    return base + 2.0 * dot(d, dir_unit) * dir_unit - d;
}

}  // namespace

Point3 circle_second_intersection(const Circle3& a, const Circle3& b, const Point3& common,
                                  double* residual) {
    const Point3 nxn = cross(a.normal, b.normal);
    const double scale = std::max(a.radius, b.radius);
    Point3 p;
    if (nxn.norm() > 1e-8) {
        // Transversal planes: both intersections lie on the plane-plane line.
        const Point3 dir = normalized(nxn);
        const double ta = dot(a.center - common, dir);
        p = common + 2.0 * ta * dir;
        const double tb = dot(b.center - common, dir);
        const Point3 pb = common + 2.0 * tb * dir;
        if (distance(p, pb) > 1e-6 * scale) {
            // Circles not concurrent in a second point.
            if (residual) {
                *residual = std::max(point_circle_distance(a, pb), point_circle_distance(b, p));
                return (p + pb) * 0.5;
            }
            throw std::runtime_error("circle_second_intersection: circles are not concurrent");
        }
        p = (p + pb) * 0.5;
    } else {
        // Coplanar circles through a common point: the intersections are mirror
        // images across the line of centers.
        const Point3 axis = b.center - a.center;
        if (axis.norm() < 1e-12 * scale)
            throw std::runtime_error("circle_second_intersection: concentric circles");
        p = reflect_across_line(common, a.center, normalized(axis));
    }
    if (residual) *residual = std::max(point_circle_distance(a, p), point_circle_distance(b, p));
    return p;
}

}  // namespace circlekit
