#include "circlekit/quaternion.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace circlekit {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << "(" << q.w << " + " << q.x << "i + " << q.y << "j + " << q.z << "k)";
}

std::ostream& operator<<(std::ostream& os, const Point3& p) {
    return os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
}

Quaternion cross_ratio(const Point3& x1, const Point3& x2, const Point3& x3, const Point3& x4) {
    const Quaternion a = (x1 - x2).as_quaternion();
    const Quaternion b = (x2 - x3).as_quaternion();
    const Quaternion c = (x3 - x4).as_quaternion();
    const Quaternion d = (x4 - x1).as_quaternion();
    const double scale = std::max({a.norm2(), b.norm2(), c.norm2(), d.norm2()});
    if (b.norm2() <= 1e-28 * scale || d.norm2() <= 1e-28 * scale || a.norm2() <= 1e-28 * scale ||
        c.norm2() <= 1e-28 * scale || scale == 0.0)
        throw std::invalid_argument("cross_ratio: consecutive points coincide");
    return a * inverse(b) * c * inverse(d);
}

bool triangle_degenerate(const Point3& a, const Point3& b, const Point3& c) {
    const Point3 u = b - a, v = c - a, w = c - b;
    const double twice_area = cross(u, v).norm();
    const double max_edge2 = std::max({u.norm2(), v.norm2(), w.norm2()});
    return twice_area < 1e-12 * max_edge2;
}

double external_angle(const Point3& shared1, const Point3& shared2, const Point3& apex_left,
                      const Point3& apex_right) {
    if (triangle_degenerate(shared1, shared2, apex_left) || triangle_degenerate(shared1, shared2, apex_right))
        throw std::invalid_argument("external_angle: degenerate triangle");
    // Edges of the cyclic quadrilateral (shared1, apex_left, shared2, apex_right).
    // cos(beta) = -Re(abcd)/|abcd| is the scalar-product formula; evaluating
    // beta = atan2(|Im(abcd)|, -Re(abcd)) is the same angle but stays fully
    // conditioned where the circles (anti-)coincide and |cos| -> 1.
    const Quaternion a = (shared1 - apex_left).as_quaternion();
    const Quaternion b = (apex_left - shared2).as_quaternion();
    const Quaternion c = (shared2 - apex_right).as_quaternion();
    const Quaternion d = (apex_right - shared1).as_quaternion();
    const Quaternion q = a * b * c * d;
    return std::atan2(imag_part(q).norm(), -q.w);
}

}  // namespace circlekit
