#include "circlekit/miquel.hpp"

#include <algorithm>
#include <stdexcept>

namespace circlekit {

double concyclicity_defect(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    const Circle3 circ = circumcircle(a, b, c);
    return point_circle_distance(circ, d);
}

MiquelResult miquel_point(const MiquelCube& q, double face_tol) {
    const double scale = std::max({distance(q.v000, q.v100), distance(q.v000, q.v010),
                                   distance(q.v000, q.v001), 1e-300});
    const double tol = face_tol * scale;
    if (concyclicity_defect(q.v000, q.v100, q.v110, q.v010) > tol ||
        concyclicity_defect(q.v000, q.v010, q.v011, q.v001) > tol ||
        concyclicity_defect(q.v000, q.v001, q.v101, q.v100) > tol)
        throw std::invalid_argument("miquel_point: a face through v000 is not circular");

    const Circle3 ca = circumcircle(q.v100, q.v110, q.v101);
    const Circle3 cb = circumcircle(q.v010, q.v110, q.v011);
    const Circle3 cc = circumcircle(q.v001, q.v011, q.v101);

    double r_ab = 0.0;
    const Point3 p = circle_second_intersection(ca, cb, q.v110, &r_ab);
    const double r_c = point_circle_distance(cc, p);
    MiquelResult res;
    res.point = p;
    res.concurrency_residual = std::max(r_ab, r_c);
    if (res.concurrency_residual > 1e-6 * scale)
        throw std::runtime_error("miquel_point: completing circles are not concurrent");
    return res;
}

}  // namespace circlekit
