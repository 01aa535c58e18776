#include "circlekit/bending.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "circlekit/accum.hpp"
#include "circlekit/circles.hpp"

namespace circlekit {

double beta_of_theta(double l1, double l2, double l3, double theta) {
    if (!(l1 > 0) || !(l2 > 0) || !(l3 > 0))
        throw std::invalid_argument("beta_of_theta: lengths must be positive");
    const double r1 = std::hypot(l1, l3), r2 = std::hypot(l2, l3);
    const double c = (l3 * l3 * std::cos(theta) - l1 * l2) / (r1 * r2);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

namespace {

// Signed distance from the edge midpoint to the face center, measured towards
// the apex side within the face plane (negative when an obtuse triangle pushes
// the circumcenter across the edge).
double signed_center_offset(const Point3& a, const Point3& b, const Point3& apex, BendingCenter which) {
    const Point3 mid = (a + b) * 0.5;
    Point3 center;
    if (which == BendingCenter::circumcenter)
        center = circumcircle(a, b, apex).center;
    else
        center = (a + b + apex) / 3.0;
    const Point3 edge_dir = normalized(b - a);
    Point3 toward_apex = apex - mid;
    toward_apex -= dot(toward_apex, edge_dir) * edge_dir;
    return dot(center - mid, normalized(toward_apex));
}

}  // namespace

BendingReport bending_energy(const SimplicialSurface& s, BendingCenter which) {
    if (!s.has_positions()) throw std::invalid_argument("bending_energy: surface carries no positions");
    BendingReport r;
    r.per_edge.assign(s.edge_count(), 0.0);

    double mean_edge = 0.0;
    for (const SurfaceEdge& e : s.edges()) mean_edge += distance(s.position(e.a), s.position(e.b));
    mean_edge /= std::max(1, s.edge_count());

    KahanSum total;
    for (int ei = 0; ei < s.edge_count(); ++ei) {
        const SurfaceEdge& e = s.edge(ei);
        if (e.boundary()) continue;
        const Point3& a = s.position(e.a);
        const Point3& b = s.position(e.b);
        const Point3 apex_l = s.position(s.opposite_vertex(e.face_left, e.a, e.b));
        const Point3 apex_r = s.position(s.opposite_vertex(e.face_right, e.a, e.b));
        const Point3 nl = cross(b - a, apex_l - a);
        const Point3 nr = cross(a - b, apex_r - b);
        const double ctheta = dot(nl, nr) / (nl.norm() * nr.norm());
        const double theta = std::acos(std::clamp(ctheta, -1.0, 1.0));
        const double l1 = signed_center_offset(a, b, apex_l, which);
        const double l2 = signed_center_offset(a, b, apex_r, which);
        const double big_l = std::abs(l1 + l2);
        if (big_l < 1e-12 * mean_edge) {
            r.singular_edges.push_back(ei);
            continue;
        }
        r.per_edge[ei] = distance(a, b) / big_l * theta * theta;
        total.add(r.per_edge[ei]);
    }
    r.total = total.value();
    if (!r.singular_edges.empty()) {
        std::ostringstream os;
        os << "bending_energy: coincident face centers at edges";
        for (int e : r.singular_edges) os << " " << e;
        throw std::runtime_error(os.str());
    }
    return r;
}

}  // namespace circlekit
