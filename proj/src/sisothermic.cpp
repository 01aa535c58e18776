#include "circlekit/sisothermic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>
#include <numbers>
#include <stdexcept>

namespace circlekit {

double SIsothermicSurface::length_scale() const {
    double s = 0.0;
    for (const auto& [v, sp] : spheres) s = std::max(s, sp.radius);
    for (const auto& [v, c] : circles) s = std::max(s, c.radius);
    return std::max(s, 1e-300);
}

double SIsothermicChecks::max_defect() const {
    return std::max({incidence, orthogonality, sphere_tangency, circle_tangency, kite_cross_ratio,
                     kite_diag_angle});
}

SIsothermicChecks check_s_isothermic(const SIsothermicSurface& s) {
    SIsothermicChecks out;
    const double scale = s.length_scale();
    const QuadGraph& q = s.quad;

    // Contacts lie on the carriers of their white neighbors; circles cross the
    // spheres of their quads orthogonally at the shared contacts.
    for (const auto& [b, p] : s.contacts) {
        for (int ei : q.edges_at(b)) {
            const QuadEdge& e = q.edge(ei);
            const int w = e.a == b ? e.b : e.a;
            if (auto it = s.spheres.find(w); it != s.spheres.end())
                out.incidence = std::max(
                    out.incidence, std::abs(distance(p, it->second.center) - it->second.radius) / scale);
            if (auto it = s.circles.find(w); it != s.circles.end())
                out.incidence = std::max(out.incidence, point_circle_distance(it->second, p) / scale);
        }
    }
    for (int fi = 0; fi < q.face_count(); ++fi) {
        const auto& f = q.face(fi);
        int wc = -1, ws = -1;
        for (int v : f) {
            if (q.colors[v] == VertexColor::white_c) wc = v;
            if (q.colors[v] == VertexColor::white_s) ws = v;
        }
        if (wc < 0 || ws < 0) continue;
        const auto cit = s.circles.find(wc);
        const auto sit = s.spheres.find(ws);
        if (cit == s.circles.end() || sit == s.spheres.end()) continue;
        for (int v : f) {
            if (q.colors[v] != VertexColor::black) continue;
            const auto bit = s.contacts.find(v);
            if (bit == s.contacts.end()) continue;
            // Orthogonal crossing means the circle tangent runs along the
            // sphere radius; measure the angle to that line.
            const Point3 t = circle_tangent(cit->second, bit->second);
            const Point3 radial = normalized(bit->second - sit->second.center);
            const double ang = std::atan2(cross(t, radial).norm(), std::abs(dot(t, radial)));
            out.orthogonality = std::max(out.orthogonality, ang);
        }
    }

    // Tangency of the same-kind white pairs flanking each contact point: the
    // whites around a black vertex alternate kinds, so the pairs two apart in
    // the cyclic white sequence touch there.
    for (const auto& [b, p] : s.contacts) {
        (void)p;
        const QuadStar star = q.vertex_star(b);
        if (star.corners.empty()) continue;
        std::vector<int> whites;
        for (const QuadCorner& c : star.corners) whites.push_back(c.prev);
        if (!star.closed) whites.push_back(star.corners.back().next);
        const int len = static_cast<int>(whites.size());
        for (int i = 0; i < len; ++i) {
            if (!star.closed && i + 2 >= len) break;
            const int w1 = whites[i], w2 = whites[(i + 2) % len];
            if (w1 == w2) continue;
            const auto s1 = s.spheres.find(w1), s2 = s.spheres.find(w2);
            if (s1 != s.spheres.end() && s2 != s.spheres.end()) {
                const double gap = std::abs(distance(s1->second.center, s2->second.center) -
                                            s1->second.radius - s2->second.radius);
                out.sphere_tangency = std::max(out.sphere_tangency, gap / scale);
            }
            const auto c1 = s.circles.find(w1), c2 = s.circles.find(w2);
            if (c1 != s.circles.end() && c2 != s.circles.end()) {
                // Circles in distinct planes touch when their tangent lines at
                // the shared contact coincide.
                const double ang = circle_angle_at(c1->second, c2->second, p);
                out.circle_tangency =
                    std::max(out.circle_tangency, std::min(ang, std::numbers::pi - ang));
            }
        }
    }

    // Central-extension kites are conformal squares with orthogonal diagonals.
    if (q.has_positions()) {
        for (int fi = 0; fi < q.face_count(); ++fi) {
            const auto& f = q.face(fi);
            const Quaternion cr = cross_ratio(q.positions[f[0]], q.positions[f[1]], q.positions[f[2]],
                                              q.positions[f[3]]);
            out.kite_cross_ratio =
                std::max(out.kite_cross_ratio, (cr + Quaternion::identity()).norm());
            const Point3 d1 = q.positions[f[2]] - q.positions[f[0]];
            const Point3 d2 = q.positions[f[3]] - q.positions[f[1]];
            const double c = std::abs(dot(d1, d2)) / (d1.norm() * d2.norm());
            out.kite_diag_angle = std::max(out.kite_diag_angle, std::asin(std::min(1.0, c)));
        }
    }
    return out;
}

int coplanar_distant_kites(const SIsothermicSurface& s, double tol) {
    const QuadGraph& q = s.quad;
    if (!q.has_positions()) throw std::invalid_argument("coplanar_distant_kites: positions required");
    const double scale = s.length_scale();
    auto plane_of = [&](int f, Point3& n, double& off) {
        const auto& fc = q.face(f);
        const Point3 a = q.positions[fc[0]], b = q.positions[fc[1]], c2 = q.positions[fc[2]];
        n = normalized(cross(b - a, c2 - a));
        off = dot(n, a);
    };
    int count = 0;
    for (int f = 0; f < q.face_count(); ++f)
        for (int g = f + 1; g < q.face_count(); ++g) {
            bool share = false;
            for (int u : q.face(f))
                for (int v : q.face(g)) share |= u == v;
            if (share) continue;
            Point3 nf;
            double of;
            plane_of(f, nf, of);
            bool all_in = true;
            for (int v : q.face(g)) all_in &= std::abs(dot(nf, q.positions[v]) - of) <= tol * scale;
            count += all_in;
        }
    return count;
}

IsothermicQuadSurface central_extension(const SIsothermicSurface& s) {
    if (!s.quad.has_positions())
        throw std::invalid_argument("central_extension: quad positions missing");
    return IsothermicQuadSurface::with_labels(s.quad);
}

SIsothermicSurface dual_s_isothermic(const SIsothermicSurface& s, double* closing_defect) {
    const IsothermicQuadSurface ext = central_extension(s);
    const DualSurface dual = dualize(ext);
    if (closing_defect) *closing_defect = dual.max_face_closing_defect;

    SIsothermicSurface out;
    out.quad = dual.dual;

    for (const auto& [v, unused] : s.spheres) {
        (void)unused;
        const Point3& c = out.quad.positions[v];
        double r = 0.0;
        int n = 0;
        for (int ei : out.quad.edges_at(v)) {
            const QuadEdge& e = out.quad.edge(ei);
            const int b = e.a == v ? e.b : e.a;
            r += distance(c, out.quad.positions[b]);
            ++n;
        }
        out.spheres[v] = Sphere3{c, r / std::max(1, n)};
    }
    for (const auto& [v, unused] : s.circles) {
        (void)unused;
        const Point3& c = out.quad.positions[v];
        Circle3 circ;
        circ.center = c;
        double r = 0.0;
        int n = 0;
        Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
        for (int ei : out.quad.edges_at(v)) {
            const QuadEdge& e = out.quad.edge(ei);
            const int b = e.a == v ? e.b : e.a;
            const Point3 d = out.quad.positions[b] - c;
            r += d.norm();
            ++n;
            Eigen::Vector3d ev(d.x, d.y, d.z);
            cov += ev * ev.transpose();
        }
        circ.radius = r / std::max(1, n);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
        const Eigen::Vector3d nv = eig.eigenvectors().col(0);
        circ.normal = normalized(Point3{nv[0], nv[1], nv[2]});
        out.circles[v] = circ;
    }
    for (const auto& [v, unused] : s.contacts) {
        (void)unused;
        out.contacts[v] = out.quad.positions[v];
    }
    return out;
}

}  // namespace circlekit
