#include "circlekit/koebe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace circlekit {

SphericalCirclePattern lift_pattern_to_sphere(const PatternProblem& p, const PatternLayout& l) {
    SphericalCirclePattern out;
    const int n = static_cast<int>(l.centers.size());
    out.circles.resize(n);
    out.has_circle.assign(n, 0);
    for (int j = 0; j < n; ++j) {
        if (!l.placed[j]) continue;
        const double extent = l.centers[j].norm() + l.radii[j];
        if (extent > 1e8 || l.radii[j] > 1e8)
            throw std::runtime_error(
                "lift_pattern_to_sphere: circle too close to the projection pole; recenter or rescale the layout");
        out.circles[j] = stereographic_lift_circle(l.centers[j].x, l.centers[j].y, l.radii[j]);
        out.has_circle[j] = 1;
    }
    for (const auto& [key, pos] : l.corners) out.corner_points[key] = stereographic_to_sphere(pos.x, pos.y);

    for (int ai = 0; ai < p.adjacency_count(); ++ai) {
        const auto [j, k] = p.adjacencies()[ai];
        if (!out.has_circle[j] || !out.has_circle[k]) continue;
        // Planar intersection of the two circles (general two-circle formula;
        // adjacencies of an excluded-and-restored circle have no cached point).
        const Point2 u{l.centers[k].x - l.centers[j].x, l.centers[k].y - l.centers[j].y};
        const double d = u.norm();
        if (d < 1e-300) continue;
        const double a = (d * d + l.radii[j] * l.radii[j] - l.radii[k] * l.radii[k]) / (2 * d);
        const double h2 = l.radii[j] * l.radii[j] - a * a;
        if (h2 <= 0) continue;
        const Point2 ud = u * (1.0 / d), perp{-ud.y, ud.x};
        const Point2 w = l.centers[j] + ud * a + perp * std::sqrt(h2);
        const Point3 x = stereographic_to_sphere(w.x, w.y);
        const double ang = circle_angle_at(out.circles[j], out.circles[k], x);
        out.max_angle_defect =
            std::max(out.max_angle_defect, std::abs(ang - 0.5 * std::numbers::pi));
    }
    return out;
}

namespace {

Point3 plane_fit_normal(const std::vector<Point3>& pts, Point3* centroid_out, double* max_defect) {
    Point3 centroid{0, 0, 0};
    for (const Point3& p : pts) centroid += p;
    centroid = centroid / static_cast<double>(pts.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Point3& p : pts) {
        const Point3 d = p - centroid;
        Eigen::Vector3d e(d.x, d.y, d.z);
        cov += e * e.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    const Eigen::Vector3d n = eig.eigenvectors().col(0);
    const Point3 normal = normalized(Point3{n[0], n[1], n[2]});
    if (centroid_out) *centroid_out = centroid;
    if (max_defect) {
        *max_defect = 0.0;
        for (const Point3& p : pts) *max_defect = std::max(*max_defect, std::abs(dot(p - centroid, normal)));
    }
    return normal;
}

double segment_distance_to_origin(const Point3& a, const Point3& b) {
    const Point3 d = b - a;
    const double t = std::clamp(-dot(a, d) / d.norm2(), 0.0, 1.0);
    return (a + t * d).norm();
}

}  // namespace

KoebeResult koebe_polyhedron(const KoebeInput& in) {
    const QuadGraph& q = in.quad;
    if (q.colors.size() != static_cast<size_t>(q.vertex_count()))
        throw std::invalid_argument("koebe_polyhedron: colors required");

    KoebeResult out;
    out.surface.quad = q;
    out.surface.quad.positions.assign(q.vertex_count(), Point3{});
    out.surface.contacts = in.black_points;

    std::vector<int> vertex_of(q.vertex_count(), -1);
    for (int v = 0; v < q.vertex_count(); ++v) {
        if (q.colors[v] == VertexColor::white_s) {
            const auto it = in.circles.find(v);
            if (it == in.circles.end()) throw std::invalid_argument("koebe_polyhedron: missing ws circle");
            const Sphere3 s = orthogonal_sphere(it->second);
            out.surface.spheres[v] = s;
            out.surface.quad.positions[v] = s.center;
            vertex_of[v] = static_cast<int>(out.poly.vertices.size());
            out.poly.vertices.push_back(s.center);
            out.poly.vertex_ws.push_back(v);
        } else if (q.colors[v] == VertexColor::white_c) {
            const auto it = in.circles.find(v);
            if (it == in.circles.end()) throw std::invalid_argument("koebe_polyhedron: missing wc circle");
            out.surface.circles[v] = it->second;
            out.surface.quad.positions[v] = it->second.center;
        } else {
            const auto it = in.black_points.find(v);
            if (it == in.black_points.end())
                throw std::invalid_argument("koebe_polyhedron: missing black contact point");
            out.surface.quad.positions[v] = it->second;
        }
    }

    // Faces: the cycle of sphere centers around each interior wc vertex; the wc
    // circle is inscribed in the face.
    for (int v = 0; v < q.vertex_count(); ++v) {
        if (q.colors[v] != VertexColor::white_c) continue;
        const QuadStar star = q.vertex_star(v);
        if (!star.closed || star.corners.size() < 3) continue;
        std::vector<int> poly_face;
        std::vector<Point3> pts;
        for (const QuadCorner& c : star.corners) {
            if (q.colors[c.diag] != VertexColor::white_s || vertex_of[c.diag] < 0)
                throw std::runtime_error("koebe_polyhedron: wc star not alternating with ws diagonals");
            poly_face.push_back(vertex_of[c.diag]);
            pts.push_back(out.poly.vertices[vertex_of[c.diag]]);
        }
        double extent = 0.0;
        Point3 centroid;
        double defect = 0.0;
        const Point3 normal = plane_fit_normal(pts, &centroid, &defect);
        for (const Point3& p : pts) extent = std::max(extent, (p - centroid).norm());
        out.poly.max_face_planarity = std::max(out.poly.max_face_planarity, defect / std::max(extent, 1e-300));
        // Inscribed circle against the fitted plane.
        const Circle3& c = out.surface.circles.at(v);
        const double inscribed = std::abs(dot(c.center - centroid, normal)) +
                                 c.radius * std::acos(std::min(1.0, std::abs(dot(normal, c.normal))));
        out.poly.max_inscribed_defect =
            std::max(out.poly.max_inscribed_defect, inscribed / std::max(extent, 1e-300));
        out.poly.faces.push_back(std::move(poly_face));
        out.poly.face_wc.push_back(v);
    }

    // Edges: per black vertex, the two touching spheres; tangent to the unit
    // sphere at the contact point.
    for (const auto& [b, p] : in.black_points) {
        if (q.colors[b] != VertexColor::black) continue;
        const QuadStar star = q.vertex_star(b);
        std::vector<int> ws;
        for (const QuadCorner& c : star.corners)
            if (q.colors[c.prev] == VertexColor::white_s) ws.push_back(c.prev);
        if (!star.closed && !star.corners.empty() &&
            q.colors[star.corners.back().next] == VertexColor::white_s)
            ws.push_back(star.corners.back().next);
        std::sort(ws.begin(), ws.end());
        ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
        if (ws.size() != 2) continue;  // boundary contact
        KoebePolyhedron::Edge e;
        e.v0 = vertex_of[ws[0]];
        e.v1 = vertex_of[ws[1]];
        e.black = b;
        e.tangency = p;
        out.poly.max_edge_tangency_defect =
            std::max(out.poly.max_edge_tangency_defect,
                     std::abs(segment_distance_to_origin(out.poly.vertices[e.v0], out.poly.vertices[e.v1]) - 1.0));
        out.poly.edges.push_back(e);
    }
    return out;
}

SimplicialSurface inscribed_refinement(const KoebePolyhedron& kp) {
    // Vertices: radially projected polyhedron vertices, then the edge tangency
    // points (already on the sphere).
    std::vector<Point3> pos;
    for (const Point3& v : kp.vertices) pos.push_back(normalized(v));
    std::map<std::pair<int, int>, int> tang_index;
    for (const auto& e : kp.edges) {
        const auto key = std::minmax(e.v0, e.v1);
        tang_index[key] = static_cast<int>(pos.size());
        pos.push_back(normalized(e.tangency));
    }
    std::vector<std::array<int, 3>> faces;
    for (const auto& f : kp.faces) {
        const int k = static_cast<int>(f.size());
        std::vector<int> inner;
        for (int i = 0; i < k; ++i) {
            const auto key = std::minmax(f[i], f[(i + 1) % k]);
            const auto it = tang_index.find(key);
            if (it == tang_index.end())
                throw std::invalid_argument("inscribed_refinement: face edge without tangency point");
            inner.push_back(it->second);
        }
        // Corner triangles (v_i between the tangency points of its two edges).
        for (int i = 0; i < k; ++i) faces.push_back({inner[(i + k - 1) % k], f[i], inner[i]});
        // Fan of the inner polygon.
        for (int i = 1; i + 1 < k; ++i) faces.push_back({inner[0], inner[i], inner[i + 1]});
    }
    return SimplicialSurface(std::move(pos), std::move(faces));
}

}  // namespace circlekit
