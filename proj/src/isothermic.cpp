#include "circlekit/isothermic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "circlekit/circles.hpp"

namespace circlekit {

IsothermicQuadSurface IsothermicQuadSurface::with_labels(QuadGraph q) {
    IsothermicQuadSurface f;
    f.edge_signs = q.edge_sign_labels();
    f.quad = std::move(q);
    return f;
}

std::vector<double> face_circularity(const QuadGraph& q) {
    if (!q.has_positions()) throw std::invalid_argument("face_circularity: positions required");
    std::vector<double> out(q.face_count(), 0.0);
    for (int fi = 0; fi < q.face_count(); ++fi) {
        const auto& f = q.face(fi);
        const Circle3 c = circumcircle(q.positions[f[0]], q.positions[f[1]], q.positions[f[2]]);
        out[fi] = point_circle_distance(c, q.positions[f[3]]) / c.radius;
    }
    return out;
}

std::vector<IsothermicResidual> is_discrete_isothermic(const QuadGraph& q, double circular_tol) {
    if (!q.has_positions()) throw std::invalid_argument("is_discrete_isothermic: positions required");
    const auto circ = face_circularity(q);
    for (int fi = 0; fi < q.face_count(); ++fi)
        if (circ[fi] > circular_tol)
            throw std::invalid_argument("is_discrete_isothermic: face " + std::to_string(fi) +
                                        " is not circular (defect " + std::to_string(circ[fi]) + ")");
    std::vector<IsothermicResidual> out;
    for (int v = 0; v < q.vertex_count(); ++v) {
        const QuadStar star = q.vertex_star(v);
        if (!star.closed || star.corners.size() % 2 != 0) continue;
        Quaternion prod = Quaternion::identity();
        const Point3& f0 = q.positions[v];
        for (const QuadCorner& c : star.corners)
            prod = prod * cross_ratio(f0, q.positions[c.prev], q.positions[c.diag], q.positions[c.next]);
        out.push_back({v, (prod - Quaternion::identity()).norm()});
    }
    return out;
}

CentralSphereReport central_sphere_check(const QuadGraph& q, int v) {
    if (!q.has_positions()) throw std::invalid_argument("central_sphere_check: positions required");
    const QuadStar star = q.vertex_star(v);
    std::vector<Point3> pts = {q.positions[v]};
    for (const QuadCorner& c : star.corners) pts.push_back(q.positions[c.diag]);

    Point3 centroid{0, 0, 0};
    for (const Point3& p : pts) centroid += p;
    centroid = centroid / static_cast<double>(pts.size());
    double scale = 0.0;
    for (const Point3& p : pts) scale = std::max(scale, (p - centroid).norm());

    CentralSphereReport rep;
    // Least squares on |x|^2 - 2<c,x> + s = 0 in the variables (c, s).
    Eigen::MatrixXd a(pts.size(), 4);
    Eigen::VectorXd b(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        const Point3 d = pts[i] - centroid;  // centered for conditioning
        a(i, 0) = 2 * d.x;
        a(i, 1) = 2 * d.y;
        a(i, 2) = 2 * d.z;
        a(i, 3) = -1.0;
        b(i) = d.norm2();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond_floor = svd.singularValues()(svd.singularValues().size() - 1);
    if (pts.size() < 4 || cond_floor < 1e-9 * svd.singularValues()(0)) {
        rep.degenerate = true;
    } else {
        const Eigen::Vector4d sol = svd.solve(b);
        const Point3 c{sol[0], sol[1], sol[2]};
        const double r2 = c.norm2() - sol[3];
        if (r2 <= 0 || std::sqrt(r2) > 1e6 * scale) {
            rep.degenerate = true;
        } else {
            rep.radius = std::sqrt(r2);
            rep.center = centroid + c;
            for (const Point3& p : pts)
                rep.defect = std::max(rep.defect, std::abs((p - rep.center).norm() - rep.radius));
            rep.defect /= std::max(scale, 1e-300);
            return rep;
        }
    }
    // Near-planar star: treat the plane as the infinite sphere.
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Point3& p : pts) {
        const Point3 d = p - centroid;
        Eigen::Vector3d e(d.x, d.y, d.z);
        cov += e * e.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    const Eigen::Vector3d n = eig.eigenvectors().col(0);
    for (const Point3& p : pts) {
        const Point3 d = p - centroid;
        rep.defect = std::max(rep.defect, std::abs(n[0] * d.x + n[1] * d.y + n[2] * d.z));
    }
    rep.defect /= std::max(scale, 1e-300);
    return rep;
}

DualSurface dualize(const IsothermicQuadSurface& f) {
    const QuadGraph& q = f.quad;
    if (!q.has_positions()) throw std::invalid_argument("dualize: positions required");
    if (f.edge_signs.size() != static_cast<size_t>(q.edge_count()))
        throw std::invalid_argument("dualize: edge labels missing");

    double scale = 0.0;
    for (const QuadEdge& e : q.edges())
        scale = std::max(scale, distance(q.positions[e.a], q.positions[e.b]));
    auto dual_step = [&](int from, int to, int ei) {
        const Point3 d = q.positions[to] - q.positions[from];
        const double n2 = d.norm2();
        if (n2 < 1e-24 * scale * scale) throw std::runtime_error("dualize: zero-length edge");
        return d * (static_cast<double>(f.edge_signs[ei]) / n2);
    };

    DualSurface out;
    out.dual = q;
    std::vector<char> placed(q.vertex_count(), 0);
    std::queue<int> bfs;
    placed[0] = 1;
    out.dual.positions.assign(q.vertex_count(), Point3{});
    bfs.push(0);
    while (!bfs.empty()) {
        const int v = bfs.front();
        bfs.pop();
        for (int ei : q.edges_at(v)) {
            const QuadEdge& e = q.edge(ei);
            const int w = e.a == v ? e.b : e.a;
            if (placed[w]) continue;
            out.dual.positions[w] = out.dual.positions[v] + dual_step(v, w, ei);
            placed[w] = 1;
            bfs.push(w);
        }
    }
    for (char p : placed)
        if (!p) throw std::invalid_argument("dualize: quad-graph is disconnected");

    for (int fi = 0; fi < q.face_count(); ++fi) {
        const auto& fc = q.face(fi);
        Point3 closing{0, 0, 0};
        double extent = 0.0;
        for (int c = 0; c < 4; ++c) {
            const int u = fc[c], v = fc[(c + 1) % 4];
            const Point3 step = dual_step(u, v, q.face_edges(fi)[c]);
            closing += step;
            extent = std::max(extent, step.norm());
        }
        out.max_face_closing_defect =
            std::max(out.max_face_closing_defect, closing.norm() / std::max(extent, 1e-300));
    }
    return out;
}

}  // namespace circlekit
