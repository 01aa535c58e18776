#include "circlekit/willmore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "circlekit/accum.hpp"

namespace circlekit {

using std::numbers::pi;

double edge_beta(const SimplicialSurface& s, int e) {
    const SurfaceEdge& ed = s.edge(e);
    if (ed.boundary()) throw std::invalid_argument("edge_beta: boundary edge has a single circumcircle");
    const int apex_l = s.opposite_vertex(ed.face_left, ed.a, ed.b);
    const int apex_r = s.opposite_vertex(ed.face_right, ed.a, ed.b);
    return external_angle(s.position(ed.a), s.position(ed.b), s.position(apex_l), s.position(apex_r));
}

double willmore_local(const SimplicialSurface& s, int v) {
    if (!s.has_positions()) throw std::invalid_argument("willmore_local: surface carries no positions");
    KahanSum sum;
    for (int e : s.edges_at(v)) {
        if (s.edge(e).boundary())
            throw std::invalid_argument("willmore_local: vertex star touches the boundary");
        sum.add(edge_beta(s, e));
    }
    return sum.value() - 2.0 * pi;
}

EnergyReport willmore_total(const SimplicialSurface& s) {
    if (!s.has_positions()) throw std::invalid_argument("willmore_total: surface carries no positions");
    const SurfaceDiagnostics d = s.validate();
    if (!d.closed_manifold())
        throw std::invalid_argument("willmore_total: closed surface required (" + d.summary() + ")");

    EnergyReport r;
    r.per_edge.resize(s.edge_count());
    r.per_vertex.assign(s.vertex_count(), 0.0);
    KahanSum total;
    for (int e = 0; e < s.edge_count(); ++e) {
        r.per_edge[e] = edge_beta(s, e);
        total.add(r.per_edge[e]);
    }
    std::vector<KahanSum> per_vertex(s.vertex_count());
    for (int e = 0; e < s.edge_count(); ++e) {
        per_vertex[s.edge(e).a].add(r.per_edge[e]);
        per_vertex[s.edge(e).b].add(r.per_edge[e]);
    }
    for (int v = 0; v < s.vertex_count(); ++v) r.per_vertex[v] = per_vertex[v].value() - 2.0 * pi;
    r.total = total.value() - pi * s.vertex_count();
    return r;
}

double EnergyReport::consistency_defect() const {
    KahanSum sv;
    for (double w : per_vertex) sv.add(w);
    return std::abs(0.5 * sv.value() - total);
}

std::string EnergyReport::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "circlekit energy-report 1\n";
    os << "total " << total << "\n";
    os << "vertices " << per_vertex.size() << "\n";
    for (size_t v = 0; v < per_vertex.size(); ++v) os << "w " << v << " " << per_vertex[v] << "\n";
    os << "edges " << per_edge.size() << "\n";
    for (size_t e = 0; e < per_edge.size(); ++e) os << "beta " << e << " " << per_edge[e] << "\n";
    os << "end\n";
    return os.str();
}

double steinitz_bound(const SimplicialSurface& s) {
    if (s.colors.size() != static_cast<size_t>(s.vertex_count()))
        throw std::invalid_argument("steinitz_bound: coloring missing");
    int whites = 0, blacks = 0;
    for (VertexColor c : s.colors) {
        if (is_white(c))
            ++whites;
        else if (c == VertexColor::black)
            ++blacks;
        else
            throw std::invalid_argument("steinitz_bound: every vertex must be black or white");
    }
    for (const SurfaceEdge& e : s.edges())
        if (is_white(s.colors[e.a]) && is_white(s.colors[e.b]))
            throw std::invalid_argument("steinitz_bound: white-white edge violates the hypothesis");
    return pi * (whites - blacks);
}

double angle_defect(const SimplicialSurface& s, int v) {
    if (!s.has_positions()) throw std::invalid_argument("angle_defect: surface carries no positions");
    const VertexStar star = s.vertex_star(v);
    KahanSum sum;
    for (int f : star.faces) {
        const auto& fc = s.face(f);
        int i = 0;
        while (fc[i] != v) ++i;
        const Point3 u = s.position(fc[(i + 1) % 3]) - s.position(v);
        const Point3 w = s.position(fc[(i + 2) % 3]) - s.position(v);
        const double c = dot(u, w) / (u.norm() * w.norm());
        if (!(u.norm() > 0) || !(w.norm() > 0)) throw std::invalid_argument("angle_defect: degenerate face");
        sum.add(std::acos(std::clamp(c, -1.0, 1.0)));
    }
    return 2.0 * pi - sum.value();
}

std::pair<double, double> pyramid_angle_sums(const std::vector<Point3>& polygon, const Point3& apex) {
    const int n = static_cast<int>(polygon.size());
    if (n < 3) throw std::invalid_argument("pyramid_angle_sums: need at least 3 vertices");
    KahanSum sum_beta, sum_alpha;
    for (int i = 0; i < n; ++i) {
        const Point3& prev = polygon[(i + n - 1) % n];
        const Point3& cur = polygon[i];
        const Point3& next = polygon[(i + 1) % n];
        const Point3 u = cur - prev, w = next - cur;
        if (u.norm2() == 0.0 || w.norm2() == 0.0)
            throw std::invalid_argument("pyramid_angle_sums: degenerate polygon edge");
        sum_beta.add(std::acos(std::clamp(dot(u, w) / (u.norm() * w.norm()), -1.0, 1.0)));
        const Point3 p = cur - apex, q = next - apex;
        if (p.norm2() == 0.0 || q.norm2() == 0.0)
            throw std::invalid_argument("pyramid_angle_sums: apex coincides with a vertex");
        sum_alpha.add(std::acos(std::clamp(dot(p, q) / (p.norm() * q.norm()), -1.0, 1.0)));
    }
    return {sum_beta.value(), sum_alpha.value()};
}

}  // namespace circlekit
