#include "circlekit/exports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>

#include "circlekit/hull.hpp"

namespace circlekit {

MeshFile s_isothermic_mesh_file(const SIsothermicSurface& s) {
    MeshFile m = to_mesh_file(s.quad);
    const std::vector<int> signs = s.quad.edge_sign_labels();
    for (int e = 0; e < s.quad.edge_count(); ++e)
        m.edge_labels.push_back({s.quad.edge(e).a, s.quad.edge(e).b, signs[e]});
    return m;
}

void write_kite_obj(const std::string& path, const SIsothermicSurface& s) {
    std::vector<std::vector<int>> faces;
    for (const auto& f : s.quad.faces()) faces.push_back({f[0], f[1], f[2], f[3]});
    write_obj(path, s.quad.positions, faces);
}

void write_proxy_obj(const std::string& path, const SIsothermicSurface& s, int circle_segments,
                     int sphere_subdivisions) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out.precision(12);
    int next = 1;  // obj indices are 1-based

    for (const auto& [v, c] : s.circles) {
        const Point3 u = normalized(cross(c.normal, std::abs(c.normal.z) < 0.9 ? Point3{0, 0, 1}
                                                                               : Point3{1, 0, 0}));
        const Point3 w = cross(c.normal, u);
        out << "g circle_" << v << "\n";
        for (int i = 0; i < circle_segments; ++i) {
            const double a = 2 * std::numbers::pi * i / circle_segments;
            const Point3 p = c.center + c.radius * (std::cos(a) * u + std::sin(a) * w);
            out << "v " << p.x << " " << p.y << " " << p.z << "\n";
        }
        out << "l";
        for (int i = 0; i < circle_segments; ++i) out << " " << next + i;
        out << " " << next << "\n";
        next += circle_segments;
    }

    // Icospheres share one template topology per subdivision level.
    const double phi = (1 + std::sqrt(5.0)) / 2;
    std::vector<Point3> base = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                                {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                                {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
    SimplicialSurface proto = convex_hull(base);
    for (int i = 0; i < sphere_subdivisions; ++i) {
        proto = refine_1to4(proto);
        for (Point3& p : proto.positions()) p = normalized(p);
    }
    for (const auto& [v, sp] : s.spheres) {
        out << "g sphere_" << v << "\n";
        for (const Point3& q : proto.positions()) {
            const Point3 p = sp.center + sp.radius * normalized(q);
            out << "v " << p.x << " " << p.y << " " << p.z << "\n";
        }
        for (const auto& f : proto.faces())
            out << "f " << next + f[0] << " " << next + f[1] << " " << next + f[2] << "\n";
        next += proto.vertex_count();
    }

    out << "g contacts\n";
    for (const auto& [v, p] : s.contacts) {
        out << "v " << p.x << " " << p.y << " " << p.z << "\n";
        out << "p " << next << "\n";
        ++next;
    }
}

}  // namespace circlekit
