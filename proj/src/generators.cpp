#include "circlekit/generators.hpp"

#include <stdexcept>
#include <utility>

#include "circlekit/circles.hpp"

namespace circlekit {

int SteinitzLayout::edge_of(int u, int v) {
    if (u > v) std::swap(u, v);
    for (int i = 0; i < 6; ++i)
        if (edges[i][0] == u && edges[i][1] == v) return i;
    throw std::logic_error("edge_of: not a tetra edge");
}

namespace {

// Faces of the 14-vertex complex. Corner c, edge vertex 4+e, face vertex 10+k.
std::vector<std::array<int, 3>> steinitz_faces() {
    std::vector<std::array<int, 3>> faces;
    for (int k = 0; k < 4; ++k) {
        const auto [a, b, c] = SteinitzLayout::tetra_faces[k];
        const int mab = 4 + SteinitzLayout::edge_of(a, b);
        const int mbc = 4 + SteinitzLayout::edge_of(b, c);
        const int mca = 4 + SteinitzLayout::edge_of(c, a);
        const int w = 10 + k;
        faces.push_back({a, mab, mca});
        faces.push_back({b, mbc, mab});
        faces.push_back({c, mca, mbc});
        faces.push_back({mab, mbc, w});
        faces.push_back({mbc, mca, w});
        faces.push_back({mca, mab, w});
    }
    return faces;
}

std::vector<VertexColor> steinitz_colors() {
    std::vector<VertexColor> col(14, VertexColor::white);
    for (int e = 0; e < 6; ++e) col[4 + e] = VertexColor::black;
    return col;
}

}  // namespace

SimplicialSurface make_steinitz_example() {
    SimplicialSurface s(14, steinitz_faces());
    s.colors = steinitz_colors();
    return s;
}

SimplicialSurface make_miquel_polyhedron(const std::array<Point3, 4>& tetra,
                                         const std::array<double, 6>& edge_params) {
    const double det = dot(cross(tetra[1] - tetra[0], tetra[2] - tetra[0]), tetra[3] - tetra[0]);
    double scale = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) scale = std::max(scale, distance(tetra[i], tetra[j]));
    if (std::abs(det) < 1e-10 * scale * scale * scale)
        throw std::invalid_argument("make_miquel_polyhedron: degenerate tetrahedron");

    std::vector<Point3> pos(14);
    for (int i = 0; i < 4; ++i) pos[i] = tetra[i];
    for (int e = 0; e < 6; ++e) {
        const double t = edge_params[e];
        if (!(t > 1e-9 && t < 1.0 - 1e-9))
            throw std::invalid_argument("make_miquel_polyhedron: edge point not strictly inside its edge");
        const auto [u, v] = SteinitzLayout::edges[e];
        pos[4 + e] = tetra[u] + t * (tetra[v] - tetra[u]);
    }
    for (int k = 0; k < 4; ++k) {
        const auto [a, b, c] = SteinitzLayout::tetra_faces[k];
        const Point3& mab = pos[4 + SteinitzLayout::edge_of(a, b)];
        const Point3& mbc = pos[4 + SteinitzLayout::edge_of(b, c)];
        const Point3& mca = pos[4 + SteinitzLayout::edge_of(c, a)];
        // One circle per corner through its two edge points; the three circles
        // share a point, which becomes the white face vertex.
        const Circle3 ca = circumcircle(pos[a], mab, mca);
        const Circle3 cb = circumcircle(pos[b], mbc, mab);
        const Circle3 cc = circumcircle(pos[c], mca, mbc);
        double residual = 0.0;
        const Point3 w = circle_second_intersection(ca, cb, mab, &residual);
        residual = std::max(residual, point_circle_distance(cc, w));
        if (residual > 1e-8 * scale)
            throw std::runtime_error("make_miquel_polyhedron: face circles fail to be concurrent");
        pos[10 + k] = w;
    }
    auto faces = steinitz_faces();
    if (det < 0)  // flip to outward orientation
        for (auto& f : faces) std::swap(f[1], f[2]);
    SimplicialSurface s(std::move(pos), std::move(faces));
    s.colors = steinitz_colors();
    return s;
}

}  // namespace circlekit
