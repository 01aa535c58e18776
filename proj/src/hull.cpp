#include "circlekit/hull.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace circlekit {

namespace {

double signed_volume(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    return dot(cross(b - a, c - a), d - a);
}

}  // namespace

SimplicialSurface convex_hull(const std::vector<Point3>& pts) {
    const int n = static_cast<int>(pts.size());
    if (n < 4) throw std::invalid_argument("convex_hull: need at least 4 points");

    double scale = 0.0;
    for (const Point3& p : pts) scale = std::max(scale, (p - pts[0]).norm());
    const double eps = 1e-12 * std::max(scale, 1e-300);

    // Initial tetrahedron from the first four points in general position.
    int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
    for (int i = 1; i < n && i1 < 0; ++i)
        if ((pts[i] - pts[i0]).norm() > eps) i1 = i;
    if (i1 < 0) throw std::invalid_argument("convex_hull: all points coincide");
    for (int i = 1; i < n && i2 < 0; ++i)
        if (i != i1 && cross(pts[i1] - pts[i0], pts[i] - pts[i0]).norm() > eps * scale) i2 = i;
    if (i2 < 0) throw std::invalid_argument("convex_hull: points are collinear");
    for (int i = 1; i < n && i3 < 0; ++i)
        if (i != i1 && i != i2 && std::abs(signed_volume(pts[i0], pts[i1], pts[i2], pts[i])) > eps * scale * scale)
            i3 = i;
    if (i3 < 0) throw std::invalid_argument("convex_hull: points are coplanar");
    if (signed_volume(pts[i0], pts[i1], pts[i2], pts[i3]) > 0) std::swap(i1, i2);

    std::vector<std::array<int, 3>> faces = {{i0, i1, i2}, {i0, i2, i3}, {i0, i3, i1}, {i1, i3, i2}};

    auto face_sees = [&](const std::array<int, 3>& f, const Point3& p) {
        return signed_volume(pts[f[0]], pts[f[1]], pts[f[2]], p) > eps * scale * scale;
    };

    for (int i = 0; i < n; ++i) {
        if (i == i0 || i == i1 || i == i2 || i == i3) continue;
        std::vector<char> visible(faces.size(), 0);
        bool any = false;
        for (size_t f = 0; f < faces.size(); ++f) {
            visible[f] = face_sees(faces[f], pts[i]);
            any |= visible[f];
        }
        if (!any) continue;  // interior point

        // Horizon: directed edges of visible faces whose twin belongs to a hidden face.
        std::map<std::pair<int, int>, char> visible_dir_edges;
        for (size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) continue;
            for (int c = 0; c < 3; ++c)
                visible_dir_edges[{faces[f][c], faces[f][(c + 1) % 3]}] = 1;
        }
        std::vector<std::array<int, 3>> next_faces;
        for (size_t f = 0; f < faces.size(); ++f)
            if (!visible[f]) next_faces.push_back(faces[f]);
        for (const auto& [de, unused] : visible_dir_edges) {
            (void)unused;
            if (!visible_dir_edges.count({de.second, de.first}))
                next_faces.push_back({de.first, de.second, i});
        }
        faces = std::move(next_faces);
    }

    // Compact to the used vertices.
    std::vector<int> remap(n, -1);
    std::vector<Point3> used;
    for (auto& f : faces)
        for (int& v : f) {
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(used.size());
                used.push_back(pts[v]);
            }
            v = remap[v];
        }
    return SimplicialSurface(std::move(used), std::move(faces));
}

}  // namespace circlekit
