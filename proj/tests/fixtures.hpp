#pragma once

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "circlekit/koebe.hpp"
#include "circlekit/quadgraph.hpp"
#include "circlekit/rng.hpp"

namespace circlekit::testing {

// Hand-built orthogonal circle pattern with the combinatorics of the cube:
// sphere-circles around the eight corner directions, circle-circles in the six
// face planes, contacts at the twelve edge midpoints. The Koebe polyhedron of
// this pattern is the cube with vertices (+-1,+-1,+-1)/sqrt(2), edges tangent
// to the unit sphere.
inline KoebeInput cube_pattern() {
    std::vector<Point3> corner, face, edge;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) corner.push_back(normalized(Point3{double(sx), double(sy), double(sz)}));
    for (int ax = 0; ax < 3; ++ax)
        for (int s : {-1, 1}) {
            Point3 n{0, 0, 0};
            (ax == 0 ? n.x : ax == 1 ? n.y : n.z) = s;
            face.push_back(n);
        }
    // Edge midpoints: two coordinates +-1, one zero.
    for (int ax = 0; ax < 3; ++ax)
        for (int s1 : {-1, 1})
            for (int s2 : {-1, 1}) {
                Point3 p{0, 0, 0};
                if (ax == 0) p = {0, double(s1), double(s2)};
                if (ax == 1) p = {double(s1), 0, double(s2)};
                if (ax == 2) p = {double(s1), double(s2), 0};
                edge.push_back(normalized(p));
            }

    // Vertex ids: 0..7 corners (ws), 8..13 faces (wc), 14..25 edges (black).
    const int nc = 8, nf = 6;
    auto corner_id = [&](const Point3& d) {
        for (int i = 0; i < nc; ++i)
            if (distance(corner[i], d) < 1e-9) return i;
        return -1;
    };
    auto edge_id = [&](const Point3& d) {
        for (size_t i = 0; i < edge.size(); ++i)
            if (distance(edge[i], normalized(d)) < 1e-9) return static_cast<int>(nc + nf + i);
        return -1;
    };

    // One quad per (face, corner) pair, black vertices at the two face edges
    // meeting that corner; corners cycle counterclockwise around each face.
    std::vector<std::array<int, 4>> quads;
    for (int f = 0; f < nf; ++f) {
        const Point3 n = face[f];
        const Point3 u = std::abs(n.z) > 0.5 ? Point3{1, 0, 0} : Point3{0, 0, 1};
        const Point3 a = normalized(cross(n, u)), b = cross(n, a);
        std::array<int, 4> cyc;
        std::array<Point3, 4> cpos;
        for (int k = 0; k < 4; ++k) {
            const double t = 2 * std::numbers::pi * (k + 0.5) / 4;
            cpos[k] = normalized(n + std::sqrt(2.0) * (std::cos(t) * a + std::sin(t) * b));
            cyc[k] = corner_id(cpos[k]);
        }
        for (int k = 0; k < 4; ++k) {
            const int prev = edge_id(cpos[(k + 3) % 4] + cpos[k]);
            const int next = edge_id(cpos[k] + cpos[(k + 1) % 4]);
            quads.push_back({8 + f, prev, cyc[k], next});
        }
    }

    QuadGraph q(26, std::move(quads));
    q.colors.assign(26, VertexColor::black);
    for (int i = 0; i < nc; ++i) q.colors[i] = VertexColor::white_s;
    for (int i = 0; i < nf; ++i) q.colors[nc + i] = VertexColor::white_c;

    KoebeInput in;
    in.quad = std::move(q);
    const double hs = std::sqrt(2.0 / 3.0);  // corner cap plane offset
    for (int i = 0; i < nc; ++i) {
        Circle3 c;
        c.normal = corner[i];
        c.center = corner[i] * hs;
        c.radius = std::sqrt(1 - hs * hs);
        in.circles[i] = c;
    }
    const double hc = std::sqrt(0.5);
    for (int i = 0; i < nf; ++i) {
        Circle3 c;
        c.normal = face[i];
        c.center = face[i] * hc;
        c.radius = std::sqrt(1 - hc * hc);
        in.circles[nc + i] = c;
    }
    for (size_t i = 0; i < edge.size(); ++i) in.black_points[nc + nf + static_cast<int>(i)] = edge[i];
    return in;
}

// Random circular quad net: every face concyclic, generically not isothermic.
inline QuadGraph random_circular_net(Rng& rng, int m, int n) {
    std::vector<Point3> pos((m + 1) * (n + 1));
    auto id = [n](int i, int j) { return i * (n + 1) + j; };
    for (int i = 0; i <= m; ++i) pos[id(i, 0)] = {double(i), 0.1 * rng.uniform(-1, 1), 0.1 * rng.uniform(-1, 1)};
    for (int j = 1; j <= n; ++j) pos[id(0, j)] = {0.1 * rng.uniform(-1, 1), double(j), 0.1 * rng.uniform(-1, 1)};
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) {
            const Point3& p00 = pos[id(i - 1, j - 1)];
            const Point3& p10 = pos[id(i, j - 1)];
            const Point3& p01 = pos[id(i - 1, j)];
            const Circle3 c = circumcircle(p00, p10, p01);
            const Point3 u = normalized(p00 - c.center);
            const Point3 v = cross(c.normal, u);
            // Fourth vertex on the circumcircle, on the arc facing the corner.
            const double a0 = std::atan2(dot(p10 - c.center, v), dot(p10 - c.center, u));
            const double a1 = std::atan2(dot(p01 - c.center, v), dot(p01 - c.center, u));
            const double mid = (a0 + a1) / 2;
            const double spread = rng.uniform(0.35, 0.65);
            double ang = a0 + (a1 - a0) * spread;
            // pick the arc not containing p00 (angle 0)
            if (std::cos(ang) > 0.99) ang = mid + std::numbers::pi;
            pos[id(i, j)] = c.center + c.radius * (std::cos(ang) * u + std::sin(ang) * v);
        }
    std::vector<std::array<int, 4>> faces;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    QuadGraph q((m + 1) * (n + 1), std::move(faces));
    q.positions = std::move(pos);
    return q;
}

}  // namespace circlekit::testing
