#pragma once

#include <array>

#include "circlekit/surface.hpp"

namespace circlekit {

// Noninscribable 14-vertex simplicial sphere: tetrahedron corners and per-face
// vertices colored white, edge vertices black (8 white / 6 black, no
// white-white edges). Abstract combinatorics, coloring attached.
SimplicialSurface make_steinitz_example();

// Geometric realization of the Steinitz combinatorics with the face vertices at
// the concurrency points of the three face circles, one circle through each
// corner and its two edge points. Edge point i sits at fraction edge_params[i]
// along tetra edge i, edges ordered (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
// Throws when an edge parameter leaves (0,1) or concurrency fails.
SimplicialSurface make_miquel_polyhedron(const std::array<Point3, 4>& tetra,
                                         const std::array<double, 6>& edge_params);

// Vertex layout shared by both generators: 0-3 corners, 4-9 edge vertices,
// 10-13 face vertices (face k opposite corner k).
struct SteinitzLayout {
    static constexpr std::array<std::array<int, 2>, 6> edges = {
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    // Outward-oriented tetra faces.
    static constexpr std::array<std::array<int, 3>, 4> tetra_faces = {
        {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}};
    static int edge_of(int u, int v);
};

}  // namespace circlekit
