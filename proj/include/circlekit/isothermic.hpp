#pragma once

#include <vector>

#include "circlekit/quadgraph.hpp"

namespace circlekit {

// Circular quad net with consistent +/- edge labels; domain of dualization.
struct IsothermicQuadSurface {
    QuadGraph quad;               // positions required
    std::vector<int> edge_signs;  // +-1 per quad edge

    static IsothermicQuadSurface with_labels(QuadGraph q);  // computes the labels
};

// Concyclicity defect of each face, normalized by its circumradius.
std::vector<double> face_circularity(const QuadGraph& q);

struct IsothermicResidual {
    int vertex;
    double defect;  // | prod q - 1 |
};

// Cross-ratio product condition: for every interior vertex of even degree, the
// quaternionic product of the per-face cross-ratios q(f0, prev, diag, next)
// around the star. Throws when a face fails circularity beyond circular_tol.
std::vector<IsothermicResidual> is_discrete_isothermic(const QuadGraph& q, double circular_tol = 1e-8);

struct CentralSphereReport {
    double defect = 0.0;   // max distance defect, normalized by the star scale
    bool degenerate = false;  // near-planar star, plane used as the infinite sphere
    double radius = 0.0;
    Point3 center;
};

// Best-fit sphere through a vertex and its next-neighbors (the diagonal
// vertices of its star).
CentralSphereReport central_sphere_check(const QuadGraph& q, int v);

struct DualSurface {
    QuadGraph dual;                   // same combinatorics, dual positions
    double max_face_closing_defect = 0.0;  // relative to the face's dual extent
};

// Christoffel-type dual: edge-wise Delta f* = sign(e) Delta f / |Delta f|^2,
// integrated over a breadth-first tree; per-face closing defects reported.
// Throws on zero-length edges.
DualSurface dualize(const IsothermicQuadSurface& f);

}  // namespace circlekit
