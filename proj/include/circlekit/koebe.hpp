#pragma once

#include <array>
#include <map>
#include <vector>

#include "circlekit/layout.hpp"
#include "circlekit/sisothermic.hpp"
#include "circlekit/surface.hpp"

namespace circlekit {

// Spherical image of a planar orthogonal pattern under inverse stereographic
// projection: a circle per placed node, a point per tangency corner.
struct SphericalCirclePattern {
    std::vector<Circle3> circles;
    std::vector<char> has_circle;
    std::map<std::array<int, 3>, Point3> corner_points;
    double max_angle_defect = 0.0;  // orthogonality of adjacent lifted circles, radians
};

// Throws a repositioning hint when a circle is too large/far to lift stably.
SphericalCirclePattern lift_pattern_to_sphere(const PatternProblem& p, const PatternLayout& l);

// Polyhedron with edges tangent to the unit sphere. Vertices are the centers of
// the orthogonal spheres through the ws circles, faces carry the wc circles
// inscribed, edges touch the sphere at the contact points.
struct KoebePolyhedron {
    std::vector<Point3> vertices;     // per ws vertex of the quad-graph
    std::vector<int> vertex_ws;       // quad-graph ws vertex per polyhedron vertex
    std::vector<std::vector<int>> faces;  // closed wc stars only, as vertex indices
    std::vector<int> face_wc;
    struct Edge {
        int v0, v1;
        int black;  // quad-graph contact vertex
        Point3 tangency;
    };
    std::vector<Edge> edges;
    double max_edge_tangency_defect = 0.0;  // | segment distance to origin - 1 |
    double max_face_planarity = 0.0;        // relative to face extent
    double max_inscribed_defect = 0.0;      // wc circle against its face plane
};

// Input: S-labeled quad-graph combinatorics; a spherical circle per white
// vertex; a point on the unit sphere per black vertex.
struct KoebeInput {
    QuadGraph quad;  // colors required; positions ignored
    std::map<int, Circle3> circles;
    std::map<int, Point3> black_points;
};

struct KoebeResult {
    KoebePolyhedron poly;
    SIsothermicSurface surface;  // the "round sphere" S-isothermic structure
};

KoebeResult koebe_polyhedron(const KoebeInput& in);

// Inscribed 1->4-type refinement of a Koebe polyhedron: tangency points become
// vertices, original vertices are radially projected to the unit sphere, faces
// are triangulated. The result is a convex simplicial surface inscribed in the
// unit sphere (zero discrete Willmore energy).
SimplicialSurface inscribed_refinement(const KoebePolyhedron& kp);

}  // namespace circlekit
