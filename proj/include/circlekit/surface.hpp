#pragma once

#include <array>
#include <string>
#include <vector>

#include "circlekit/quaternion.hpp"

namespace circlekit {

enum class VertexColor { none, black, white, white_c, white_s };

bool is_white(VertexColor c);

struct SurfaceEdge {
    int a = -1, b = -1;       // a < b
    int face_left = -1;       // face traversing a -> b
    int face_right = -1;      // face traversing b -> a
    bool boundary() const { return face_left < 0 || face_right < 0; }
};

struct VertexStar {
    std::vector<int> neighbors;  // cyclic order (orientation-induced); open chain on boundary
    std::vector<int> faces;      // faces[i] = face (v, neighbors[i], neighbors[i+1])
    bool closed = false;
};

struct SurfaceDiagnostics {
    bool manifold = true;
    bool oriented = true;
    int boundary_edges = 0;
    int euler_characteristic = 0;
    std::vector<int> nonmanifold_edges;     // ids of edges with other than 1 or 2 faces
    std::vector<int> misoriented_edges;     // ids of edges traversed twice in one direction
    std::vector<int> bad_star_vertices;     // vertices whose star is not a single cycle/chain
    bool closed_manifold() const { return manifold && oriented && boundary_edges == 0 && bad_star_vertices.empty(); }
    std::string summary() const;
};

// Oriented triangle mesh; positions optional (abstract complexes carry none).
class SimplicialSurface {
  public:
    SimplicialSurface() = default;
    SimplicialSurface(int vertex_count, std::vector<std::array<int, 3>> faces);
    SimplicialSurface(std::vector<Point3> positions, std::vector<std::array<int, 3>> faces);

    int vertex_count() const { return vertex_count_; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool has_positions() const { return !positions_.empty(); }

    const std::vector<Point3>& positions() const { return positions_; }
    std::vector<Point3>& positions() { return positions_; }
    const Point3& position(int v) const { return positions_[v]; }
    const std::vector<std::array<int, 3>>& faces() const { return faces_; }
    const std::array<int, 3>& face(int f) const { return faces_[f]; }
    const std::vector<SurfaceEdge>& edges() const { return edges_; }
    const SurfaceEdge& edge(int e) const { return edges_[e]; }
    int edge_index(int u, int v) const;  // -1 if absent
    const std::vector<int>& edges_at(int v) const { return vertex_edges_[v]; }

    // Optional per-vertex coloring (for the black/white energy bounds).
    std::vector<VertexColor> colors;

    VertexStar vertex_star(int v) const;  // throws on unknown vertex
    SurfaceDiagnostics validate() const;

    // Apex of face f across the edge (u,v): the vertex of f that is neither u nor v.
    int opposite_vertex(int f, int u, int v) const;

  private:
    void build_edges();

    int vertex_count_ = 0;
    std::vector<Point3> positions_;
    std::vector<std::array<int, 3>> faces_;
    std::vector<SurfaceEdge> edges_;
    std::vector<int> extra_edge_faces_;        // count of faces beyond 2 per edge (non-manifold)
    std::vector<int> same_direction_edges_;    // edge ids traversed twice the same way
    std::vector<std::vector<int>> vertex_edges_;
};

// Uniform 1->4 refinement: one new vertex per edge, each face split into four.
// Positions (when present) put the new vertices at edge midpoints.
SimplicialSurface refine_1to4(const SimplicialSurface& s);

}  // namespace circlekit
