#pragma once

#include <array>
#include <string>
#include <vector>

#include "circlekit/quaternion.hpp"
#include "circlekit/surface.hpp"

namespace circlekit {

struct QuadEdge {
    int a = -1, b = -1;  // a < b
    int face_left = -1;  // face traversing a -> b
    int face_right = -1;
    bool boundary() const { return face_left < 0 || face_right < 0; }
};

// One face of a vertex rotation: the quad enters through neighbor `prev`,
// has `diag` across, and leaves through neighbor `next`.
struct QuadCorner {
    int prev = -1, diag = -1, next = -1;
    int face = -1;
};

struct QuadStar {
    std::vector<QuadCorner> corners;  // cyclic for interior vertices, chain otherwise
    bool closed = false;
};

// Cell complex with quadrilateral faces, bipartite black/white vertices and
// (optionally) white vertices split into the circle (wc) and sphere (ws) kinds.
class QuadGraph {
  public:
    QuadGraph() = default;
    QuadGraph(int vertex_count, std::vector<std::array<int, 4>> faces);

    int vertex_count() const { return vertex_count_; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::array<int, 4>>& faces() const { return faces_; }
    const std::array<int, 4>& face(int f) const { return faces_[f]; }
    const std::vector<QuadEdge>& edges() const { return edges_; }
    const QuadEdge& edge(int e) const { return edges_[e]; }
    int edge_index(int u, int v) const;
    const std::vector<int>& edges_at(int v) const { return vertex_edges_[v]; }
    const std::array<int, 4>& face_edges(int f) const { return face_edges_[f]; }

    std::vector<VertexColor> colors;  // empty or vertex_count
    std::vector<Point3> positions;    // empty or vertex_count

    bool has_positions() const { return !positions.empty(); }

    QuadStar vertex_star(int v) const;
    int vertex_degree(int v) const { return static_cast<int>(vertex_edges_[v].size()); }

    // Diagnostics: bipartite black/white edges; when S-labeled, each face must
    // carry one wc, one ws and two black vertices in alternation.
    std::string check_coloring() const;  // empty string when consistent

    // The +/- edge labeling: opposite edges of every face share a label,
    // adjacent edges differ. Exists iff interior vertices have even degree and
    // the strip constraints are bipartite. Throws on obstruction.
    std::vector<int> edge_sign_labels() const;

  private:
    void build();

    int vertex_count_ = 0;
    std::vector<std::array<int, 4>> faces_;
    std::vector<QuadEdge> edges_;
    std::vector<std::array<int, 4>> face_edges_;
    std::vector<std::vector<int>> vertex_edges_;
};

}  // namespace circlekit
