#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "circlekit/quadgraph.hpp"
#include "circlekit/surface.hpp"

namespace circlekit {

struct MeshParseError : std::runtime_error {
    int line;
    MeshParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Interchange document for triangle meshes and quad-graphs: positions, faces,
// vertex-color block, edge-label block. Writing uses %.17g, so doubles
// round-trip exactly.
struct MeshFile {
    enum class Kind { tri, quad };
    Kind kind = Kind::tri;
    int vertex_count = 0;
    bool with_positions = false;
    std::vector<Point3> positions;
    std::vector<std::vector<int>> faces;
    std::vector<VertexColor> colors;  // empty or vertex_count entries
    struct EdgeLabel {
        int a, b, sign;
        bool operator==(const EdgeLabel&) const = default;
    };
    std::vector<EdgeLabel> edge_labels;

    bool operator==(const MeshFile&) const;
};

MeshFile read_mesh_text(std::istream& in);
MeshFile read_mesh(const std::string& path);
std::string write_mesh_text(const MeshFile& m);
void write_mesh(const std::string& path, const MeshFile& m);

MeshFile to_mesh_file(const SimplicialSurface& s);
MeshFile to_mesh_file(const QuadGraph& q);
SimplicialSurface to_simplicial(const MeshFile& m);  // throws unless kind == tri
QuadGraph to_quadgraph(const MeshFile& m);           // throws unless kind == quad

// Positions + faces only, for external viewers.
void write_obj(const std::string& path, const std::vector<Point3>& positions,
               const std::vector<std::vector<int>>& faces);
void write_obj(const std::string& path, const SimplicialSurface& s);

const char* color_token(VertexColor c);
VertexColor parse_color_token(const std::string& tok, int line);

}  // namespace circlekit
