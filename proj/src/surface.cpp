#include "circlekit/surface.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace circlekit {

bool is_white(VertexColor c) {
    return c == VertexColor::white || c == VertexColor::white_c || c == VertexColor::white_s;
}

SimplicialSurface::SimplicialSurface(int vertex_count, std::vector<std::array<int, 3>> faces)
    : vertex_count_(vertex_count), faces_(std::move(faces)) {
    build_edges();
}

SimplicialSurface::SimplicialSurface(std::vector<Point3> positions, std::vector<std::array<int, 3>> faces)
    : vertex_count_(static_cast<int>(positions.size())), positions_(std::move(positions)), faces_(std::move(faces)) {
    build_edges();
}

void SimplicialSurface::build_edges() {
    for (const auto& f : faces_)
        for (int c = 0; c < 3; ++c)
            if (f[c] < 0 || f[c] >= vertex_count_) throw std::out_of_range("face references unknown vertex");

    std::map<std::pair<int, int>, int> index;
    for (int fi = 0; fi < face_count(); ++fi) {
        const auto& f = faces_[fi];
        for (int c = 0; c < 3; ++c) {
            int u = f[c], v = f[(c + 1) % 3];
            if (u == v) throw std::invalid_argument("degenerate face with repeated vertex");
            const auto key = std::minmax(u, v);
            auto it = index.find(key);
            if (it == index.end()) {
                SurfaceEdge e;
                e.a = key.first;
                e.b = key.second;
                edges_.push_back(e);
                extra_edge_faces_.push_back(0);
                it = index.emplace(key, static_cast<int>(edges_.size()) - 1).first;
            }
            SurfaceEdge& e = edges_[it->second];
            int& slot = (u == e.a) ? e.face_left : e.face_right;
            if (slot < 0) {
                slot = fi;
            } else if (((u == e.a) ? e.face_right : e.face_left) < 0) {
                // Second face traverses the edge the same way: orientation clash.
                same_direction_edges_.push_back(it->second);
                (((u == e.a) ? e.face_right : e.face_left)) = fi;
            } else {
                extra_edge_faces_[it->second]++;
            }
        }
    }
    vertex_edges_.assign(vertex_count_, {});
    for (int ei = 0; ei < edge_count(); ++ei) {
        vertex_edges_[edges_[ei].a].push_back(ei);
        vertex_edges_[edges_[ei].b].push_back(ei);
    }
}

int SimplicialSurface::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (int ei : vertex_edges_[u])
        if (edges_[ei].a == u && edges_[ei].b == v) return ei;
    return -1;
}

int SimplicialSurface::opposite_vertex(int f, int u, int v) const {
    for (int c = 0; c < 3; ++c) {
        int w = faces_[f][c];
        if (w != u && w != v) return w;
    }
    throw std::logic_error("opposite_vertex: face does not span the edge");
}

VertexStar SimplicialSurface::vertex_star(int v) const {
    if (v < 0 || v >= vertex_count_) throw std::out_of_range("vertex_star: unknown vertex");
    // succ[a] = (b, face) for each face (v, a, b) in face orientation.
    std::map<int, std::pair<int, int>> succ;
    std::map<int, int> pred_count;
    for (int ei : vertex_edges_[v]) {
        const SurfaceEdge& e = edges_[ei];
        for (int f : {e.face_left, e.face_right}) {
            if (f < 0) continue;
            const auto& fc = faces_[f];
            for (int c = 0; c < 3; ++c) {
                if (fc[c] != v) continue;
                int a = fc[(c + 1) % 3], b = fc[(c + 2) % 3];
                if (auto known = succ.find(a); known != succ.end()) {
                    if (known->second.second != f)
                        throw std::runtime_error("vertex_star: non-manifold corner");
                    break;  // same face, seen from its other edge at v
                }
                succ[a] = {b, f};
                pred_count[b]++;
                break;
            }
        }
    }
    VertexStar star;
    if (succ.empty()) return star;
    // Start at a neighbor with no predecessor (boundary chain) if one exists.
    int start = succ.begin()->first;
    for (const auto& [a, sb] : succ)
        if (!pred_count.count(a)) start = a;
    int cur = start;
    star.neighbors.push_back(cur);
    while (true) {
        auto it = succ.find(cur);
        if (it == succ.end()) break;
        star.faces.push_back(it->second.second);
        cur = it->second.first;
        if (cur == start) {
            star.closed = true;
            break;
        }
        star.neighbors.push_back(cur);
        if (star.neighbors.size() > succ.size() + 1)
            throw std::runtime_error("vertex_star: star does not close consistently");
    }
    if (star.faces.size() != succ.size())
        throw std::runtime_error("vertex_star: star is not a single cycle or chain");
    return star;
}

SurfaceDiagnostics SimplicialSurface::validate() const {
    SurfaceDiagnostics d;
    for (int ei = 0; ei < edge_count(); ++ei) {
        if (extra_edge_faces_[ei] > 0) d.nonmanifold_edges.push_back(ei);
        if (edges_[ei].boundary()) d.boundary_edges++;
    }
    d.misoriented_edges = same_direction_edges_;
    d.manifold = d.nonmanifold_edges.empty();
    d.oriented = d.misoriented_edges.empty();
    for (int v = 0; v < vertex_count_; ++v) {
        try {
            (void)vertex_star(v);
        } catch (const std::exception&) {
            d.bad_star_vertices.push_back(v);
        }
    }
    d.euler_characteristic = vertex_count_ - edge_count() + face_count();
    return d;
}

std::string SurfaceDiagnostics::summary() const {
    std::ostringstream os;
    os << (manifold ? "manifold" : "NON-MANIFOLD") << ", " << (oriented ? "oriented" : "MISORIENTED")
       << ", boundary edges: " << boundary_edges << ", chi = " << euler_characteristic;
    if (!bad_star_vertices.empty()) os << ", bad stars: " << bad_star_vertices.size();
    return os.str();
}

SimplicialSurface refine_1to4(const SimplicialSurface& s) {
    const SurfaceDiagnostics d = s.validate();
    if (!d.manifold || !d.oriented || !d.bad_star_vertices.empty())
        throw std::invalid_argument("refine_1to4: invalid input surface: " + d.summary());

    const int nv = s.vertex_count();
    std::vector<std::array<int, 3>> faces;
    faces.reserve(4 * s.face_count());
    auto mid = [&](int u, int v) { return nv + s.edge_index(u, v); };
    for (const auto& f : s.faces()) {
        const int m01 = mid(f[0], f[1]), m12 = mid(f[1], f[2]), m20 = mid(f[2], f[0]);
        faces.push_back({f[0], m01, m20});
        faces.push_back({f[1], m12, m01});
        faces.push_back({f[2], m20, m12});
        faces.push_back({m01, m12, m20});
    }
    if (!s.has_positions()) return SimplicialSurface(nv + s.edge_count(), std::move(faces));

    std::vector<Point3> pos = s.positions();
    pos.reserve(nv + s.edge_count());
    for (const SurfaceEdge& e : s.edges()) pos.push_back((s.position(e.a) + s.position(e.b)) * 0.5);
    return SimplicialSurface(std::move(pos), std::move(faces));
}

}  // namespace circlekit
