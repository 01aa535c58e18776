#include "circlekit/quadgraph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace circlekit {

QuadGraph::QuadGraph(int vertex_count, std::vector<std::array<int, 4>> faces)
    : vertex_count_(vertex_count), faces_(std::move(faces)) {
    build();
}

void QuadGraph::build() {
    std::map<std::pair<int, int>, int> index;
    face_edges_.assign(faces_.size(), {-1, -1, -1, -1});
    for (int fi = 0; fi < face_count(); ++fi) {
        const auto& f = faces_[fi];
        for (int c = 0; c < 4; ++c) {
            int u = f[c], v = f[(c + 1) % 4];
            if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_)
                throw std::out_of_range("quad face references unknown vertex");
            if (u == v) throw std::invalid_argument("quad face with repeated consecutive vertex");
            const auto key = std::minmax(u, v);
            auto it = index.find(key);
            if (it == index.end()) {
                QuadEdge e;
                e.a = key.first;
                e.b = key.second;
                edges_.push_back(e);
                it = index.emplace(key, static_cast<int>(edges_.size()) - 1).first;
            }
            QuadEdge& e = edges_[it->second];
            int& slot = (u == e.a) ? e.face_left : e.face_right;
            if (slot >= 0) throw std::invalid_argument("quad-graph edge traversed twice in one direction");
            slot = fi;
            face_edges_[fi][c] = it->second;
        }
    }
    vertex_edges_.assign(vertex_count_, {});
    for (int ei = 0; ei < edge_count(); ++ei) {
        vertex_edges_[edges_[ei].a].push_back(ei);
        vertex_edges_[edges_[ei].b].push_back(ei);
    }
}

int QuadGraph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (int ei : vertex_edges_[u])
        if (edges_[ei].a == u && edges_[ei].b == v) return ei;
    return -1;
}

QuadStar QuadGraph::vertex_star(int v) const {
    if (v < 0 || v >= vertex_count_) throw std::out_of_range("vertex_star: unknown vertex");
    // For each face (v=f[i], f[i+1], f[i+2], f[i+3]): enters from f[i+3], leaves to f[i+1].
    std::map<int, QuadCorner> by_prev;
    std::map<int, int> as_next;
    for (int ei : vertex_edges_[v]) {
        const QuadEdge& e = edges_[ei];
        for (int fi : {e.face_left, e.face_right}) {
            if (fi < 0) continue;
            const auto& f = faces_[fi];
            for (int c = 0; c < 4; ++c) {
                if (f[c] != v) continue;
                QuadCorner corner;
                corner.next = f[(c + 1) % 4];
                corner.diag = f[(c + 2) % 4];
                corner.prev = f[(c + 3) % 4];
                corner.face = fi;
                if (by_prev.count(corner.prev)) {
                    if (by_prev[corner.prev].face != fi)
                        throw std::runtime_error("vertex_star: non-manifold quad corner");
                    continue;
                }
                by_prev[corner.prev] = corner;
                as_next[corner.next]++;
            }
        }
    }
    QuadStar star;
    if (by_prev.empty()) return star;
    int start = by_prev.begin()->first;
    for (const auto& [p, c] : by_prev)
        if (!as_next.count(p)) start = p;
    int cur = start;
    while (true) {
        auto it = by_prev.find(cur);
        if (it == by_prev.end()) break;
        star.corners.push_back(it->second);
        cur = it->second.next;
        if (cur == start) {
            star.closed = true;
            break;
        }
        if (star.corners.size() > by_prev.size())
            throw std::runtime_error("vertex_star: quad star does not close consistently");
    }
    if (star.corners.size() != by_prev.size())
        throw std::runtime_error("vertex_star: quad star is not a single cycle or chain");
    return star;
}

std::string QuadGraph::check_coloring() const {
    if (colors.empty()) return "no colors attached";
    bool s_labeled = false;
    for (VertexColor c : colors)
        if (c == VertexColor::white_c || c == VertexColor::white_s) s_labeled = true;
    for (const QuadEdge& e : edges_) {
        const bool wa = is_white(colors[e.a]), wb = is_white(colors[e.b]);
        if (wa == wb) return "edge " + std::to_string(e.a) + "-" + std::to_string(e.b) + " joins same-color ends";
    }
    if (s_labeled) {
        for (int fi = 0; fi < face_count(); ++fi) {
            int nc = 0, ns = 0, nb = 0;
            for (int v : faces_[fi]) {
                nc += colors[v] == VertexColor::white_c;
                ns += colors[v] == VertexColor::white_s;
                nb += colors[v] == VertexColor::black;
            }
            if (nc != 1 || ns != 1 || nb != 2)
                return "face " + std::to_string(fi) + " lacks the (wc, black, ws, black) pattern";
        }
    }
    return {};
}

std::vector<int> QuadGraph::edge_sign_labels() const {
    // Strip classes: opposite edges of a face identified; adjacent edges of a
    // face must take opposite signs. Interior vertices therefore need even degree.
    for (int v = 0; v < vertex_count_; ++v) {
        bool interior = true;
        for (int ei : vertex_edges_[v])
            if (edges_[ei].boundary()) interior = false;
        if (interior && vertex_edges_[v].size() % 2 != 0)
            throw std::runtime_error("edge_sign_labels: interior vertex of odd degree " + std::to_string(v));
    }
    std::vector<int> label(edge_count(), 0);
    std::vector<std::vector<std::pair<int, int>>> constraints(edge_count());  // (other, relation)
    for (int fi = 0; fi < face_count(); ++fi) {
        const auto& fe = face_edges_[fi];
        constraints[fe[0]].push_back({fe[2], +1});
        constraints[fe[2]].push_back({fe[0], +1});
        constraints[fe[1]].push_back({fe[3], +1});
        constraints[fe[3]].push_back({fe[1], +1});
        for (int c = 0; c < 4; ++c) {
            constraints[fe[c]].push_back({fe[(c + 1) % 4], -1});
            constraints[fe[(c + 1) % 4]].push_back({fe[c], -1});
        }
    }
    for (int seed = 0; seed < edge_count(); ++seed) {
        if (label[seed] != 0) continue;
        label[seed] = +1;
        std::queue<int> bfs;
        bfs.push(seed);
        while (!bfs.empty()) {
            int e = bfs.front();
            bfs.pop();
            for (auto [other, rel] : constraints[e]) {
                int want = rel * label[e];
                if (label[other] == 0) {
                    label[other] = want;
                    bfs.push(other);
                } else if (label[other] != want) {
                    throw std::runtime_error("edge_sign_labels: inconsistent strip structure");
                }
            }
        }
    }
    return label;
}

}  // namespace circlekit
