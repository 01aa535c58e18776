#include "circlekit/minimal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace circlekit {

using std::numbers::pi;

namespace {

Point3 fit_plane(const std::vector<Point3>& pts, double* max_defect) {
    Point3 centroid{0, 0, 0};
    for (const Point3& p : pts) centroid += p;
    centroid = centroid / static_cast<double>(pts.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Point3& p : pts) {
        const Point3 d = p - centroid;
        Eigen::Vector3d e(d.x, d.y, d.z);
        cov += e * e.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    const Eigen::Vector3d n = eig.eigenvectors().col(0);
    const Point3 normal = normalized(Point3{n[0], n[1], n[2]});
    if (max_defect) {
        *max_defect = 0.0;
        for (const Point3& p : pts) *max_defect = std::max(*max_defect, std::abs(dot(p - centroid, normal)));
    }
    return normal;
}

std::vector<int> circle_neighbors(const QuadGraph& q, int ws) {
    const QuadStar star = q.vertex_star(ws);
    std::vector<int> out;
    for (const QuadCorner& c : star.corners)
        if (q.colors[c.diag] == VertexColor::white_c) out.push_back(c.diag);
    return out;
}

}  // namespace

MinimalityReport is_discrete_minimal(const SIsothermicSurface& s) {
    MinimalityReport rep;
    for (const auto& [ws, sphere] : s.spheres) {
        const std::vector<int> wc = circle_neighbors(s.quad, ws);
        if (wc.size() < 3) {
            rep.underdetermined++;
            continue;
        }
        std::vector<Point3> pts = {sphere.center};
        for (int v : wc) pts.push_back(s.circles.at(v).center);
        double defect = 0.0;
        fit_plane(pts, &defect);
        defect /= sphere.radius;
        rep.per_sphere.push_back({ws, defect});
        rep.max_defect = std::max(rep.max_defect, defect);
    }
    return rep;
}

double gauss_map_normal_defect(const SIsothermicSurface& minimal, const SIsothermicSurface& gauss) {
    double worst = 0.0;
    for (const auto& [ws, sphere] : minimal.spheres) {
        const std::vector<int> wc = circle_neighbors(minimal.quad, ws);
        if (wc.size() < 3) continue;
        std::vector<Point3> pts = {sphere.center};
        for (int v : wc) pts.push_back(minimal.circles.at(v).center);
        const Point3 normal = fit_plane(pts, nullptr);
        const Point3 n_dir = normalized(gauss.quad.positions[ws]);
        const double ang = std::atan2(cross(normal, n_dir).norm(), std::abs(dot(normal, n_dir)));
        worst = std::max(worst, ang);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Enneper
// ---------------------------------------------------------------------------

namespace {

// Cyclic neighbor order (east, north, west, south) restricted to the grid,
// rotated so that boundary chains start after the gap.
std::vector<int> grid_rotation(int i, int j, const std::map<std::pair<int, int>, int>& id) {
    const std::array<std::pair<int, int>, 4> dirs = {{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    std::array<int, 4> nbr;
    int gap = -1;
    for (int d = 0; d < 4; ++d) {
        const auto it = id.find({i + dirs[d].first, j + dirs[d].second});
        nbr[d] = it == id.end() ? -1 : it->second;
        if (nbr[d] < 0) gap = d;
    }
    std::vector<int> rot;
    for (int d = 0; d < 4; ++d) {
        const int k = nbr[(gap + 1 + d) % 4];  // gap == -1 starts at east
        if (k >= 0) rot.push_back(k);
    }
    return rot;
}

// Average the lifted tangency corner over the triples of cell vertices seen in
// the layout; spread records their disagreement.
Point2 corner_average(const PatternLayout& l, const std::array<int, 4>& cell_nodes, double* spread) {
    Point2 sum{0, 0};
    int cnt = 0;
    std::vector<Point2> seen;
    for (int skip = 0; skip < 4; ++skip) {
        std::array<int, 3> key;
        int t = 0;
        for (int i = 0; i < 4; ++i)
            if (i != skip) key[t++] = cell_nodes[i];
        std::sort(key.begin(), key.end());
        const auto it = l.corners.find(key);
        if (it == l.corners.end()) continue;
        sum = sum + it->second;
        seen.push_back(it->second);
        ++cnt;
    }
    if (cnt == 0) throw std::runtime_error("corner_average: tangency corner missing from layout");
    const Point2 avg = sum * (1.0 / cnt);
    if (spread)
        for (const Point2& p : seen) *spread = std::max(*spread, (p - avg).norm());
    return avg;
}

BuiltSurface finish_pipeline(BuiltSurface&& built, QuadGraph&& quad, std::map<int, Circle3>&& circles,
                             std::map<int, Point3>&& blacks, int dual_base_vertex) {
    KoebeInput in;
    in.quad = std::move(quad);
    in.circles = std::move(circles);
    in.black_points = std::move(blacks);
    built.koebe = koebe_polyhedron(in);
    built.gauss_checks = check_s_isothermic(built.koebe.surface);

    built.minimal = dual_s_isothermic(built.koebe.surface, &built.dual_closing_defect);
    if (dual_base_vertex >= 0) {
        const Point3 shift = built.minimal.quad.positions[dual_base_vertex];
        for (Point3& p : built.minimal.quad.positions) p -= shift;
        for (auto& [v, sp] : built.minimal.spheres) sp.center -= shift;
        for (auto& [v, c] : built.minimal.circles) c.center -= shift;
        for (auto& [v, p] : built.minimal.contacts) p -= shift;
    }
    built.minimal_checks = check_s_isothermic(built.minimal);
    built.minimality = is_discrete_minimal(built.minimal);
    built.gauss_normal_defect = gauss_map_normal_defect(built.minimal, built.koebe.surface);
    return std::move(built);
}

}  // namespace

BuiltSurface build_enneper(int n) {
    if (n < 1) throw std::invalid_argument("build_enneper: n must be at least 1");
    const int side = 2 * n + 1;
    BuiltSurface built;

    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> coord;
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j) {
            id[{i, j}] = static_cast<int>(coord.size());
            coord.push_back({i, j});
        }

    PatternProblem& p = built.problem;
    for (int v = 0; v < side * side; ++v) {
        const auto [i, j] = coord[v];
        const bool bx = std::abs(i) == n, by = std::abs(j) == n;
        // Nominal angles of the regular pattern: full, straight-boundary and
        // quadrant-corner circles.
        const double phi = bx && by ? pi : (bx || by ? 1.5 * pi : 2 * pi);
        p.add_neumann(bx || by ? NodeRole::boundary : NodeRole::interior, phi);
    }
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j) {
            if (i < n) p.add_adjacency(id[{i, j}], id[{i + 1, j}]);
            if (j < n) p.add_adjacency(id[{i, j}], id[{i, j + 1}]);
        }
    p.rotations.resize(p.node_count());
    for (int v = 0; v < p.node_count(); ++v)
        p.rotations[v] = grid_rotation(coord[v].first, coord[v].second, id);

    built.solution = solve(p, 1e-11, 50);
    if (!built.solution.converged)
        throw std::runtime_error("build_enneper: pattern solve failed: " + built.solution.failure);

    built.layout_problem = p;
    built.layout_rho = built.solution.rho;
    // Keep every lifted circle away from a great-circle position (the unit
    // planar circle at the origin would lift to the equator).
    for (double& r : built.layout_rho) r += std::log(0.55);
    LayoutSeed seed;
    seed.node = id[{0, 0}];
    seed.neighbor = id[{1, 0}];
    seed.angle = 0.0;
    built.layout = layout(p, built.layout_rho, {}, seed);
    built.spherical = lift_pattern_to_sphere(p, built.layout);

    // S-quad-graph of the patch: whites at grid nodes (even sublattice carries
    // the spheres), blacks at the cells, one quad per interior grid edge. The
    // four extreme grid corners touch no quad and stay out of the complex.
    const int nw = side * side;
    std::map<std::pair<int, int>, int> cell_id;
    int vc = nw;
    for (int i = -n; i < n; ++i)
        for (int j = -n; j < n; ++j) cell_id[{i, j}] = vc++;
    std::vector<std::array<int, 4>> raw_quads;
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j) {
            if (i < n && j > -n && j < n)  // horizontal edge, cells below/above
                raw_quads.push_back({id[{i, j}], cell_id[{i, j - 1}], id[{i + 1, j}], cell_id[{i, j}]});
            if (j < n && i > -n && i < n)  // vertical edge, cells east/west
                raw_quads.push_back({id[{i, j}], cell_id[{i, j}], id[{i, j + 1}], cell_id[{i - 1, j}]});
        }
    std::vector<int> compact(vc, -1);
    std::vector<int> original;
    for (auto& qd : raw_quads)
        for (int& v : qd) {
            if (compact[v] < 0) {
                compact[v] = static_cast<int>(original.size());
                original.push_back(v);
            }
            v = compact[v];
        }
    QuadGraph quad(static_cast<int>(original.size()), std::move(raw_quads));
    quad.colors.resize(original.size());
    built.quad_to_node.assign(original.size(), -1);
    std::map<int, Circle3> circles;
    std::map<int, Point3> blacks;
    for (size_t v = 0; v < original.size(); ++v) {
        const int ov = original[v];
        if (ov < nw) {
            built.quad_to_node[v] = ov;
            const auto [i, j] = coord[ov];
            quad.colors[v] = (i + j) % 2 == 0 ? VertexColor::white_s : VertexColor::white_c;
            circles[static_cast<int>(v)] = built.spherical.circles[ov];
        } else {
            quad.colors[v] = VertexColor::black;
            const int ci = ov - nw;
            const int i = ci / (2 * n) - n, j = ci % (2 * n) - n;
            const std::array<int, 4> cell_nodes = {id[{i, j}], id[{i + 1, j}], id[{i + 1, j + 1}],
                                                   id[{i, j + 1}]};
            const Point2 w = corner_average(built.layout, cell_nodes, &built.corner_spread);
            blacks[static_cast<int>(v)] = stereographic_to_sphere(w.x, w.y);
        }
    }
    return finish_pipeline(std::move(built), std::move(quad), std::move(circles), std::move(blacks),
                           compact[id[{0, 0}]]);
}

// ---------------------------------------------------------------------------
// Schwarz-P
// ---------------------------------------------------------------------------

namespace {

struct CubeLattice {
    int a, b, c;
    std::map<std::array<int, 3>, int> id;
    std::vector<std::array<int, 3>> key;
    QuadGraph quad;  // the closed refined-cube surface

    int vid(const std::array<int, 3>& k) const { return id.at(k); }
    static bool white(const std::array<int, 3>& k) { return (k[0] + k[1] + k[2]) % 2 == 0; }
    VertexColor color(const std::array<int, 3>& k) const {
        if (!white(k)) return VertexColor::black;
        const bool all_even = k[0] % 2 == 0 && k[1] % 2 == 0 && k[2] % 2 == 0;
        return all_even ? VertexColor::white_c : VertexColor::white_s;
    }
};

// Outward-oriented cells of one box face; axis = fixed coordinate, hi = which
// side, (u, v) chosen so the cell order is counterclockwise seen from outside.
struct FaceFrame {
    int axis;  // 0,1,2
    bool hi;
    std::array<int, 3> at(int u, int v, int a, int b, int c) const {
        std::array<int, 3> k{};
        const int ext[3] = {a, b, c};
        k[axis] = hi ? ext[axis] : 0;
        const int ua = uaxis(), va = vaxis();
        k[ua] = u;
        k[va] = v;
        return k;
    }
    int uaxis() const { return axis == 0 ? 1 : (axis == 1 ? 2 : 0); }
    int vaxis() const { return axis == 0 ? 2 : (axis == 1 ? 0 : 1); }
    int ulen(int a, int b, int c) const { const int e[3] = {a, b, c}; return e[uaxis()]; }
    int vlen(int a, int b, int c) const { const int e[3] = {a, b, c}; return e[vaxis()]; }
    std::array<std::array<int, 3>, 4> cell(int u, int v, int a, int b, int c) const {
        // (u, v) right-handed around the outward normal on the hi side.
        std::array<std::array<int, 3>, 4> q = {at(u, v, a, b, c), at(u + 1, v, a, b, c),
                                               at(u + 1, v + 1, a, b, c), at(u, v + 1, a, b, c)};
        if (!hi) std::swap(q[1], q[3]);
        return q;
    }
};

constexpr std::array<FaceFrame, 6> kFaces = {{{2, true}, {2, false}, {0, true}, {0, false}, {1, true}, {1, false}}};

CubeLattice make_cube_lattice(int a, int b, int c) {
    CubeLattice lat;
    lat.a = a;
    lat.b = b;
    lat.c = c;
    auto intern = [&](const std::array<int, 3>& k) {
        auto it = lat.id.find(k);
        if (it != lat.id.end()) return it->second;
        const int v = static_cast<int>(lat.key.size());
        lat.id[k] = v;
        lat.key.push_back(k);
        return v;
    };
    std::vector<std::array<int, 4>> cells;
    for (const FaceFrame& f : kFaces)
        for (int u = 0; u < f.ulen(a, b, c); ++u)
            for (int v = 0; v < f.vlen(a, b, c); ++v) {
                const auto q = f.cell(u, v, a, b, c);
                cells.push_back({intern(q[0]), intern(q[1]), intern(q[2]), intern(q[3])});
            }
    lat.quad = QuadGraph(static_cast<int>(lat.key.size()), std::move(cells));
    lat.quad.colors.resize(lat.key.size());
    for (size_t v = 0; v < lat.key.size(); ++v) lat.quad.colors[v] = lat.color(lat.key[v]);
    return lat;
}

std::array<int, 2> cell_whites(const CubeLattice& lat, const std::array<int, 4>& cell) {
    std::array<int, 2> w = {-1, -1};
    int t = 0;
    for (int v : cell)
        if (CubeLattice::white(lat.key[v])) w[t++] = v;
    if (t != 2) throw std::logic_error("cell without exactly two white corners");
    return w;
}

// Boundary cycle of a disc-like quad-graph.
std::vector<int> boundary_cycle(const QuadGraph& q) {
    std::map<int, std::vector<int>> next;  // boundary adjacency
    int start = -1;
    for (const QuadEdge& e : q.edges()) {
        if (!e.boundary()) continue;
        next[e.a].push_back(e.b);
        next[e.b].push_back(e.a);
        start = e.a;
    }
    std::vector<int> cycle;
    if (start < 0) return cycle;
    int prev = -1, cur = start;
    do {
        cycle.push_back(cur);
        const auto& nb = next.at(cur);
        if (nb.size() != 2) throw std::runtime_error("boundary_cycle: boundary is not a single cycle");
        const int nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
    } while (cur != start && cycle.size() <= next.size());
    if (cur != start) throw std::runtime_error("boundary_cycle: boundary walk failed to close");
    return cycle;
}

}  // namespace

BuiltSurface build_schwarz_p(int m, int n, int k) {
    if (m < 2 || n < 2 || k < 2 || m % 2 || n % 2 || k % 2)
        throw std::invalid_argument("build_schwarz_p: even integers >= 2 required");

    // Pole axis: the pole vertices (face centers of the remaining axis) must be
    // white; some permutation always qualifies.
    std::array<int, 3> dims = {m, n, k};
    const std::array<std::array<int, 3>, 3> perms = {{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
    int a = -1, b = -1, c = -1;
    for (const auto& pm : perms) {
        const int aa = dims[pm[0]], bb = dims[pm[1]], cc = dims[pm[2]];
        if ((aa / 2 + bb / 2) % 2 == 0) {
            a = aa;
            b = bb;
            c = cc;
            break;
        }
    }
    if (a < 0) throw std::logic_error("build_schwarz_p: no admissible pole axis");

    const CubeLattice lat = make_cube_lattice(a, b, c);
    BuiltSurface built;

    // --- quarter (wedge) problem -------------------------------------------
    // Fold by the two mirrors through the pole axis; the far pole and its
    // diagonal neighbors are pinned (the projected far-pole circle surrounds
    // the pattern, so its neighbors' closure equations do not transfer to the
    // plane; the pins follow exactly from the fold of the far-pole closure).
    const std::array<int, 3> key_o = {a / 2, b / 2, 0};
    const std::array<int, 3> key_f = {a / 2, b / 2, c};
    const std::array<int, 3> key_d = {a / 2 + 1, b / 2 + 1, c};

    std::map<int, int> wedge_node;  // lattice vertex -> problem node
    PatternProblem& qp = built.problem;
    auto in_wedge = [&](const std::array<int, 3>& kk) { return kk[0] >= a / 2 && kk[1] >= b / 2; };
    for (int v = 0; v < lat.quad.vertex_count(); ++v) {
        const auto& kk = lat.key[v];
        if (!CubeLattice::white(kk) || !in_wedge(kk)) continue;
        PatternNode node;
        if (kk == key_f || kk == key_d) {
            node.data = NodeData::dirichlet;
            node.rho = 0.0;
            node.role = kk == key_f ? NodeRole::boundary : NodeRole::interior;
        } else {
            node.data = NodeData::neumann;
            const bool mx = kk[0] == a / 2, my = kk[1] == b / 2;
            node.phi = mx && my ? 0.5 * pi : (mx || my ? pi : 2.0 * pi);
            node.role = mx || my ? NodeRole::boundary : NodeRole::interior;
        }
        wedge_node[v] = qp.add_node(node);
    }
    for (int fi = 0; fi < lat.quad.face_count(); ++fi) {
        const auto& cell = lat.quad.face(fi);
        bool inside = true;
        for (int v : cell) inside = inside && in_wedge(lat.key[v]);
        if (!inside) continue;
        const auto w = cell_whites(lat, cell);
        qp.add_adjacency(wedge_node.at(w[0]), wedge_node.at(w[1]));
    }
    built.solution = solve(qp, 1e-11, 60);
    if (!built.solution.converged)
        throw std::runtime_error("build_schwarz_p: quarter pattern solve failed: " + built.solution.failure);

    // --- unfold to the full sphere pattern ----------------------------------
    auto rep_of = [&](const std::array<int, 3>& kk) {
        return std::array<int, 3>{std::max(kk[0], a - kk[0]), std::max(kk[1], b - kk[1]), kk[2]};
    };
    std::vector<double> rho_full(lat.quad.vertex_count(), 0.0);
    for (int v = 0; v < lat.quad.vertex_count(); ++v) {
        const auto& kk = lat.key[v];
        if (!CubeLattice::white(kk)) continue;
        rho_full[v] = built.solution.rho[wedge_node.at(lat.vid(rep_of(kk)))];
    }

    PatternProblem& fp = built.layout_problem;
    for (int v = 0; v < lat.quad.vertex_count(); ++v)
        fp.add_neumann(NodeRole::interior, 2.0 * pi);  // placeholder data; only rotations matter
    for (int fi = 0; fi < lat.quad.face_count(); ++fi) {
        const auto w = cell_whites(lat, lat.quad.face(fi));
        fp.add_adjacency(w[0], w[1]);
    }
    fp.rotations.assign(lat.quad.vertex_count(), {});
    for (int v = 0; v < lat.quad.vertex_count(); ++v) {
        if (!CubeLattice::white(lat.key[v])) continue;
        const QuadStar star = lat.quad.vertex_star(v);
        for (const QuadCorner& qc : star.corners) fp.rotations[v].push_back(qc.diag);
    }

    const int node_o = lat.vid(key_o), node_f = lat.vid(key_f);
    // The far-pole circle is the one the stereographic transfer turns inside
    // out; it is excluded from the breadth-first placement and restored
    // afterwards at the origin with its solved radius.
    LayoutSeed seed;
    seed.node = node_o;
    seed.neighbor = lat.vid({a / 2 + 1, b / 2 + 1, 0});
    seed.angle = 0.25 * pi;
    // Inversion-symmetric scale: the near- and far-pole radii multiply to 1.
    const double lambda = std::exp(-0.5 * (rho_full[node_o] + rho_full[node_f]));
    for (double& r : rho_full) r += std::log(lambda);
    built.layout_rho = rho_full;
    built.layout = layout(fp, rho_full, {node_f}, seed);
    built.layout.centers[node_f] = {0.0, 0.0};
    built.layout.radii[node_f] = std::exp(rho_full[node_f]);
    built.layout.placed[node_f] = 1;
    built.spherical = lift_pattern_to_sphere(fp, built.layout);

    std::map<int, Point3> black_sphere_point;
    for (int v = 0; v < lat.quad.vertex_count(); ++v) {
        if (CubeLattice::white(lat.key[v])) continue;
        std::array<int, 4> around{};
        const QuadStar star = lat.quad.vertex_star(v);
        if (star.corners.size() != 4) throw std::logic_error("black vertex without four quads");
        for (int i = 0; i < 4; ++i) around[i] = star.corners[i].prev;
        const Point2 w = corner_average(built.layout, around, &built.corner_spread);
        black_sphere_point[v] = stereographic_to_sphere(w.x, w.y);
    }

    // --- branched octant piece ----------------------------------------------
    // Double cover of the positive octant, branched at the cube corner: the
    // disc bounded by six mirror runs. The +Y/+Z cube edge is the branch cut.
    const std::array<int, 3> corner_key = {a, b, c};
    std::map<std::array<int, 4>, int> inst;  // (lattice key, side) -> piece vertex
    std::vector<int> inst_base;
    auto instance = [&](const std::array<int, 3>& kk, int face_axis, int sheet) {
        int side = sheet;
        if (kk == corner_key) side = 0;
        else if (kk[1] == b && kk[2] == c) side = face_axis == 1 ? sheet : 1 - sheet;  // branch cut
        const std::array<int, 4> key4 = {kk[0], kk[1], kk[2], kk == corner_key ? 0 : side};
        auto it = inst.find(key4);
        if (it != inst.end()) return it->second;
        const int v = static_cast<int>(inst_base.size());
        inst[key4] = v;
        inst_base.push_back(lat.vid(kk));
        return v;
    };
    std::vector<std::array<int, 4>> piece_cells;
    for (int sheet = 0; sheet < 2; ++sheet) {
        for (const FaceFrame& f : kFaces) {
            if (!f.hi) continue;
            int ulo = 0, vlo = 0;
            // octant portion of each positive face
            const int ua = f.uaxis(), va = f.vaxis();
            const int ext[3] = {a, b, c};
            ulo = ext[ua] / 2;
            vlo = ext[va] / 2;
            for (int u = ulo; u < ext[ua]; ++u)
                for (int v = vlo; v < ext[va]; ++v) {
                    const auto q = f.cell(u, v, a, b, c);
                    piece_cells.push_back({instance(q[0], f.axis, sheet), instance(q[1], f.axis, sheet),
                                           instance(q[2], f.axis, sheet), instance(q[3], f.axis, sheet)});
                }
        }
    }
    QuadGraph piece(static_cast<int>(inst_base.size()), std::move(piece_cells));
    piece.colors.resize(piece.vertex_count());
    for (int v = 0; v < piece.vertex_count(); ++v) piece.colors[v] = lat.quad.colors[inst_base[v]];
    built.quad_to_node = inst_base;

    std::map<int, Circle3> circles;
    std::map<int, Point3> blacks;
    for (int v = 0; v < piece.vertex_count(); ++v) {
        if (piece.colors[v] == VertexColor::black)
            blacks[v] = black_sphere_point.at(inst_base[v]);
        else
            circles[v] = built.spherical.circles[inst_base[v]];
    }

    const int corner_inst = inst.at({a, b, c, 0});
    built = finish_pipeline(std::move(built), std::move(piece), std::move(circles), std::move(blacks),
                            corner_inst);

    // --- boundary runs in the mirror planes ---------------------------------
    const QuadGraph& mq = built.minimal.quad;
    const std::vector<int> cycle = boundary_cycle(mq);
    auto mirror_count = [&](int piece_v) {
        const auto& kk = lat.key[inst_base[piece_v]];
        return (kk[0] == a / 2 ? 1 : 0) + (kk[1] == b / 2 ? 1 : 0) + (kk[2] == c / 2 ? 1 : 0);
    };
    std::vector<size_t> corners_on_cycle;
    for (size_t i = 0; i < cycle.size(); ++i)
        if (mirror_count(cycle[i]) >= 2) corners_on_cycle.push_back(i);
    if (corners_on_cycle.size() != 6)
        throw std::runtime_error("build_schwarz_p: expected six boundary corners, found " +
                                 std::to_string(corners_on_cycle.size()));
    for (size_t r = 0; r < corners_on_cycle.size(); ++r) {
        const size_t i0 = corners_on_cycle[r];
        const size_t i1 = corners_on_cycle[(r + 1) % corners_on_cycle.size()];
        std::vector<int> run;
        for (size_t i = i0;; i = (i + 1) % cycle.size()) {
            run.push_back(cycle[i]);
            if (i == i1) break;
        }
        built.boundary_runs.push_back(run);
    }
    double scale = 0.0;
    for (const Point3& p : mq.positions) scale = std::max(scale, p.norm());
    for (const auto& run : built.boundary_runs) {
        std::vector<Point3> pts;
        for (int v : run) pts.push_back(mq.positions[v]);
        double defect = 0.0;
        fit_plane(pts, &defect);
        built.max_boundary_plane_defect = std::max(built.max_boundary_plane_defect, defect / scale);
    }
    return built;
}

}  // namespace circlekit
