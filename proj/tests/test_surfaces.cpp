#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "circlekit/isothermic.hpp"
#include "circlekit/koebe.hpp"
#include "circlekit/minimal.hpp"
#include "circlekit/rng.hpp"
#include "circlekit/willmore.hpp"
#include "fixtures.hpp"

using namespace circlekit;
using namespace circlekit::testing;
using std::numbers::pi;

namespace {

// Planar grid of conformal squares (every face has cross-ratio -1).
QuadGraph square_grid_net(int m, int n) {
    std::vector<Point3> pos((m + 1) * (n + 1));
    auto id = [n](int i, int j) { return i * (n + 1) + j; };
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j) pos[id(i, j)] = {double(i), double(j), 0};
    std::vector<std::array<int, 4>> faces;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    QuadGraph q((m + 1) * (n + 1), std::move(faces));
    q.positions = std::move(pos);
    return q;
}

}  // namespace

TEST_CASE("conformal-square grid is exactly isothermic") {
    const QuadGraph q = square_grid_net(4, 4);
    for (const auto& r : is_discrete_isothermic(q)) CHECK(r.defect <= 1e-13);
    // And every face has quaternionic cross-ratio -1.
    for (const auto& f : q.faces()) {
        const Quaternion cr =
            cross_ratio(q.positions[f[0]], q.positions[f[1]], q.positions[f[2]], q.positions[f[3]]);
        CHECK((cr + Quaternion::identity()).norm() <= 1e-14);
    }
}

TEST_CASE("random circular nets are circular but not isothermic") {
    Rng rng(71);
    const QuadGraph q = random_circular_net(rng, 5, 5);
    for (double d : face_circularity(q)) CHECK(d <= 1e-10);
    double worst = 0.0;
    for (const auto& r : is_discrete_isothermic(q)) worst = std::max(worst, r.defect);
    CHECK(worst > 1e-3);

    // Non-circular face is rejected.
    QuadGraph bad = q;
    bad.positions[7] += Point3{0.05, 0.02, 0.2};
    CHECK_THROWS((void)is_discrete_isothermic(bad));
}

TEST_CASE("central sphere check") {
    Rng rng(72);
    // Generic circular net: next-neighbor spheres do not exist.
    const QuadGraph q = random_circular_net(rng, 5, 5);
    int tested = 0;
    double worst = 0.0;
    for (int v = 0; v < q.vertex_count(); ++v) {
        const QuadStar st = q.vertex_star(v);
        if (!st.closed) continue;
        const CentralSphereReport rep = central_sphere_check(q, v);
        if (!rep.degenerate) {
            worst = std::max(worst, rep.defect);
            ++tested;
        }
    }
    CHECK(tested > 0);
    CHECK(worst > 1e-4);

    // Planar net: flagged degenerate with zero defect.
    const QuadGraph flat = square_grid_net(4, 4);
    const CentralSphereReport rep = central_sphere_check(flat, 6);
    CHECK(rep.degenerate);
    CHECK(rep.defect <= 1e-12);
}

TEST_CASE("single orthogonal kite dualizes to the reciprocal kite") {
    // Kite with sphere-edge p and circle-edge q, right angles at the contacts.
    const double p = 1.3, q = 0.7;
    const double a = std::hypot(p, q);
    const double x0 = p * p / a, y0 = p * q / a;
    std::vector<Point3> pos = {{0, 0, 0}, {x0, y0, 0}, {a, 0, 0}, {x0, -y0, 0}};
    QuadGraph g(4, {{0, 1, 2, 3}});
    g.positions = pos;
    const IsothermicQuadSurface f = IsothermicQuadSurface::with_labels(g);
    const DualSurface d = dualize(f);
    CHECK(d.max_face_closing_defect <= 1e-14);
    // Dual edge lengths are the reciprocals.
    CHECK(distance(d.dual.positions[0], d.dual.positions[1]) == doctest::Approx(1 / p).epsilon(1e-12));
    CHECK(distance(d.dual.positions[1], d.dual.positions[2]) == doctest::Approx(1 / q).epsilon(1e-12));
    CHECK(distance(d.dual.positions[2], d.dual.positions[3]) == doctest::Approx(1 / q).epsilon(1e-12));
    CHECK(distance(d.dual.positions[3], d.dual.positions[0]) == doctest::Approx(1 / p).epsilon(1e-12));
    // Still an orthogonal kite: diagonals orthogonal, cross-ratio -1.
    const Point3 d1 = d.dual.positions[2] - d.dual.positions[0];
    const Point3 d2 = d.dual.positions[3] - d.dual.positions[1];
    CHECK(std::abs(dot(d1, d2)) <= 1e-12);
    const Quaternion cr = cross_ratio(d.dual.positions[0], d.dual.positions[1], d.dual.positions[2],
                                      d.dual.positions[3]);
    CHECK((cr + Quaternion::identity()).norm() <= 1e-12);
}

TEST_CASE("dualize rejects zero-length edges") {
    std::vector<Point3> pos = {{0, 0, 0}, {0, 0, 0}, {1, 1, 0}, {1, -1, 0}};
    QuadGraph g(4, {{0, 1, 2, 3}});
    g.positions = pos;
    IsothermicQuadSurface f;
    f.quad = g;
    f.edge_signs = {1, -1, 1, -1};
    CHECK_THROWS((void)dualize(f));
}

TEST_CASE("koebe polyhedron of the cube pattern") {
    const KoebeInput in = cube_pattern();
    CHECK(in.quad.check_coloring().empty());
    const KoebeResult res = koebe_polyhedron(in);

    REQUIRE(res.poly.vertices.size() == 8);
    for (const Point3& v : res.poly.vertices)
        CHECK(v.norm() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
    REQUIRE(res.poly.faces.size() == 6);
    REQUIRE(res.poly.edges.size() == 12);
    CHECK(res.poly.max_edge_tangency_defect <= 1e-10);
    CHECK(res.poly.max_face_planarity <= 1e-10);
    CHECK(res.poly.max_inscribed_defect <= 1e-10);
    for (const auto& e : res.poly.edges) CHECK(e.tangency.norm() == doctest::Approx(1.0).epsilon(1e-12));

    const SIsothermicChecks checks = check_s_isothermic(res.surface);
    CHECK(checks.incidence <= 1e-10);
    CHECK(checks.orthogonality <= 1e-8);
    CHECK(checks.sphere_tangency <= 1e-10);
    CHECK(checks.circle_tangency <= 1e-10);
    CHECK(checks.kite_cross_ratio <= 1e-10);

    // The round sphere itself is not minimal.
    const MinimalityReport gauss_min = is_discrete_minimal(res.surface);
    CHECK(gauss_min.max_defect > 0.05);

    // The closed cube structure carries no +/- labels (its corners have odd
    // degree); its dual lives on the branched double cover, which is what
    // build_schwarz_p(2,2,2) assembles from this very pattern.
    CHECK_THROWS((void)res.surface.quad.edge_sign_labels());
}

TEST_CASE("central extension of the cube pattern is isothermic") {
    const KoebeResult res = koebe_polyhedron(cube_pattern());
    const QuadGraph& q = res.surface.quad;
    for (const auto& r : is_discrete_isothermic(q, 1e-8)) CHECK(r.defect <= 1e-8);

    // Central spheres exist at every interior vertex of the kite mesh.
    for (int v = 0; v < q.vertex_count(); ++v) {
        const QuadStar st = q.vertex_star(v);
        if (!st.closed) continue;
        const CentralSphereReport rep = central_sphere_check(q, v);
        if (!rep.degenerate) CHECK(rep.defect <= 1e-7);
    }
}

TEST_CASE("inscribed refinement of the cube has zero Willmore energy") {
    const KoebeResult res = koebe_polyhedron(cube_pattern());
    const SimplicialSurface s = inscribed_refinement(res.poly);
    const SurfaceDiagnostics d = s.validate();
    CHECK(d.closed_manifold());
    CHECK(d.euler_characteristic == 2);
    for (const Point3& p : s.positions()) CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const EnergyReport e = willmore_total(s);
    CHECK(std::abs(e.total) <= 1e-7);
}

TEST_CASE("build_enneper pipeline") {
    const BuiltSurface b = build_enneper(2);
    CHECK(b.solution.converged);
    CHECK(b.solution.residual <= 1e-10);
    CHECK(b.layout.max_orthogonality_defect <= 1e-9);
    CHECK(b.layout.max_tangency_defect <= 1e-8);
    CHECK(b.spherical.max_angle_defect <= 1e-8);
    CHECK(b.corner_spread <= 1e-8);
    CHECK(b.koebe.poly.max_edge_tangency_defect <= 1e-8);
    CHECK(b.gauss_checks.max_defect() <= 1e-8);
    CHECK(b.dual_closing_defect <= 1e-10);
    CHECK(b.minimal_checks.kite_cross_ratio <= 1e-8);
    CHECK(b.minimal_checks.max_defect() <= 1e-7);
    CHECK(b.minimality.max_defect <= 1e-7);
    CHECK(b.gauss_normal_defect <= 1e-6);

    // Saddle with two-fold symmetry: the 180-degree rotation about the normal
    // axis at the center maps the surface to itself combinatorially via
    // (i,j) -> (-i,-j); check it does so positionally.
    const int n = 2, side = 2 * n + 1;
    std::vector<int> node_to_quad(side * side, -1);
    for (size_t v = 0; v < b.quad_to_node.size(); ++v)
        if (b.quad_to_node[v] >= 0) node_to_quad[b.quad_to_node[v]] = static_cast<int>(v);
    auto id = [&](int i, int j) { return node_to_quad[(i + n) * side + (j + n)]; };
    const QuadGraph& mq = b.minimal.quad;
    // Center the comparison at the central vertex.
    const Point3 c0 = mq.positions[id(0, 0)];
    double err = 0.0;
    double scale = 0.0;
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j) {
            if (id(i, j) < 0) continue;  // the four extreme grid corners are not in the complex
            REQUIRE(id(-i, -j) >= 0);
            const Point3 p = mq.positions[id(i, j)] - c0;
            const Point3 q = mq.positions[id(-i, -j)] - c0;
            scale = std::max(scale, p.norm());
            err = std::max(err, distance(Point3{-q.x, -q.y, q.z}, p));
        }
    CHECK(err <= 1e-6 * scale);
}

TEST_CASE("enneper dual-of-dual identity") {
    const BuiltSurface b = build_enneper(2);
    double closing = 0.0;
    const SIsothermicSurface back = dual_s_isothermic(b.minimal, &closing);
    CHECK(closing <= 1e-10);
    const QuadGraph& orig = b.koebe.surface.quad;
    const Point3 shift = back.quad.positions[0] - orig.positions[0];
    double err = 0.0, scale = 0.0;
    for (int v = 0; v < orig.vertex_count(); ++v) {
        err = std::max(err, distance(back.quad.positions[v] - shift, orig.positions[v]));
        scale = std::max(scale, orig.positions[v].norm());
    }
    CHECK(err <= 1e-10 * scale);
}

TEST_CASE("build_schwarz_p fundamental piece") {
    const BuiltSurface b = build_schwarz_p(2, 2, 2);
    CHECK(b.solution.converged);
    CHECK(b.solution.residual <= 1e-10);
    CHECK(b.layout.max_orthogonality_defect <= 1e-9);
    CHECK(b.spherical.max_angle_defect <= 1e-8);
    CHECK(b.koebe.poly.max_edge_tangency_defect <= 1e-8);
    CHECK(b.minimal_checks.kite_cross_ratio <= 1e-8);
    CHECK(b.dual_closing_defect <= 1e-10);
    CHECK(b.minimality.max_defect <= 1e-7);
    CHECK(b.max_boundary_plane_defect <= 1e-7);
    REQUIRE(b.boundary_runs.size() == 6);

    // The branch corner keeps six edges.
    const QuadGraph& mq = b.minimal.quad;
    int six_edged_c = 0;
    for (int v = 0; v < mq.vertex_count(); ++v)
        if (mq.colors[v] == VertexColor::white_c && mq.vertex_degree(v) == 6) ++six_edged_c;
    CHECK(six_edged_c == 1);

    // Quoted quarter data: pi/2 at the near-pole circle, pi on the mirror
    // lines, 2 pi inside; the far pole and its diagonal neighbor are the pins.
    int n_half_pi = 0, n_pi = 0, n_pins = 0;
    for (const PatternNode& node : b.problem.nodes) {
        if (node.data == NodeData::dirichlet) {
            ++n_pins;
            continue;
        }
        if (std::abs(node.phi - pi / 2) < 1e-12) ++n_half_pi;
        if (std::abs(node.phi - pi) < 1e-12) ++n_pi;
    }
    CHECK(n_half_pi == 1);
    CHECK(n_pins == 2);
    CHECK(n_pi >= 2);

    // Independent oracle: the 2,2,2 spherical pattern is the cube pattern, so
    // the corner caps sit at plane offset sqrt(2/3) and the face-center caps
    // at 1/sqrt(2), in some orthogonal frame. Offsets are frame-free.
    std::vector<double> offsets;
    for (int v = 0; v < b.layout_problem.node_count(); ++v) {
        if (!b.spherical.has_circle[v]) continue;
        offsets.push_back(spherical_circle_plane(b.spherical.circles[v]).offset);
    }
    REQUIRE(offsets.size() == 14);
    for (double h : offsets) {
        const bool corner_cap = std::abs(h - std::sqrt(2.0 / 3.0)) <= 1e-9;
        const bool face_cap = std::abs(h - std::sqrt(0.5)) <= 1e-9;
        CHECK((corner_cap || face_cap));
    }
}

TEST_CASE("schwarz central extension is isothermic around the branch vertex") {
    const BuiltSurface b = build_schwarz_p(4, 4, 4);
    const QuadGraph& q = b.koebe.surface.quad;
    // Interior vertices include the six-quad branch corner: the cross-ratio
    // product over its star must also close to 1.
    int max_degree_tested = 0;
    for (const auto& r : is_discrete_isothermic(q, 1e-7)) {
        CHECK(r.defect <= 1e-8);
        max_degree_tested = std::max(max_degree_tested,
                                     static_cast<int>(q.vertex_star(r.vertex).corners.size()));
    }
    CHECK(max_degree_tested == 6);

    const QuadGraph& mqd = b.minimal.quad;
    for (const auto& r : is_discrete_isothermic(mqd, 1e-7)) CHECK(r.defect <= 1e-8);
}

TEST_CASE("schwarz quarter satisfies the folded closures at the pins") {
    const BuiltSurface b = build_schwarz_p(4, 4, 4);
    const PatternProblem& p = b.problem;
    const std::vector<double> g = gradient_S(p, b.solution.rho);
    for (int j = 0; j < p.node_count(); ++j)
        if (p.nodes[j].data == NodeData::neumann) CHECK(std::abs(g[j]) <= 1e-9);

    // Far pole F: folded closure 2 arctan e^(rho_D - rho_F) = pi/2 over its one
    // folded neighbor class. The pinned diagonal partner D satisfies the
    // reversed relation sum_{k != F} arctan e^(rho_k - rho_D) = arctan e^(rho_F - rho_D),
    // the planar trace of the far-pole circle surrounding the pattern.
    int fnode = -1, dnode = -1;
    for (int j = 0; j < p.node_count(); ++j) {
        if (p.nodes[j].data != NodeData::dirichlet) continue;
        if (p.neighbors()[j].size() == 1)
            fnode = j;
        else
            dnode = j;
    }
    REQUIRE(fnode >= 0);
    REQUIRE(dnode >= 0);
    const auto& rho = b.solution.rho;
    CHECK(2 * std::atan(std::exp(rho[p.neighbors()[fnode][0]] - rho[fnode])) ==
          doctest::Approx(pi / 2).epsilon(1e-9));
    double sum_others = 0.0, f_term = 0.0;
    for (int k : p.neighbors()[dnode]) {
        if (k == fnode)
            f_term = std::atan(std::exp(rho[k] - rho[dnode]));
        else
            sum_others += std::atan(std::exp(rho[k] - rho[dnode]));
    }
    CHECK(sum_others == doctest::Approx(f_term).epsilon(1e-8));
}

TEST_CASE("schwarz 4,4,4 has substantive minimality and symmetry") {
    const BuiltSurface b = build_schwarz_p(4, 4, 4);
    CHECK(b.solution.residual <= 1e-10);
    CHECK(b.minimality.max_defect <= 1e-7);
    CHECK(!b.minimality.per_sphere.empty());
    CHECK(b.max_boundary_plane_defect <= 1e-7);
    CHECK(b.gauss_normal_defect <= 1e-6);

    // m=n=k: the piece is invariant under the 3-fold rotation (x,y,z)->(y,z,x)
    // fixing the branch corner (placed at the origin).
    const QuadGraph& mq = b.minimal.quad;
    double scale = 0.0;
    for (const Point3& p : mq.positions) scale = std::max(scale, p.norm());
    double worst = 0.0;
    for (const auto& [ws, sp] : b.minimal.spheres) {
        (void)ws;
        const Point3 rot{sp.center.y, sp.center.z, sp.center.x};
        double best = 1e300;
        for (const auto& [w2, sp2] : b.minimal.spheres) {
            (void)w2;
            best = std::min(best, distance(rot, sp2.center));
        }
        worst = std::max(worst, best);
    }
    CHECK(worst <= 1e-6 * scale);
}

TEST_CASE("schwarz asymmetric dimensions build") {
    const BuiltSurface b = build_schwarz_p(2, 4, 2);
    CHECK(b.solution.converged);
    CHECK(b.minimality.max_defect <= 1e-7);
    CHECK(b.max_boundary_plane_defect <= 1e-7);
    CHECK_THROWS((void)build_schwarz_p(3, 2, 2));
    CHECK_THROWS((void)build_schwarz_p(2, 0, 2));
}

TEST_CASE("flat s-isothermic patch is minimal and violates locality") {
    // Planar Schramm patch: unit circles and spheres in the z = 0 plane.
    const int n = 2;
    auto build = [&] {
        SIsothermicSurface s;
        std::map<std::pair<int, int>, int> wid;
        std::map<std::pair<int, int>, int> bid;
        std::vector<Point3> pos;
        std::vector<VertexColor> col;
        const double sp = std::sqrt(2.0);
        for (int i = -n; i <= n; ++i)
            for (int j = -n; j <= n; ++j) {
                wid[{i, j}] = static_cast<int>(pos.size());
                pos.push_back({sp * i, sp * j, 0});
                col.push_back((i + j) % 2 == 0 ? VertexColor::white_s : VertexColor::white_c);
            }
        for (int i = -n; i < n; ++i)
            for (int j = -n; j < n; ++j) {
                bid[{i, j}] = static_cast<int>(pos.size());
                pos.push_back({sp * (i + 0.5), sp * (j + 0.5), 0});
                col.push_back(VertexColor::black);
            }
        std::vector<std::array<int, 4>> quads;
        for (int i = -n; i <= n; ++i)
            for (int j = -n; j <= n; ++j) {
                if (i < n && j > -n && j < n)
                    quads.push_back({wid[{i, j}], bid[{i, j - 1}], wid[{i + 1, j}], bid[{i, j}]});
                if (j < n && i > -n && i < n)
                    quads.push_back({wid[{i, j}], bid[{i, j}], wid[{i, j + 1}], bid[{i - 1, j}]});
            }
        // Compact away the four unused grid corners.
        std::vector<int> remap(pos.size(), -1);
        std::vector<Point3> cpos;
        std::vector<VertexColor> ccol;
        for (auto& qd : quads)
            for (int& v : qd) {
                if (remap[v] < 0) {
                    remap[v] = static_cast<int>(cpos.size());
                    cpos.push_back(pos[v]);
                    ccol.push_back(col[v]);
                }
                v = remap[v];
            }
        QuadGraph q(static_cast<int>(cpos.size()), std::move(quads));
        q.positions = cpos;
        q.colors = ccol;
        for (int v = 0; v < q.vertex_count(); ++v) {
            if (q.colors[v] == VertexColor::white_s)
                s.spheres[v] = Sphere3{q.positions[v], 1.0};
            else if (q.colors[v] == VertexColor::white_c)
                s.circles[v] = Circle3{q.positions[v], 1.0, {0, 0, 1}, +1};
            else
                s.contacts[v] = q.positions[v];
        }
        s.quad = std::move(q);
        return s;
    };
    const SIsothermicSurface flat = build();
    const SIsothermicChecks checks = check_s_isothermic(flat);
    CHECK(checks.incidence <= 1e-12);
    CHECK(checks.sphere_tangency <= 1e-12);
    const MinimalityReport rep = is_discrete_minimal(flat);
    CHECK(rep.max_defect <= 1e-12);  // plane: zero out-of-plane defect
    // Distant kites are all coplanar here: the locality diagnostic fires.
    CHECK(coplanar_distant_kites(flat) > 0);
}

TEST_CASE("built surfaces satisfy the locality condition") {
    const BuiltSurface e = build_enneper(2);
    CHECK(coplanar_distant_kites(e.minimal) == 0);
}

TEST_CASE("schwarz layout is mirror-symmetric and its lift is equator-symmetric") {
    const BuiltSurface b = build_schwarz_p(4, 4, 4);
    const PatternLayout& l = b.layout;
    // Reflect the placed circles across the x-axis: the set of (center, radius)
    // pairs must be reproduced.
    double scale = 0.0;
    for (size_t v = 0; v < l.centers.size(); ++v)
        if (l.placed[v]) scale = std::max(scale, l.centers[v].norm() + l.radii[v]);
    for (int axis = 0; axis < 2; ++axis) {
        double worst = 0.0;
        for (size_t v = 0; v < l.centers.size(); ++v) {
            if (!l.placed[v]) continue;
            const Point2 want = axis == 0 ? Point2{l.centers[v].x, -l.centers[v].y}
                                          : Point2{-l.centers[v].x, l.centers[v].y};
            double best = 1e300;
            for (size_t w = 0; w < l.centers.size(); ++w) {
                if (!l.placed[w]) continue;
                best = std::min(best, (l.centers[w] - want).norm() +
                                          std::abs(l.radii[w] - l.radii[v]));
            }
            worst = std::max(worst, best);
        }
        CHECK(worst <= 1e-8 * scale);
    }
    // Lifted pattern symmetric under z -> -z: plane offsets match as a set.
    double worst = 0.0;
    for (size_t v = 0; v < b.spherical.circles.size(); ++v) {
        if (!b.spherical.has_circle[v]) continue;
        const Plane3 pl = spherical_circle_plane(b.spherical.circles[v]);
        const Point3 want{pl.normal.x, pl.normal.y, -pl.normal.z};
        double best = 1e300;
        for (size_t w = 0; w < b.spherical.circles.size(); ++w) {
            if (!b.spherical.has_circle[w]) continue;
            const Plane3 qp = spherical_circle_plane(b.spherical.circles[w]);
            best = std::min(best, distance(qp.normal, want) + std::abs(qp.offset - pl.offset));
        }
        worst = std::max(worst, best);
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("lifted circles match the three-point circumcircle oracle") {
    Rng rng(73);
    for (int t = 0; t < 100; ++t) {
        const double cx = rng.uniform(-3, 3), cy = rng.uniform(-3, 3), r = rng.uniform(0.2, 2.5);
        const Circle3 lifted = stereographic_lift_circle(cx, cy, r);
        const Circle3 oracle =
            circumcircle(stereographic_to_sphere(cx + r, cy), stereographic_to_sphere(cx - r, cy),
                         stereographic_to_sphere(cx, cy + r));
        CHECK(distance(lifted.center, oracle.center) <= 1e-11);
        CHECK(lifted.radius == doctest::Approx(oracle.radius).epsilon(1e-11));
        // Same carrier and the same traversal orientation.
        CHECK(distance(lifted.normal, oracle.normal) <= 1e-10);
    }
}

namespace {

// Independent spherical-cap solve of the Schwarz-P pattern: unknown cap angles
// gamma per mirror-folded white vertex, closure sum_k 2 arctan(tan gamma_k /
// sin gamma_j) = 2 pi over the distinct neighbors (the branch corners' doubled
// arcs fill 4 pi, which folds to the same equation). No dilogarithm, planar
// transfer or layout involved.
struct SphericalCapOracle {
    int dim[3];
    std::map<std::array<int, 3>, int> rep_index;
    std::vector<std::array<int, 3>> reps;
    std::vector<std::vector<int>> nbr_reps;  // distinct lattice neighbors, folded

    static bool on_surface(const std::array<int, 3>& k, const int d[3]) {
        return k[0] == 0 || k[0] == d[0] || k[1] == 0 || k[1] == d[1] || k[2] == 0 || k[2] == d[2];
    }

    explicit SphericalCapOracle(int a, int b, int c) {
        dim[0] = a;
        dim[1] = b;
        dim[2] = c;
        auto fold = [&](std::array<int, 3> k) {
            for (int t = 0; t < 3; ++t) k[t] = std::max(k[t], dim[t] - k[t]);
            return k;
        };
        // Whites adjacent in the pattern sit diagonally across surface cells:
        // both lattice coordinates of a shared cell differ by one in the two
        // free directions of the cell's face.
        auto whites_adjacent = [&](const std::array<int, 3>& p, const std::array<int, 3>& q) {
            int same = -1;
            for (int t = 0; t < 3; ++t)
                if (p[t] == q[t] && (p[t] == 0 || p[t] == dim[t])) same = t;
            if (same < 0) return false;
            int diff = 0;
            for (int t = 0; t < 3; ++t) diff += std::abs(p[t] - q[t]) == 1;
            return diff == 2 && std::abs(p[(same + 1) % 3] - q[(same + 1) % 3]) <= 1 &&
                   std::abs(p[(same + 2) % 3] - q[(same + 2) % 3]) <= 1;
        };
        // Enumerate folded representatives (octant surface whites).
        for (int i = dim[0] / 2; i <= dim[0]; ++i)
            for (int j = dim[1] / 2; j <= dim[1]; ++j)
                for (int l = dim[2] / 2; l <= dim[2]; ++l) {
                    const std::array<int, 3> k = {i, j, l};
                    if (!on_surface(k, dim) || (i + j + l) % 2) continue;
                    rep_index[k] = static_cast<int>(reps.size());
                    reps.push_back(k);
                }
        for (const auto& rep : reps) {
            // Distinct full-pattern neighbors of the representative, folded to
            // their classes with multiplicity (mirror vertices see symmetric
            // neighbor pairs as equal-radius but separate arcs).
            std::vector<int> nb;
            for (int drop = 0; drop < 3; ++drop) {
                const int u = (drop + 1) % 3, w = (drop + 2) % 3;
                for (int du : {-1, 1})
                    for (int dw : {-1, 1}) {
                        std::array<int, 3> q = rep;
                        q[u] += du;
                        q[w] += dw;
                        bool in_range = true;
                        for (int t = 0; t < 3; ++t) in_range &= q[t] >= 0 && q[t] <= dim[t];
                        if (!in_range || !on_surface(q, dim) || !whites_adjacent(rep, q)) continue;
                        nb.push_back(rep_index.at(fold(q)));
                    }
            }
            nbr_reps.push_back(nb);
        }
    }

    std::vector<double> residual(const std::vector<double>& gamma) const {
        std::vector<double> r(reps.size());
        for (size_t j = 0; j < reps.size(); ++j) {
            double covered = 0.0;
            for (int k : nbr_reps[j])
                covered += 2 * std::atan(std::tan(gamma[k]) / std::sin(gamma[j]));
            r[j] = covered - 2 * std::numbers::pi;
        }
        return r;
    }

    std::vector<double> solve() const {
        const int n = static_cast<int>(reps.size());
        std::vector<double> gamma(n, 0.6);
        for (int it = 0; it < 80; ++it) {
            const std::vector<double> r0 = residual(gamma);
            double rmax = 0.0;
            for (double v : r0) rmax = std::max(rmax, std::abs(v));
            if (rmax < 1e-13) break;
            Eigen::MatrixXd jac(n, n);
            const double h = 1e-7;
            for (int c = 0; c < n; ++c) {
                std::vector<double> g2 = gamma;
                g2[c] += h;
                const std::vector<double> r1 = residual(g2);
                for (int rr = 0; rr < n; ++rr) jac(rr, c) = (r1[rr] - r0[rr]) / h;
            }
            Eigen::VectorXd rhs(n);
            for (int rr = 0; rr < n; ++rr) rhs[rr] = -r0[rr];
            const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(rhs);
            double damp = 1.0;
            for (int rr = 0; rr < n; ++rr)
                while (gamma[rr] + damp * step[rr] < 0.05 || gamma[rr] + damp * step[rr] > 1.5)
                    damp *= 0.5;
            for (int rr = 0; rr < n; ++rr) gamma[rr] += damp * step[rr];
        }
        return gamma;
    }
};

}  // namespace

TEST_CASE("schwarz caps match an independent spherical closure solve") {
    const SphericalCapOracle oracle(4, 4, 4);
    REQUIRE(oracle.reps.size() >= 8);
    const std::vector<double> gamma = oracle.solve();
    const std::vector<double> res = oracle.residual(gamma);
    for (double v : res) REQUIRE(std::abs(v) <= 1e-12);

    const BuiltSurface b = build_schwarz_p(4, 4, 4);
    // Compare plane offsets cos(gamma) of every lifted circle against the
    // folded independent solve. quad_to_node maps piece vertices to lattice
    // vertices of the builder's own lattice; instead fold through the problem
    // by matching offsets as multisets per folded class via the spherical
    // circles of the full pattern.
    int matched = 0;
    for (size_t v = 0; v < b.spherical.circles.size(); ++v) {
        if (!b.spherical.has_circle[v]) continue;
        const double h = spherical_circle_plane(b.spherical.circles[v]).offset;
        double best = 1e300;
        for (size_t r = 0; r < gamma.size(); ++r)
            best = std::min(best, std::abs(h - std::cos(gamma[r])));
        CHECK(best <= 1e-9);
        ++matched;
    }
    CHECK(matched == 50);  // the refined-cube surface has 50 white vertices

    // And every folded class is realized by some lifted circle.
    for (size_t r = 0; r < gamma.size(); ++r) {
        double best = 1e300;
        for (size_t v = 0; v < b.spherical.circles.size(); ++v) {
            if (!b.spherical.has_circle[v]) continue;
            best = std::min(best,
                            std::abs(spherical_circle_plane(b.spherical.circles[v]).offset -
                                     std::cos(gamma[r])));
        }
        CHECK(best <= 1e-9);
    }
}
