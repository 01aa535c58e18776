// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned in the check itself.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "circlekit/bending.hpp"
#include "circlekit/dilog.hpp"
#include "circlekit/generators.hpp"
#include "circlekit/hull.hpp"
#include "circlekit/layout.hpp"
#include "circlekit/minimal.hpp"
#include "circlekit/miquel.hpp"
#include "circlekit/pattern.hpp"
#include "circlekit/rng.hpp"
#include "circlekit/smooth_limit.hpp"
#include "circlekit/willmore.hpp"
#include "helpers.hpp"

using namespace circlekit;
using namespace circlekit::testing;
using std::numbers::pi;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool pass, const std::string& detail) {
    std::printf("[%s] A%02d %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

PatternProblem grid_problem(int n, bool dirichlet, Rng* jitter = nullptr) {
    PatternProblem p;
    auto id = [&](int i, int j) { return i * (n + 1) + j; };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const bool bi = i == 0 || i == n, bj = j == 0 || j == n;
            if (dirichlet && (bi || bj))
                p.add_dirichlet(NodeRole::boundary, jitter ? jitter->uniform(-0.4, 0.4) : 0.0);
            else if (bi && bj)
                p.add_neumann(NodeRole::boundary, pi);
            else if (bi || bj)
                p.add_neumann(NodeRole::boundary, 1.5 * pi);
            else
                p.add_neumann(NodeRole::interior, 2 * pi);
        }
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i < n) p.add_adjacency(id(i, j), id(i + 1, j));
            if (j < n) p.add_adjacency(id(i, j), id(i, j + 1));
        }
    p.rotations.assign(p.node_count(), {});
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            std::array<int, 4> nbr = {i < n ? id(i + 1, j) : -1, j < n ? id(i, j + 1) : -1,
                                      i > 0 ? id(i - 1, j) : -1, j > 0 ? id(i, j - 1) : -1};
            int gap = -1;
            for (int d = 0; d < 4; ++d)
                if (nbr[d] < 0) gap = d;
            for (int d = 0; d < 4; ++d) {
                const int k = nbr[(gap + 1 + d) % 4];
                if (k >= 0) p.rotations[id(i, j)].push_back(k);
            }
        }
    return p;
}

// --- criteria ---------------------------------------------------------------

void a01_inscribed_zero() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(101);
    std::vector<Point3> pts;
    for (int i = 0; i < 200; ++i) pts.push_back(rng.unit_vector());
    const SimplicialSurface hull = convex_hull(pts);
    const double w = willmore_total(hull).total;
    const double dt = seconds_since(t0);
    report(1, "inscribed 200-point hull has zero energy", std::abs(w) <= 1e-8 && dt < 5.0,
           fmt("|W| = %.3e, %.2fs", std::abs(w), dt));
}

void a02_moebius_invariance() {
    Rng rng(102);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const SimplicialSurface s = random_bumpy_mesh(rng, 40);
        const double w0 = willmore_total(s).total;
        const double radius = mesh_radius(s);
        MobiusMap m;
        m.atoms.push_back(rng.inversion_sphere(2.5 * radius));  // center outside the hull
        const double w1 = willmore_total(transformed(s, m)).total;
        worst = std::max(worst, std::abs(w1 - w0) / (1 + std::abs(w0)));
    }
    report(2, "Willmore energy invariant under random inversions", worst <= 1e-6,
           fmt("max |dW|/(1+|W|) = %.3e over 20 meshes", worst));
}

void a03_steinitz() {
    Rng rng(103);
    const std::array<Point3, 4> tetra = {Point3{1, 1, 1}, Point3{1, -1, -1}, Point3{-1, 1, -1},
                                         Point3{-1, -1, 1}};
    double min_slack = 1e300;
    int realizations = 0;
    while (realizations < 50) {
        std::array<double, 6> params;
        for (double& v : params) v = rng.uniform(0.2, 0.8);
        SimplicialSurface s;
        try {
            s = make_miquel_polyhedron(tetra, params);
        } catch (const std::exception&) {
            continue;
        }
        // Random realization of the combinatorics: displace the face vertices.
        for (int w = 10; w < 14; ++w) s.positions()[w] += 0.25 * rng.point_in_box(1.0);
        double w_total;
        try {
            w_total = willmore_total(s).total;
        } catch (const std::exception&) {
            continue;  // a displacement degenerated a face
        }
        ++realizations;
        min_slack = std::min(min_slack, w_total - steinitz_bound(s));
    }
    double miquel_err = 0.0;
    for (int t = 0; t < 10; ++t) {
        std::array<double, 6> params;
        for (double& v : params) v = rng.uniform(0.3, 0.7);
        const SimplicialSurface s = make_miquel_polyhedron(tetra, params);
        miquel_err = std::max(miquel_err, std::abs(willmore_total(s).total - 2 * pi));
    }
    report(3, "Steinitz bound and exact 2*pi construction", min_slack >= -1e-8 && miquel_err <= 1e-7,
           fmt("min W-2pi slack = %.3e, |W-2pi| = %.3e", min_slack, miquel_err));
}

void a04_smooth_limit() {
    Rng rng(104);
    double q_err = 0.0;
    for (int t = 0; t < 10; ++t)
        q_err = std::max(q_err,
                         std::abs(quotient_Q({rng.uniform(0, pi / 2 - 1e-9), pi / 3, pi / 3}) - 1.5));
    double ratio_err = 0.0;
    for (int t = 0; t < 10; ++t) {
        double k1 = rng.uniform(-2, 2), k2 = rng.uniform(-2, 2);
        while (std::abs(k1 - k2) < 0.5) k2 = rng.uniform(-2, 2);
        LatticeAngles phi;
        do {
            phi.phi1 = rng.uniform(0, pi / 2 - 0.15);
            phi.phi2 = rng.uniform(0.5, pi / 2 - 0.1);
            phi.phi3 = rng.uniform(0.5, pi / 2 - 0.1);
        } while (!phi.in_moduli_space() || phi.phi2 + phi.phi3 < pi / 2 + 0.1);
        const SimplicialSurface hex = model_hexagon(k1, k2, phi, 1e-3);
        const double share = 0.5 * willmore_local(hex, 0);
        const double smooth = (k1 - k2) * (k1 - k2) * model_hexagon_area_weight(phi, 1e-3) / 4.0;
        ratio_err = std::max(ratio_err, std::abs(share / smooth - quotient_Q(phi)) / quotient_Q(phi));
    }
    report(4, "smooth-limit quotient (equilateral 3/2; hexagon ratio)",
           q_err <= 1e-12 && ratio_err <= 1e-2,
           fmt("|Q-1.5| = %.3e, ratio rel err = %.3e", q_err, ratio_err));
}

void a05_bending() {
    Rng rng(105);
    double worst = 0.0;
    int done = 0;
    while (done < 50) {
        const double l1 = rng.uniform(0.4, 2), l2 = rng.uniform(0.4, 2), l3 = rng.uniform(0.4, 2);
        if (std::abs(std::cos(beta_of_theta(l1, l2, l3, 0))) > 0.9) continue;
        ++done;
        const double h = 1e-3;
        const double quad = (beta_of_theta(l1, l2, l3, h) - beta_of_theta(l1, l2, l3, 0)) / (h * h);
        const double expect = (2 * l3) / (4 * (l1 + l2));
        worst = std::max(worst, std::abs(quad - expect) / expect);
    }
    report(5, "bending quadratic coefficient l/(4L)", worst <= 1e-4,
           fmt("max rel err = %.3e over 50 pairs", worst));
}

void a06_solver() {
    Rng rng(106);
    // Random problems: gradient and Hessian against finite differences.
    double grad_err = 0.0, hess_err = 0.0, psd_min = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 10 + trial * 40;
        PatternProblem p;
        for (int i = 0; i < n; ++i) p.add_neumann(NodeRole::interior, rng.uniform(1.0, 6.0));
        p.nodes[0].data = NodeData::dirichlet;
        for (int i = 1; i < n; ++i) p.add_adjacency(i, rng.uniform_int(0, i - 1));
        std::vector<double> rho(n);
        for (double& r : rho) r = rng.uniform(-0.8, 0.8);
        const auto g = gradient_S(p, rho);
        const auto h = hessian_S(p, rho);
        for (int probe = 0; probe < 10; ++probe) {
            const int j = rng.uniform_int(1, n - 1);
            std::vector<double> up = rho, dn = rho;
            up[j] += 1e-6;
            dn[j] -= 1e-6;
            grad_err = std::max(grad_err,
                                std::abs((functional_S(p, up) - functional_S(p, dn)) / 2e-6 - g[j]) /
                                    (1 + std::abs(g[j])));
            const auto gu = gradient_S(p, up), gd = gradient_S(p, dn);
            for (int i = 1; i < n; ++i)  // row 0 is the Dirichlet pin
                hess_err = std::max(hess_err, std::abs((gu[i] - gd[i]) / 2e-6 - h.coeff(i, j)) /
                                                  (1 + std::abs(h.coeff(i, j))));
        }
        for (int probe = 0; probe < 20; ++probe) {
            Eigen::VectorXd x(n);
            for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1, 1);
            psd_min = std::min(psd_min, x.dot(h * x));
        }
    }
    // Square grid Dirichlet: zero solution, few steps.
    PatternProblem grid = grid_problem(8, true);
    const PatternSolution sol = solve(grid, 1e-10, 50);
    double rho_max = 0.0;
    for (double r : sol.rho) rho_max = std::max(rho_max, std::abs(r));
    const double catalan_err = std::abs(im_li2_i_exp(0.0) - kCatalan);
    const bool pass = grad_err <= 1e-6 && hess_err <= 1e-5 && psd_min >= -1e-12 &&
                      sol.converged && rho_max <= 1e-10 && sol.iterations <= 20 &&
                      catalan_err <= 1e-10;
    report(6, "solver: FD checks, PSD, grid solve, Catalan value", pass,
           fmt("grad %.1e hess %.1e, grid rho %.1e", grad_err, hess_err, rho_max) +
               fmt(", psd %.1e, iters %.0f, catalan %.1e", psd_min, double(sol.iterations),
                   catalan_err));
}

void a07_layout_orthogonality() {
    Rng rng(107);
    double worst = 0.0;
    // Dirichlet grid with jittered boundary data.
    PatternProblem p1 = grid_problem(6, true, &rng);
    const PatternSolution s1 = solve(p1, 1e-11, 50);
    worst = std::max(worst, layout(p1, s1.rho).max_orthogonality_defect);
    // Regular Neumann grid.
    PatternProblem p2 = grid_problem(6, false);
    const PatternSolution s2 = solve(p2, 1e-11, 50);
    worst = std::max(worst, layout(p2, s2.rho).max_orthogonality_defect);
    // Builder layouts.
    const BuiltSurface e = build_enneper(3);
    worst = std::max(worst, e.layout.max_orthogonality_defect);
    const BuiltSurface sp = build_schwarz_p(2, 2, 2);
    worst = std::max(worst, sp.layout.max_orthogonality_defect);
    const BuiltSurface sp4 = build_schwarz_p(4, 4, 4);
    worst = std::max(worst, sp4.layout.max_orthogonality_defect);
    const bool converged = s1.converged && s2.converged;
    report(7, "layout orthogonality residuals on all solved fixtures", converged && worst <= 1e-8,
           fmt("max | |d|^2 - rj^2 - rk^2 | / (rj^2+rk^2) = %.3e", worst));
}

void a08_enneper() {
    const auto t0 = std::chrono::steady_clock::now();
    const BuiltSurface b = build_enneper(3);
    // Dual-of-dual identity.
    double closing = 0.0;
    const SIsothermicSurface back = dual_s_isothermic(b.minimal, &closing);
    const QuadGraph& orig = b.koebe.surface.quad;
    const Point3 shift = back.quad.positions[0] - orig.positions[0];
    double dd_err = 0.0, scale = 0.0;
    for (int v = 0; v < orig.vertex_count(); ++v) {
        dd_err = std::max(dd_err, distance(back.quad.positions[v] - shift, orig.positions[v]));
        scale = std::max(scale, orig.positions[v].norm());
    }
    dd_err /= scale;
    const double dt = seconds_since(t0);
    const bool pass = b.koebe.poly.max_edge_tangency_defect <= 1e-8 &&
                      b.minimal_checks.kite_cross_ratio <= 1e-8 && b.minimality.max_defect <= 1e-7 &&
                      dd_err <= 1e-10 && dt < 10.0;
    report(8, "Enneper pipeline (tangency, kites, minimality, involution)", pass,
           fmt("tang %.1e, |q+1| %.1e, min %.1e", b.koebe.poly.max_edge_tangency_defect,
               b.minimal_checks.kite_cross_ratio, b.minimality.max_defect) +
               fmt(", dual-of-dual %.1e, %.2fs", dd_err, dt));
}

void a09_schwarz() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (const auto [m, n, k] : {std::array<int, 3>{2, 2, 2}, std::array<int, 3>{4, 4, 4}}) {
        const BuiltSurface b = build_schwarz_p(m, n, k);
        // Quoted quarter data: pi/2 at the near-pole circle, pi along the
        // mirror lines; the far-pole corner is the Dirichlet pin whose folded
        // closure evaluates to pi/2 at the solution.
        int fnode = -1;
        for (int j = 0; j < b.problem.node_count(); ++j)
            if (b.problem.nodes[j].data == NodeData::dirichlet && b.problem.neighbors()[j].size() == 1)
                fnode = j;
        bool data_ok = fnode >= 0;
        for (int j = 0; j < b.problem.node_count() && data_ok; ++j) {
            const PatternNode& node = b.problem.nodes[j];
            if (node.data != NodeData::neumann) continue;
            if (node.role == NodeRole::boundary)
                data_ok = std::abs(node.phi - pi) < 1e-12 || std::abs(node.phi - pi / 2) < 1e-12;
            else
                data_ok = std::abs(node.phi - 2 * pi) < 1e-12;
        }
        double far_corner = 0.0;
        if (fnode >= 0)
            far_corner = 2 * std::atan(std::exp(b.solution.rho[b.problem.neighbors()[fnode][0]] -
                                                b.solution.rho[fnode]));
        data_ok = data_ok && std::abs(far_corner - pi / 2) <= 1e-9;
        pass = pass && data_ok && b.solution.converged && b.solution.residual <= 1e-10 &&
               b.max_boundary_plane_defect <= 1e-7 && b.minimality.max_defect <= 1e-7;
        detail += fmt("%.0f: res %.1e", double(m), b.solution.residual) +
                  fmt(" sym %.1e min %.1e; ", b.max_boundary_plane_defect, b.minimality.max_defect);
    }
    const double dt = seconds_since(t0);
    pass = pass && dt < 60.0;
    report(9, "Schwarz-P pipeline (2,2,2 and 4,4,4)", pass, detail + fmt("%.2fs", dt));
}

void a10_miquel() {
    Rng rng(110);
    double concurrency = 0.0, cosphericity = 0.0;
    int done = 0;
    while (done < 100) {
        // Cube on a random sphere with the three faces at v000 circular.
        const Point3 center = rng.point_in_box(0.5);
        const double radius = rng.uniform(0.8, 1.5);
        const Point3 p = center + radius * rng.unit_vector();
        Circle3 circ[3];
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            int guard = 0;
            for (;; ++guard) {
                if (guard > 50) {
                    ok = false;
                    break;
                }
                const Point3 nrm = rng.unit_vector();
                const double off = dot(nrm, p - center);
                if (std::abs(off) > 0.85 * radius) continue;
                const double r = std::sqrt(radius * radius - off * off);
                if (r < 0.25 * radius) continue;
                circ[i] = Circle3{center + nrm * off, r, nrm, +1};
                break;
            }
        }
        if (!ok) continue;
        MiquelCube cube;
        cube.v000 = p;
        try {
            cube.v100 = circle_second_intersection(circ[2], circ[1], p);
            cube.v010 = circle_second_intersection(circ[2], circ[0], p);
            cube.v001 = circle_second_intersection(circ[0], circ[1], p);
            auto free_pt = [&](const Circle3& c, const Point3& a1, const Point3& a2) {
                const Point3 u = normalized(p - c.center);
                const Point3 v = cross(c.normal, u);
                for (;;) {
                    const double a = rng.uniform(0.5, 2 * pi - 0.5);
                    const Point3 q = c.center + c.radius * (std::cos(a) * u + std::sin(a) * v);
                    if (distance(q, a1) > 0.15 && distance(q, a2) > 0.15 && distance(q, p) > 0.15)
                        return q;
                }
            };
            cube.v110 = free_pt(circ[2], cube.v100, cube.v010);
            cube.v011 = free_pt(circ[0], cube.v010, cube.v001);
            cube.v101 = free_pt(circ[1], cube.v001, cube.v100);
            const MiquelResult res = miquel_point(cube);
            concurrency = std::max(concurrency, res.concurrency_residual);
            cosphericity = std::max(cosphericity, std::abs(distance(res.point, center) - radius));
            ++done;
        } catch (const std::exception&) {
            continue;
        }
    }
    report(10, "Miquel concurrency and co-sphericity on 100 cubes",
           concurrency <= 1e-8 && cosphericity <= 1e-8,
           fmt("concurrency %.3e, co-sphericity %.3e", concurrency, cosphericity));
}

}  // namespace

int main() {
    a01_inscribed_zero();
    a02_moebius_invariance();
    a03_steinitz();
    a04_smooth_limit();
    a05_bending();
    a06_solver();
    a07_layout_orthogonality();
    a08_enneper();
    a09_schwarz();
    a10_miquel();
    std::printf("%s: %d failure(s)\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED", failures);
    return failures ? 1 : 0;
}
