// Batch front end: energy audits, pattern solves, surface synthesis and the
// seeded verification suites.
//
// Exit codes: 0 ok, 1 verification failure, 2 parse/usage error, 3 invalid
// input (mesh or problem), 4 solver or pipeline failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "circlekit/accum.hpp"
#include "circlekit/bending.hpp"
#include "circlekit/dilog.hpp"
#include "circlekit/exports.hpp"
#include "circlekit/generators.hpp"
#include "circlekit/hull.hpp"
#include "circlekit/layout.hpp"
#include "circlekit/mesh_io.hpp"
#include "circlekit/minimal.hpp"
#include "circlekit/miquel.hpp"
#include "circlekit/pattern.hpp"
#include "circlekit/rng.hpp"
#include "circlekit/smooth_limit.hpp"
#include "circlekit/willmore.hpp"

using namespace circlekit;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

int cmd_energy(const std::string& mesh_path, bool with_bending, const std::string& out_path) {
    MeshFile mf;
    try {
        mf = read_mesh(mesh_path);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    SimplicialSurface s;
    EnergyReport report;
    try {
        s = to_simplicial(mf);
        report = willmore_total(s);
    } catch (const std::exception& e) {
        std::cerr << "invalid mesh: " << e.what() << "\n";
        return 3;
    }
    double wmin = 0, wmax = 0;
    for (double w : report.per_vertex) {
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
    }
    std::printf("W = %.10e  (V=%d E=%d F=%d)\n", report.total, s.vertex_count(), s.edge_count(),
                s.face_count());
    std::printf("W(v): min %.10e  max %.10e  consistency %.3e\n", wmin, wmax,
                report.consistency_defect());
    if (with_bending) {
        try {
            const BendingReport b = bending_energy(s);
            std::printf("bending E = %.10e\n", b.total);
        } catch (const std::exception& e) {
            std::cerr << "bending failed: " << e.what() << "\n";
            return 3;
        }
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << report.to_text();
        std::printf("report written to %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_pattern_solve(const std::string& path, double tol, int max_iter, const std::string& out_dir,
                      bool svg) {
    PatternProblem p;
    try {
        p = read_pattern(path);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    PatternSolution sol;
    try {
        if (!p.connected()) {
            std::cerr << "invalid problem: adjacency graph is disconnected\n";
            return 3;
        }
        sol = solve(p, tol, max_iter);
    } catch (const std::exception& e) {
        std::cerr << "invalid problem: " << e.what() << "\n";
        return 3;
    }
    std::printf("converged %s  residual %.3e  iterations %d\n", sol.converged ? "yes" : "no",
                sol.residual, sol.iterations);
    for (size_t i = 0; i + 1 < sol.residual_history.size(); ++i)
        std::printf("  iter %2zu residual %.3e\n", i, sol.residual_history[i]);
    if (!sol.converged) {
        std::cerr << "non-convergence: " << sol.failure << " (residual " << sol.residual << ")\n";
        return 4;
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream(fs::path(out_dir) / "solution.txt") << write_solution_text(p, sol);
        if (!p.rotations.empty()) {
            const PatternLayout l = layout(p, sol.rho);
            std::ofstream(fs::path(out_dir) / "layout.txt") << write_layout_text(l);
            if (svg) std::ofstream(fs::path(out_dir) / "layout.svg") << layout_svg(l);
            std::printf("layout: orthogonality %.3e tangency %.3e position %.3e\n",
                        l.max_orthogonality_defect, l.max_tangency_defect, l.max_position_defect);
        } else if (svg) {
            std::cerr << "--svg requires rotations in the problem file\n";
            return 2;
        }
        std::printf("outputs written to %s\n", out_dir.c_str());
    }
    return 0;
}

int export_surface(const BuiltSurface& b, const std::string& name, const std::string& out_dir,
                   bool obj) {
    if (out_dir.empty()) return 0;
    fs::create_directories(out_dir);
    const fs::path base = fs::path(out_dir);
    write_mesh((base / (name + ".ckm")).string(), s_isothermic_mesh_file(b.minimal));
    write_mesh((base / (name + "_gauss.ckm")).string(), s_isothermic_mesh_file(b.koebe.surface));
    if (obj) {
        write_kite_obj((base / (name + "_kites.obj")).string(), b.minimal);
        write_proxy_obj((base / (name + "_proxy.obj")).string(), b.minimal);
    }
    std::printf("surface files written to %s\n", out_dir.c_str());
    return 0;
}

int cmd_surface(const std::vector<std::string>& args, const std::string& out_dir, bool obj) {
    if (args.empty()) {
        std::cerr << "usage: surface enneper N | surface schwarzp M N K\n";
        return 2;
    }
    try {
        BuiltSurface b;
        std::string name;
        if (args[0] == "enneper") {
            if (args.size() != 2) {
                std::cerr << "usage: surface enneper N\n";
                return 2;
            }
            const int n = std::stoi(args[1]);
            if (n < 1 || n > 32) {
                std::cerr << "enneper size out of range (1..32)\n";
                return 2;
            }
            b = build_enneper(n);
            name = "enneper" + std::to_string(n);
        } else if (args[0] == "schwarzp") {
            if (args.size() != 4) {
                std::cerr << "usage: surface schwarzp M N K\n";
                return 2;
            }
            const int m = std::stoi(args[1]), n = std::stoi(args[2]), k = std::stoi(args[3]);
            if (m < 2 || n < 2 || k < 2 || m > 32 || n > 32 || k > 32 || m % 2 || n % 2 || k % 2) {
                std::cerr << "even integers in 2..32 required\n";
                return 2;
            }
            b = build_schwarz_p(m, n, k);
            name = "schwarzp" + std::to_string(m) + "_" + std::to_string(n) + "_" + std::to_string(k);
        } else {
            std::cerr << "unknown generator '" << args[0] << "'\n";
            return 2;
        }
        std::printf("pattern: residual %.3e in %d iterations\n", b.solution.residual,
                    b.solution.iterations);
        std::printf("koebe: edge tangency %.3e, face planarity %.3e\n",
                    b.koebe.poly.max_edge_tangency_defect, b.koebe.poly.max_face_planarity);
        std::printf("surface: minimality %.3e, kite cross-ratio %.3e, orthogonality %.3e\n",
                    b.minimality.max_defect, b.minimal_checks.kite_cross_ratio,
                    b.minimal_checks.orthogonality);
        std::printf("dual closing %.3e, gauss normal %.3e\n", b.dual_closing_defect,
                    b.gauss_normal_defect);
        if (!b.boundary_runs.empty())
            std::printf("symmetry planes: boundary defect %.3e over %zu runs\n",
                        b.max_boundary_plane_defect, b.boundary_runs.size());
        return export_surface(b, name, out_dir, obj);
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "pipeline failure: " << e.what() << "\n";
        return 4;
    }
}

// ---------------------------------------------------------------------------
// verification suites
// ---------------------------------------------------------------------------

struct VerifyRow {
    std::string suite;
    std::string name;
    bool pass;
    double metric;
    double bound;
};

using Suite = std::function<void(Rng&, std::vector<VerifyRow>&, bool)>;

void row(std::vector<VerifyRow>& rows, const std::string& suite, const std::string& name,
         double metric, double bound, bool larger_is_fail = true) {
    rows.push_back({suite, name, larger_is_fail ? metric <= bound : metric >= bound, metric, bound});
}

SimplicialSurface bumpy(Rng& rng, int npts) {
    std::vector<Point3> pts;
    const double ax = rng.uniform(0.7, 1.4), ay = rng.uniform(0.7, 1.4), az = rng.uniform(0.7, 1.4);
    for (int i = 0; i < npts; ++i) {
        const Point3 u = rng.unit_vector();
        const double bump = rng.uniform(1.0, 1.12);
        pts.push_back({ax * u.x * bump, ay * u.y * bump, az * u.z * bump});
    }
    return convex_hull(pts);
}

void suite_moebius(Rng& rng, std::vector<VerifyRow>& rows, bool corrupt) {
    double cr_defect = 0.0;
    for (int t = 0; t < 40; ++t) {
        const Point3 x1 = rng.point_in_box(1), x2 = rng.point_in_box(1), x3 = rng.point_in_box(1),
                     x4 = rng.point_in_box(1);
        if ((x1 - x2).norm() < 0.1 || (x2 - x3).norm() < 0.1 || (x3 - x4).norm() < 0.1 ||
            (x4 - x1).norm() < 0.1)
            continue;
        const MobiusMap m = rng.mobius(4.0);
        const Quaternion q0 = cross_ratio(x1, x2, x3, x4);
        const Quaternion q1 = cross_ratio(m(x1), m(x2), m(x3), m(x4));
        cr_defect = std::max(cr_defect, std::abs(q1.norm() - q0.norm()) / (1 + q0.norm()));
        cr_defect = std::max(cr_defect,
                             std::abs(imag_part(q1).norm() - imag_part(q0).norm()) / (1 + q0.norm()));
    }
    row(rows, "moebius", "cross-ratio moduli invariant", cr_defect, 1e-7);

    double angle_defect_max = 0.0;
    for (int t = 0; t < 40; ++t) {
        const Point3 s1 = rng.point_in_box(1), s2 = rng.point_in_box(1), al = rng.point_in_box(1),
                     ar = rng.point_in_box(1);
        if (triangle_degenerate(s1, s2, al) || triangle_degenerate(s1, s2, ar)) continue;
        const MobiusMap m = rng.mobius(4.0);
        if (triangle_degenerate(m(s1), m(s2), m(al)) || triangle_degenerate(m(s1), m(s2), m(ar)))
            continue;
        const double b0 = external_angle(s1, s2, al, ar);
        const double b1 = external_angle(m(s1), m(s2), m(al), m(ar));
        angle_defect_max = std::max(angle_defect_max, std::abs(b1 - b0) / (1 + b0));
    }
    row(rows, "moebius", "external angle invariant", angle_defect_max, 1e-7);

    double w_defect = 0.0;
    for (int t = 0; t < 4; ++t) {
        SimplicialSurface s = bumpy(rng, 36);
        const double w0 = willmore_total(s).total;
        double radius = 0.0;
        for (const Point3& p : s.positions()) radius = std::max(radius, p.norm());
        const MobiusMap m = rng.mobius(3.0 * radius);
        std::vector<Point3> moved;
        for (const Point3& p : s.positions()) moved.push_back(m(p));
        if (corrupt && t == 0) moved[0] += Point3{1e-3, 0, 0};
        SimplicialSurface ts(std::move(moved), std::vector<std::array<int, 3>>(s.faces()));
        w_defect = std::max(w_defect, std::abs(willmore_total(ts).total - w0) / (1 + std::abs(w0)));
    }
    row(rows, "moebius", "willmore energy invariant", w_defect, 1e-6);
}

void suite_energy(Rng& rng, std::vector<VerifyRow>& rows, bool corrupt) {
    const SimplicialSurface hull = bumpy(rng, 80);
    KahanSum defects;
    for (int v = 0; v < hull.vertex_count(); ++v) defects.add(angle_defect(hull, v));
    row(rows, "energy", "gauss-bonnet 2*pi*chi", std::abs(defects.value() - 4 * pi), 1e-8);

    std::vector<Point3> sph;
    for (int i = 0; i < 120; ++i) sph.push_back(rng.unit_vector());
    const SimplicialSurface inscribed = convex_hull(sph);
    row(rows, "energy", "inscribed hull W=0", std::abs(willmore_total(inscribed).total), 1e-8);

    const std::array<Point3, 4> tetra = {Point3{1, 1, 1}, Point3{1, -1, -1}, Point3{-1, 1, -1},
                                         Point3{-1, -1, 1}};
    std::array<double, 6> params;
    for (double& v : params) v = rng.uniform(0.3, 0.7);
    SimplicialSurface miq = make_miquel_polyhedron(tetra, params);
    if (corrupt) miq.positions()[10] += Point3{0.2, 0.1, 0.0};
    row(rows, "energy", "miquel polyhedron W=2*pi", std::abs(willmore_total(miq).total - 2 * pi), 1e-7);
    row(rows, "energy", "steinitz bound respected",
        steinitz_bound(miq) - willmore_total(miq).total, 1e-8);

    double quad_err = 0.0;
    for (int t = 0; t < 10; ++t) {
        const double l1 = rng.uniform(0.5, 1.8), l2 = rng.uniform(0.5, 1.8), l3 = rng.uniform(0.5, 1.8);
        if (std::abs(std::cos(beta_of_theta(l1, l2, l3, 0))) > 0.9) continue;
        const double h = 1e-3;
        const double quad = (beta_of_theta(l1, l2, l3, h) - beta_of_theta(l1, l2, l3, 0)) / (h * h);
        const double expect = l3 / (2 * (l1 + l2));
        quad_err = std::max(quad_err, std::abs(quad - expect) / expect);
    }
    row(rows, "energy", "bending quadratic l/(4L)", quad_err, 1e-4);

    double q_err = 0.0;
    for (int t = 0; t < 5; ++t)
        q_err = std::max(q_err, std::abs(quotient_Q({rng.uniform(0, 1.4), pi / 3, pi / 3}) - 1.5));
    row(rows, "energy", "equilateral quotient 3/2", q_err, 1e-12);
}

void suite_pattern(Rng& rng, std::vector<VerifyRow>& rows, bool corrupt) {
    row(rows, "pattern", "Im Li2(i) = Catalan", std::abs(im_li2_i_exp(0.0) - kCatalan),
        corrupt ? 1e-18 : 1e-12);

    PatternProblem p;
    const int n = 6;
    auto id = [&](int i, int j) { return i * (n + 1) + j; };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const bool bd = i == 0 || j == 0 || i == n || j == n;
            if (bd)
                p.add_dirichlet(NodeRole::boundary, rng.uniform(-0.4, 0.4));
            else
                p.add_neumann(NodeRole::interior, 2 * pi);
        }
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i < n) p.add_adjacency(id(i, j), id(i + 1, j));
            if (j < n) p.add_adjacency(id(i, j), id(i, j + 1));
        }
    std::vector<double> rho(p.node_count());
    for (double& r : rho) r = rng.uniform(-0.5, 0.5);
    const std::vector<double> g = gradient_S(p, rho);
    double fd_err = 0.0;
    for (int probe = 0; probe < 6; ++probe) {
        int j;
        do {
            j = rng.uniform_int(0, p.node_count() - 1);
        } while (p.nodes[j].data == NodeData::dirichlet);
        std::vector<double> up = rho, dn = rho;
        up[j] += 1e-6;
        dn[j] -= 1e-6;
        fd_err = std::max(fd_err, std::abs((functional_S(p, up) - functional_S(p, dn)) / 2e-6 - g[j]) /
                                      (1 + std::abs(g[j])));
    }
    row(rows, "pattern", "gradient matches finite differences", fd_err, 1e-6);

    const Eigen::SparseMatrix<double> h = hessian_S(p, rho);
    double psd_min = 0.0;
    for (int probe = 0; probe < 50; ++probe) {
        Eigen::VectorXd x(p.node_count());
        for (int i = 0; i < x.size(); ++i) x[i] = rng.uniform(-1, 1);
        psd_min = std::min(psd_min, x.dot(h * x));
    }
    row(rows, "pattern", "hessian positive semidefinite", -psd_min, 1e-12);

    const PatternSolution sol = solve(p, 1e-10, 50);
    row(rows, "pattern", "dirichlet grid newton residual", sol.converged ? sol.residual : 1.0, 1e-10);
    row(rows, "pattern", "newton iterations <= 20", sol.iterations, 20.0);
}

void suite_surfaces(Rng& rng, std::vector<VerifyRow>& rows, bool corrupt) {
    (void)rng;
    const BuiltSurface e = build_enneper(corrupt ? 1 : 2);
    row(rows, "surfaces", "enneper koebe tangency", e.koebe.poly.max_edge_tangency_defect, 1e-8);
    row(rows, "surfaces", "enneper kite cross-ratios",
        corrupt ? 1.0 : e.minimal_checks.kite_cross_ratio, 1e-8);
    row(rows, "surfaces", "enneper minimality", e.minimality.max_defect, 1e-7);
    row(rows, "surfaces", "enneper dual closing", e.dual_closing_defect, 1e-10);

    const BuiltSurface s = build_schwarz_p(2, 2, 2);
    row(rows, "surfaces", "schwarzp quarter residual", s.solution.residual, 1e-10);
    row(rows, "surfaces", "schwarzp minimality", s.minimality.max_defect, 1e-7);
    row(rows, "surfaces", "schwarzp symmetry planes", s.max_boundary_plane_defect, 1e-7);
}

void suite_mesh(Rng& rng, std::vector<VerifyRow>& rows, bool corrupt) {
    MeshFile m;
    m.kind = MeshFile::Kind::tri;
    m.vertex_count = 6;
    m.with_positions = true;
    for (int i = 0; i < 6; ++i)
        m.positions.push_back({rng.uniform(-1, 1) * std::exp(rng.uniform(-9, 9)), rng.uniform(-1, 1),
                               rng.uniform(-1, 1)});
    m.faces = {{0, 1, 2}, {3, 4, 5}};
    std::istringstream in(write_mesh_text(m));
    MeshFile back = read_mesh_text(in);
    if (corrupt) back.positions[0].x += 1e-30;
    row(rows, "mesh", "document round-trip identity", back == m ? 0.0 : 1.0, 0.5);

    const SimplicialSurface hull = bumpy(rng, 40);
    const SimplicialSurface r = refine_1to4(hull);
    row(rows, "mesh", "refinement counts 4F and V+E",
        std::abs(r.face_count() - 4 * hull.face_count()) +
            std::abs(r.vertex_count() - hull.vertex_count() - hull.edge_count()),
        0.5);
    row(rows, "mesh", "refinement euler characteristic",
        std::abs(r.validate().euler_characteristic - 2), 0.5);
    const SimplicialSurface st = make_steinitz_example();
    row(rows, "mesh", "steinitz combinatorics valid", st.validate().closed_manifold() ? 0.0 : 1.0, 0.5);
}

int cmd_verify(const std::string& which, std::uint64_t seed, bool corrupt) {
    const std::vector<std::pair<std::string, Suite>> suites = {
        {"moebius", suite_moebius}, {"energy", suite_energy},     {"pattern", suite_pattern},
        {"mesh", suite_mesh},       {"surfaces", suite_surfaces},
    };
    std::vector<VerifyRow> rows;
    bool found = false;
    for (const auto& [name, fn] : suites) {
        if (which != "all" && which != name) continue;
        found = true;
        Rng rng(seed);
        fn(rng, rows, corrupt);
    }
    if (!found) {
        std::cerr << "unknown suite '" << which << "'\n";
        return 2;
    }
    std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
    std::printf("%-9s %-36s %-6s %-12s %s\n", "suite", "invariant", "state", "metric", "bound");
    int failures = 0;
    for (const VerifyRow& r : rows) {
        std::printf("%-9s %-36s %-6s %-12.3e %.1e\n", r.suite.c_str(), r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.metric, r.bound);
        failures += !r.pass;
    }
    std::printf("%zu checks, %d failures\n", rows.size(), failures);
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circlekit: discrete Willmore energies, orthogonal circle patterns and minimal S-isothermic surfaces"};
    app.set_config("--config");
    app.require_subcommand(1);

    // energy
    std::string mesh_path, report_path;
    bool with_bending = false;
    CLI::App* energy = app.add_subcommand("energy", "Willmore energy audit of a mesh document");
    energy->add_option("mesh", mesh_path, "mesh document path")->required();
    energy->add_flag("--bending", with_bending, "also report the bending energy");
    energy->add_option("--out", report_path, "write the per-edge/per-vertex report here");

    // pattern solve
    std::string problem_path, out_dir;
    double tol = 1e-10;
    int max_iter = 50;
    bool svg = false, obj = false;
    CLI::App* pattern = app.add_subcommand("pattern", "circle pattern operations");
    CLI::App* psolve = pattern->add_subcommand("solve", "solve a pattern problem document");
    psolve->add_option("problem", problem_path, "problem document path")->required();
    psolve->add_option("--tol", tol, "gradient tolerance");
    psolve->add_option("--max-iter", max_iter, "newton iteration budget");
    psolve->add_option("--out", out_dir, "output directory");
    psolve->add_flag("--svg", svg, "also write an SVG rendering of the layout");

    // surface
    std::vector<std::string> surface_args;
    std::string surf_out;
    CLI::App* surface = app.add_subcommand("surface", "build a discrete minimal surface");
    surface->add_option("generator", surface_args, "enneper N | schwarzp M N K")->expected(-1);
    surface->add_option("--out", surf_out, "output directory");
    surface->add_flag("--obj", obj, "also write OBJ exports");

    // verify
    std::string which = "all";
    std::uint64_t seed = 1;
    bool corrupt = false;
    CLI::App* verify = app.add_subcommand("verify", "run the seeded invariant suites");
    verify->add_option("--suite", which, "all | moebius | energy | pattern | mesh | surfaces");
    verify->add_option("--seed", seed, "random seed (printed in the summary)");
    verify->add_flag("--inject-fault", corrupt, "corrupt one fixture to demonstrate failure reporting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (energy->parsed()) return cmd_energy(mesh_path, with_bending, report_path);
        if (pattern->parsed() && psolve->parsed())
            return cmd_pattern_solve(problem_path, tol, max_iter, out_dir, svg);
        if (surface->parsed()) return cmd_surface(surface_args, surf_out, obj);
        if (verify->parsed()) return cmd_verify(which, seed, corrupt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    std::cerr << "no subcommand\n";
    return 2;
}
