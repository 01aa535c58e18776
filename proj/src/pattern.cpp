#include "circlekit/pattern.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <fstream>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "circlekit/accum.hpp"
#include "circlekit/mesh_io.hpp"

namespace circlekit {

using std::numbers::pi;

int PatternProblem::add_node(const PatternNode& n) {
    nodes.push_back(n);
    nbrs_.emplace_back();
    return node_count() - 1;
}

int PatternProblem::add_neumann(NodeRole role, double phi) {
    return add_node({role, NodeData::neumann, phi, 0.0});
}

int PatternProblem::add_dirichlet(NodeRole role, double rho) {
    return add_node({role, NodeData::dirichlet, 0.0, rho});
}

void PatternProblem::add_adjacency(int j, int k) {
    if (j < 0 || k < 0 || j >= node_count() || k >= node_count() || j == k)
        throw std::invalid_argument("add_adjacency: bad node pair");
    adj_.push_back({j, k});
    nbrs_[j].push_back(k);
    nbrs_[k].push_back(j);
}

bool PatternProblem::connected() const {
    if (nodes.empty()) return true;
    std::vector<char> seen(node_count(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
        int j = q.front();
        q.pop();
        for (int k : nbrs_[j])
            if (!seen[k]) {
                seen[k] = 1;
                ++cnt;
                q.push(k);
            }
    }
    return cnt == node_count();
}

bool PatternProblem::has_dirichlet() const {
    for (const auto& n : nodes)
        if (n.data == NodeData::dirichlet) return true;
    return false;
}

double PatternProblem::neumann_compatibility_defect() const {
    KahanSum s;
    for (const auto& n : nodes) s.add(n.phi);
    return s.value() - pi * adjacency_count();
}

double functional_S(const PatternProblem& p, const std::vector<double>& rho) {
    KahanSum s;
    for (const auto& [j, k] : p.adjacencies()) {
        const double d = rho[k] - rho[j];
        s.add(im_li2_i_exp(d));
        s.add(im_li2_i_exp(-d));
        s.add(-0.5 * pi * (rho[j] + rho[k]));
    }
    for (int j = 0; j < p.node_count(); ++j)
        if (p.nodes[j].data == NodeData::neumann) s.add(p.nodes[j].phi * rho[j]);
    return s.value();
}

std::vector<double> gradient_S(const PatternProblem& p, const std::vector<double>& rho) {
    std::vector<KahanSum> cover(p.node_count());
    for (const auto& [j, k] : p.adjacencies()) {
        const double a = std::atan(std::exp(rho[k] - rho[j]));
        cover[j].add(2.0 * a);
        cover[k].add(pi - 2.0 * a);  // arctan x + arctan 1/x = pi/2
    }
    std::vector<double> g(p.node_count());
    for (int j = 0; j < p.node_count(); ++j) {
        const double phi = p.nodes[j].data == NodeData::neumann ? p.nodes[j].phi : 0.0;
        g[j] = phi - cover[j].value();
        if (p.nodes[j].data == NodeData::dirichlet) g[j] = 0.0;
    }
    return g;
}

Eigen::SparseMatrix<double> hessian_S(const PatternProblem& p, const std::vector<double>& rho) {
    const int n = p.node_count();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(4 * p.adjacency_count());
    for (const auto& [j, k] : p.adjacencies()) {
        const double w = 1.0 / std::cosh(rho[k] - rho[j]);
        trip.push_back({j, j, w});
        trip.push_back({k, k, w});
        trip.push_back({j, k, -w});
        trip.push_back({k, j, -w});
    }
    Eigen::SparseMatrix<double> h(n, n);
    h.setFromTriplets(trip.begin(), trip.end());
    return h;
}

namespace {

double max_abs_free(const PatternProblem& p, const std::vector<double>& g) {
    double m = 0.0;
    for (int j = 0; j < p.node_count(); ++j)
        if (p.nodes[j].data == NodeData::neumann) m = std::max(m, std::abs(g[j]));
    return m;
}

}  // namespace

PatternSolution solve(const PatternProblem& p, double tol, int max_iter) {
    if (!p.connected()) throw std::invalid_argument("solve: adjacency graph is disconnected");
    PatternSolution sol;
    sol.rho.assign(p.node_count(), 0.0);

    std::vector<int> free_idx;
    for (int j = 0; j < p.node_count(); ++j) {
        if (p.nodes[j].data == NodeData::dirichlet)
            sol.rho[j] = p.nodes[j].rho;
        else
            free_idx.push_back(j);
    }
    const bool pure_neumann = !p.has_dirichlet();
    if (pure_neumann) {
        const double defect = p.neumann_compatibility_defect();
        if (std::abs(defect) > 1e-8 * (1.0 + pi * p.adjacency_count())) {
            sol.failure = "Neumann data incompatible: sum Phi - pi |E| = " + std::to_string(defect);
            return sol;
        }
    }
    if (free_idx.empty()) {
        sol.converged = true;
        return sol;
    }

    const int nf = static_cast<int>(free_idx.size());
    std::vector<int> pos(p.node_count(), -1);
    for (int i = 0; i < nf; ++i) pos[free_idx[i]] = i;
    // Pure-Neumann systems are gauge-fixed by pinning one free variable and
    // recentering; the Laplacian minor is positive definite on connected graphs.
    const int reduced = pure_neumann ? nf - 1 : nf;
    if (reduced == 0) {
        sol.converged = true;
        return sol;
    }

    auto recenter = [&] {
        if (!pure_neumann) return;
        double mean = 0.0;
        for (double r : sol.rho) mean += r;
        mean /= p.node_count();
        for (double& r : sol.rho) r -= mean;
    };
    recenter();

    double s_val = functional_S(p, sol.rho);
    for (int it = 0; it < max_iter; ++it) {
        const std::vector<double> g = gradient_S(p, sol.rho);
        sol.residual = max_abs_free(p, g);
        sol.residual_history.push_back(sol.residual);
        if (sol.residual <= tol) {
            sol.converged = true;
            sol.iterations = it;
            return sol;
        }

        const Eigen::SparseMatrix<double> h_full = hessian_S(p, sol.rho);
        std::vector<Eigen::Triplet<double>> trip;
        Eigen::VectorXd rhs(reduced);
        rhs.setZero();
        for (int i = 0; i < reduced; ++i) rhs[i] = -g[free_idx[i]];
        for (int col = 0; col < h_full.outerSize(); ++col)
            for (Eigen::SparseMatrix<double>::InnerIterator it2(h_full, col); it2; ++it2) {
                const int ri = pos[it2.row()], ci = pos[it2.col()];
                if (ri >= 0 && ri < reduced && ci >= 0 && ci < reduced)
                    trip.push_back({ri, ci, it2.value()});
            }
        Eigen::SparseMatrix<double> h(reduced, reduced);
        h.setFromTriplets(trip.begin(), trip.end());
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(h);
        if (chol.info() != Eigen::Success) {
            sol.failure = "Hessian factorization failed";
            sol.iterations = it;
            return sol;
        }
        const Eigen::VectorXd d = chol.solve(rhs);

        std::vector<double> dir(p.node_count(), 0.0);
        for (int i = 0; i < reduced; ++i) dir[free_idx[i]] = d[i];
        if (pure_neumann) {
            double mean = 0.0;
            for (int j : free_idx) mean += dir[j];
            mean /= nf;
            for (int j : free_idx) dir[j] -= mean;
        }

        double slope = 0.0;
        for (int j : free_idx) slope += g[j] * dir[j];
        if (slope > 0) {  // safeguard: fall back to steepest descent
            for (int j : free_idx) dir[j] = -g[j];
            slope = 0.0;
            for (int j : free_idx) slope += g[j] * dir[j];
        }

        double t = 1.0;
        const std::vector<double> base = sol.rho;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (int j : free_idx) sol.rho[j] = base[j] + t * dir[j];
            const double s_new = functional_S(p, sol.rho);
            if (s_new <= s_val + 1e-4 * t * slope + 1e-14 * std::abs(s_val)) {
                s_val = s_new;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            sol.rho = base;
            sol.failure = "line search stalled";
            sol.iterations = it + 1;
            return sol;
        }
        recenter();
        sol.iterations = it + 1;
    }
    const std::vector<double> g = gradient_S(p, sol.rho);
    sol.residual = max_abs_free(p, g);
    sol.residual_history.push_back(sol.residual);
    sol.converged = sol.residual <= tol;
    if (!sol.converged && sol.failure.empty()) sol.failure = "iteration budget exhausted";
    return sol;
}

PatternProblem read_pattern_text(std::istream& in) {
    PatternProblem p;
    std::string line;
    int lineno = 0;
    auto next = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++lineno;
            size_t h = out.find('#');
            if (h != std::string::npos) out.erase(h);
            std::istringstream probe(out);
            std::string tok;
            if (probe >> tok) return true;
        }
        return false;
    };
    auto fail = [&](const std::string& msg) -> std::runtime_error {
        return MeshParseError(lineno, msg);
    };

    if (!next(line)) throw fail("empty document");
    {
        std::istringstream is(line);
        std::string a, b, c;
        is >> a >> b >> c;
        if (a != "circlekit" || b != "pattern" || c != "1") throw fail("expected header 'circlekit pattern 1'");
    }
    if (!next(line)) throw fail("missing nodes block");
    int n = 0;
    {
        std::istringstream is(line);
        std::string kw;
        is >> kw >> n;
        if (kw != "nodes" || n < 0) throw fail("expected 'nodes N'");
    }
    for (int i = 0; i < n; ++i) {
        if (!next(line)) throw fail("unexpected end of node block");
        std::istringstream is(line);
        std::string kw, role, data;
        int id;
        double value;
        if (!(is >> kw >> id >> role >> data >> value) || kw != "n" || id != i)
            throw fail("expected 'n <id> <role> phi|rho <value>' in order");
        PatternNode node;
        if (role == "interior")
            node.role = NodeRole::interior;
        else if (role == "boundary")
            node.role = NodeRole::boundary;
        else
            throw fail("unknown role '" + role + "'");
        if (data == "phi") {
            node.data = NodeData::neumann;
            node.phi = value;
        } else if (data == "rho") {
            node.data = NodeData::dirichlet;
            node.rho = value;
        } else {
            throw fail("unknown data kind '" + data + "'");
        }
        p.add_node(node);
    }
    if (!next(line)) throw fail("missing adjacency block");
    int m = 0;
    {
        std::istringstream is(line);
        std::string kw;
        is >> kw >> m;
        if (kw != "adjacencies" || m < 0) throw fail("expected 'adjacencies M'");
    }
    for (int i = 0; i < m; ++i) {
        if (!next(line)) throw fail("unexpected end of adjacency block");
        std::istringstream is(line);
        std::string kw;
        int j, k;
        if (!(is >> kw >> j >> k) || kw != "a") throw fail("expected 'a j k'");
        if (j < 0 || j >= n || k < 0 || k >= n) throw fail("adjacency index out of range");
        p.add_adjacency(j, k);
    }
    while (next(line)) {
        std::istringstream is(line);
        std::string kw;
        is >> kw;
        if (kw == "end") break;
        if (kw == "r") {
            if (p.rotations.empty()) p.rotations.assign(n, {});
            int j;
            if (!(is >> j) || j < 0 || j >= n) throw fail("rotation index out of range");
            int k;
            while (is >> k) {
                if (k < 0 || k >= n) throw fail("rotation neighbor out of range");
                p.rotations[j].push_back(k);
            }
        } else {
            throw fail("unknown block '" + kw + "'");
        }
    }
    return p;
}

PatternProblem read_pattern(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_pattern_text(in);
}

std::string write_pattern_text(const PatternProblem& p) {
    std::ostringstream os;
    os.precision(17);
    os << "circlekit pattern 1\n";
    os << "nodes " << p.node_count() << "\n";
    for (int j = 0; j < p.node_count(); ++j) {
        const PatternNode& n = p.nodes[j];
        os << "n " << j << " " << (n.role == NodeRole::interior ? "interior" : "boundary") << " "
           << (n.data == NodeData::neumann ? "phi " : "rho ")
           << (n.data == NodeData::neumann ? n.phi : n.rho) << "\n";
    }
    os << "adjacencies " << p.adjacency_count() << "\n";
    for (const auto& [j, k] : p.adjacencies()) os << "a " << j << " " << k << "\n";
    if (!p.rotations.empty()) {
        for (int j = 0; j < p.node_count(); ++j) {
            if (p.rotations[j].empty()) continue;
            os << "r " << j;
            for (int k : p.rotations[j]) os << " " << k;
            os << "\n";
        }
    }
    os << "end\n";
    return os.str();
}

void write_pattern(const std::string& path, const PatternProblem& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << write_pattern_text(p);
}

std::string write_solution_text(const PatternProblem& p, const PatternSolution& s) {
    std::ostringstream os;
    os.precision(17);
    os << "circlekit pattern-solution 1\n";
    os << "converged " << (s.converged ? 1 : 0) << "\n";
    os << "residual " << s.residual << "\n";
    os << "iterations " << s.iterations << "\n";
    for (size_t i = 0; i < s.residual_history.size(); ++i)
        os << "# iteration " << i << " residual " << s.residual_history[i] << "\n";
    os << "nodes " << p.node_count() << "\n";
    for (int j = 0; j < p.node_count(); ++j) os << "rho " << j << " " << s.rho[j] << "\n";
    os << "end\n";
    return os.str();
}

}  // namespace circlekit
