#pragma once

#include <Eigen/SparseCore>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "circlekit/dilog.hpp"

namespace circlekit {

enum class NodeRole { interior, boundary };
enum class NodeData { neumann, dirichlet };

struct PatternNode {
    NodeRole role = NodeRole::interior;
    NodeData data = NodeData::neumann;
    double phi = 0.0;  // Neumann target angle
    double rho = 0.0;  // Dirichlet log-radius
};

// Orthogonal circle pattern problem: one node per circle, one adjacency per
// orthogonally intersecting pair, nominal angles Phi (Neumann) or pinned
// log-radii (Dirichlet). Rotations (cyclic neighbor order per node) are only
// needed for the planar layout, not for the solve.
class PatternProblem {
  public:
    int add_node(const PatternNode& n);
    int add_neumann(NodeRole role, double phi);
    int add_dirichlet(NodeRole role, double rho);
    void add_adjacency(int j, int k);

    int node_count() const { return static_cast<int>(nodes.size()); }
    int adjacency_count() const { return static_cast<int>(adj_.size()); }
    const std::vector<std::pair<int, int>>& adjacencies() const { return adj_; }
    const std::vector<std::vector<int>>& neighbors() const { return nbrs_; }

    bool connected() const;
    bool has_dirichlet() const;
    // sum Phi - pi |E| over Neumann data; must vanish for pure-Neumann problems.
    double neumann_compatibility_defect() const;

    std::vector<PatternNode> nodes;
    std::vector<std::vector<int>> rotations;  // optional; cyclic for interior nodes

  private:
    std::vector<std::pair<int, int>> adj_;
    std::vector<std::vector<int>> nbrs_;
};

// Variational functional S(rho) whose critical points are the patterns:
// per adjacency Im Li2(i e^(rho_k - rho_j)) + Im Li2(i e^(rho_j - rho_k))
// - (pi/2)(rho_j + rho_k), plus sum_j Phi_j rho_j. Convex on the slice
// sum rho = 0.
double functional_S(const PatternProblem& p, const std::vector<double>& rho);

// dS/drho_j = Phi_j - 2 sum_k arctan e^(rho_k - rho_j)  (the closure defect).
std::vector<double> gradient_S(const PatternProblem& p, const std::vector<double>& rho);

// d2S: weighted graph Laplacian with weights 1/cosh(rho_k - rho_j).
Eigen::SparseMatrix<double> hessian_S(const PatternProblem& p, const std::vector<double>& rho);

struct PatternSolution {
    std::vector<double> rho;
    double residual = 0.0;  // max |gradient| over free nodes
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;
    std::string failure;
};

// Newton minimization with exact Hessian, Cholesky on the reduced system and
// backtracking line search. Pure-Neumann problems are solved on the gauge
// slice sum rho = 0. Throws on disconnected graphs; incompatible Neumann data
// is reported as non-convergence.
PatternSolution solve(const PatternProblem& p, double tol = 1e-10, int max_iter = 50);

// Text interchange for problems and solutions.
PatternProblem read_pattern_text(std::istream& in);
PatternProblem read_pattern(const std::string& path);
std::string write_pattern_text(const PatternProblem& p);
void write_pattern(const std::string& path, const PatternProblem& p);
std::string write_solution_text(const PatternProblem& p, const PatternSolution& s);

}  // namespace circlekit
