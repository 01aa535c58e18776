#pragma once

#include <vector>

#include "circlekit/koebe.hpp"
#include "circlekit/layout.hpp"
#include "circlekit/pattern.hpp"
#include "circlekit/sisothermic.hpp"

namespace circlekit {

struct MinimalityReport {
    double max_defect = 0.0;  // out-of-plane defect normalized by sphere radius
    std::vector<std::pair<int, double>> per_sphere;
    int underdetermined = 0;  // spheres with fewer than 3 circle neighbors
};

// Discrete minimality: for each sphere, the best-fit plane through its center
// and the centers of all neighboring circles; defect = max out-of-plane
// distance over those points.
MinimalityReport is_discrete_minimal(const SIsothermicSurface& s);

// Angle defect (radians) between the Gauss-map direction (the partner
// surface's position at each ws vertex) and the fitted tangent-plane normal of
// the minimal surface there.
double gauss_map_normal_defect(const SIsothermicSurface& minimal, const SIsothermicSurface& gauss);

struct BuiltSurface {
    PatternProblem problem;        // the solved pattern problem (quarter problem for Schwarz-P)
    PatternSolution solution;
    PatternProblem layout_problem; // full pattern used for the planar layout
    std::vector<double> layout_rho;
    PatternLayout layout;
    SphericalCirclePattern spherical;
    KoebeResult koebe;             // Gauss-map side
    SIsothermicSurface minimal;    // the dual (minimal) surface
    double dual_closing_defect = 0.0;
    double corner_spread = 0.0;    // disagreement between corner triples at a contact
    MinimalityReport minimality;
    SIsothermicChecks minimal_checks;
    SIsothermicChecks gauss_checks;
    double gauss_normal_defect = 0.0;
    std::vector<int> quad_to_node;  // quad vertex -> layout_problem node (-1 for Enneper cell blacks)
    std::vector<std::vector<int>> boundary_runs;  // minimal.quad vertex ids per mirror run
    double max_boundary_plane_defect = 0.0;       // runs against their fitted planes (relative)
};

// Discrete Enneper surface from the regular orthogonal pattern on a
// (2n+1)x(2n+1) grid patch: solve (radii are constant), lift, build the
// orthogonal spheres through the even sublattice and dualize.
BuiltSurface build_enneper(int n);

// Discrete Schwarz-P fundamental piece for even slice counts m, n, k: solve
// the quarter-pattern Neumann problem, unfold by the mirror symmetries, lift,
// assemble the branched octant piece (cube corners keep their six edges),
// build the Koebe structure and dualize.
BuiltSurface build_schwarz_p(int m, int n, int k);

}  // namespace circlekit
