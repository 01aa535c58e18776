#pragma once

#include "circlekit/surface.hpp"

namespace circlekit {

// Angles parametrizing a regular lattice of acute triangles: phi1 orients the
// first lattice vector against the curvature direction, phi2/phi3 are the
// triangle angles at its ends. Membership in the moduli space requires
// 0 <= phi1 < pi/2, 0 < phi2,phi3 < pi/2 and phi2 + phi3 > pi/2.
struct LatticeAngles {
    double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
    bool in_moduli_space() const;
};

// Lattice vectors a, c in the parameter plane (|a| = 1, b = a + c).
void lattice_vectors(const LatticeAngles& phi, double a[2], double c[2]);

// Limit quotient of the discrete over the smooth Willmore energy of the
// regular-lattice hexagon; > 1 on the open moduli space, 3/2 at the
// equilateral lattice. Throws outside the moduli space.
double quotient_Q(const LatticeAngles& phi);

// Seven-vertex hexagonal star sampled from the quadratic graph
// (x, y) -> (x, y, (k1 x^2 + k2 y^2)/2) at the scaled lattice points
// +-eps a, +-eps b, +-eps c; vertex 0 is the center.
SimplicialSurface model_hexagon(double k1, double k2, const LatticeAngles& phi, double eps);

// Parameter-plane area weight S = eps^2 |a||c| sin(gamma) of the hexagon star
// (the smooth energy of the piece is (k1-k2)^2 S / 4).
double model_hexagon_area_weight(const LatticeAngles& phi, double eps);

}  // namespace circlekit
