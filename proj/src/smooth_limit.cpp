#include "circlekit/smooth_limit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace circlekit {

using std::numbers::pi;

bool LatticeAngles::in_moduli_space() const {
    return phi1 >= 0.0 && phi1 < pi / 2 && phi2 > 0.0 && phi2 < pi / 2 && phi3 > 0.0 && phi3 < pi / 2 &&
           phi2 + phi3 > pi / 2;
}

void lattice_vectors(const LatticeAngles& phi, double a[2], double c[2]) {
    a[0] = std::cos(phi.phi1);
    a[1] = std::sin(phi.phi1);
    const double m = std::sin(phi.phi2) / std::sin(phi.phi3);
    c[0] = m * std::cos(phi.phi1 + phi.phi2 + phi.phi3);
    c[1] = m * std::sin(phi.phi1 + phi.phi2 + phi.phi3);
}

double quotient_Q(const LatticeAngles& phi) {
    if (!phi.in_moduli_space()) throw std::invalid_argument("quotient_Q: angles outside the moduli space");
    const double t1 = std::cos(2 * phi.phi1) * std::cos(phi.phi3) + std::cos(2 * phi.phi1 + 2 * phi.phi2 + phi.phi3);
    const double t2 = std::sin(2 * phi.phi1) * std::cos(phi.phi3);
    const double den = 4.0 * std::cos(phi.phi2) * std::cos(phi.phi3) * std::cos(phi.phi2 + phi.phi3);
    return 1.0 - (t1 * t1 + t2 * t2) / den;
}

SimplicialSurface model_hexagon(double k1, double k2, const LatticeAngles& phi, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("model_hexagon: eps must be positive");
    if (!phi.in_moduli_space()) throw std::invalid_argument("model_hexagon: angles outside the moduli space");
    double a[2], c[2];
    lattice_vectors(phi, a, c);
    const double b[2] = {a[0] + c[0], a[1] + c[1]};

    auto graph = [&](const double p[2]) {
        const double x = eps * p[0], y = eps * p[1];
        return Point3{x, y, 0.5 * (k1 * x * x + k2 * y * y)};
    };
    const double ma[2] = {-a[0], -a[1]}, mb[2] = {-b[0], -b[1]}, mc[2] = {-c[0], -c[1]};
    std::vector<Point3> pos = {Point3{0, 0, 0}, graph(a), graph(b), graph(c), graph(ma), graph(mb), graph(mc)};
    std::vector<std::array<int, 3>> faces;
    for (int i = 0; i < 6; ++i) faces.push_back({0, 1 + i, 1 + (i + 1) % 6});
    return SimplicialSurface(std::move(pos), std::move(faces));
}

double model_hexagon_area_weight(const LatticeAngles& phi, double eps) {
    double a[2], c[2];
    lattice_vectors(phi, a, c);
    const double crossz = std::abs(a[0] * c[1] - a[1] * c[0]);
    return eps * eps * crossz;  // |a||c| sin(gamma)
}

}  // namespace circlekit
