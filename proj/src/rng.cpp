#include "circlekit/rng.hpp"

#include <cmath>

namespace circlekit {

Point3 Rng::unit_vector() {
    // Rejection sampling from the cube.
    for (;;) {
        const Point3 p = point_in_box(1.0);
        const double n2 = p.norm2();
        if (n2 > 1e-4 && n2 <= 1.0) return p / std::sqrt(n2);
    }
}

Quaternion Rng::unit_quaternion() {
    for (;;) {
        Quaternion q{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
        const double n2 = q.norm2();
        if (n2 > 1e-4 && n2 <= 1.0) return q * (1.0 / std::sqrt(n2));
    }
}

Similarity Rng::similarity(double max_translation) {
    Similarity s;
    s.rotation = unit_quaternion();
    s.scale = std::exp(uniform(-0.7, 0.7));
    s.translation = point_in_box(max_translation);
    return s;
}

Sphere3 Rng::inversion_sphere(double clearance) {
    Sphere3 s;
    const double dist = clearance * uniform(1.0, 2.0);
    s.center = unit_vector() * dist;
    s.radius = dist * uniform(0.3, 1.0);
    return s;
}

MobiusMap Rng::mobius(double clearance) {
    MobiusMap m;
    const int n = uniform_int(1, 3);
    for (int i = 0; i < n; ++i) {
        if (uniform() < 0.5)
            m.atoms.push_back(similarity(0.5));
        else
            m.atoms.push_back(inversion_sphere(clearance));
    }
    if (m.atoms.empty()) m.atoms.push_back(similarity(0.5));
    return m;
}

}  // namespace circlekit
