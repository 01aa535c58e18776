#include "circlekit/mobius.hpp"

namespace circlekit {

Point3 apply(const Similarity& s, const Point3& p) {
    const Quaternion r = s.rotation * p.as_quaternion() * inverse(s.rotation);
    return imag_part(r) * s.scale + s.translation;
}

Similarity inverse(const Similarity& s) {
    Similarity inv;
    inv.rotation = s.rotation.conjugate() * (1.0 / s.rotation.norm2());
    inv.rotation = inv.rotation * (1.0 / inv.rotation.norm());
    inv.scale = 1.0 / s.scale;
    const Quaternion r = inv.rotation * s.translation.as_quaternion() * inverse(inv.rotation);
    inv.translation = -(imag_part(r) * inv.scale);
    return inv;
}

Point3 MobiusMap::operator()(const Point3& p) const {
    Point3 q = p;
    for (const Atom& a : atoms) {
        if (std::holds_alternative<Similarity>(a))
            q = apply(std::get<Similarity>(a), q);
        else
            q = sphere_invert(std::get<Sphere3>(a), q);
    }
    return q;
}

MobiusMap MobiusMap::inverted() const {
    MobiusMap inv;
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
        if (std::holds_alternative<Similarity>(*it))
            inv.atoms.push_back(inverse(std::get<Similarity>(*it)));
        else
            inv.atoms.push_back(*it);  // an inversion is its own inverse
    }
    return inv;
}

MobiusMap compose(const MobiusMap& first, const MobiusMap& then) {
    MobiusMap m = first;
    m.atoms.insert(m.atoms.end(), then.atoms.begin(), then.atoms.end());
    return m;
}

}  // namespace circlekit
