#pragma once

#include <variant>
#include <vector>

#include "circlekit/circles.hpp"
#include "circlekit/quaternion.hpp"

namespace circlekit {

// Euclidean similarity x -> scale * R x + translation, R a rotation given by a
// unit quaternion (x -> q x q^{-1} on imaginary quaternions).
struct Similarity {
    Quaternion rotation = Quaternion::identity();
    double scale = 1.0;
    Point3 translation;
};

Point3 apply(const Similarity& s, const Point3& p);
Similarity inverse(const Similarity& s);

// Moebius transformation of R^3 u {inf} as a composition list of similarities
// and sphere inversions, applied left to right.
struct MobiusMap {
    using Atom = std::variant<Similarity, Sphere3>;
    std::vector<Atom> atoms;

    Point3 operator()(const Point3& p) const;
    MobiusMap inverted() const;

    static MobiusMap identity() { return {}; }
    static MobiusMap similarity(const Similarity& s) { return {{Atom{s}}}; }
    static MobiusMap inversion(const Sphere3& s) { return {{Atom{s}}}; }
};

MobiusMap compose(const MobiusMap& first, const MobiusMap& then);

}  // namespace circlekit
