#pragma once

#include "circlekit/circles.hpp"
#include "circlekit/quaternion.hpp"

namespace circlekit {

// Seven vertices of a combinatorial cube, indexed by binary coordinates; the
// eighth vertex v111 is the one Miquel's theorem supplies. The three faces
// through v000 are required to be circular.
struct MiquelCube {
    Point3 v000, v100, v010, v001, v110, v101, v011;
};

struct MiquelResult {
    Point3 point;                // common intersection of the three remaining circles
    double concurrency_residual; // max distance defect of the point against those circles
};

// Distance defect of four points against a common circle (0 for concyclic input).
double concyclicity_defect(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

// Completes the cube: returns the common point of the circles through
// (v100,v110,v101), (v010,v110,v011) and (v001,v011,v101).
// Throws when an input face is not circular within face_tol (relative to its
// circumradius) or when the circles fail to be concurrent.
MiquelResult miquel_point(const MiquelCube& cube, double face_tol = 1e-8);

}  // namespace circlekit
