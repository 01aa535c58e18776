#pragma once

#include <cmath>
#include <iosfwd>

namespace circlekit {

// Quaternion q = w + x i + y j + z k with the standard relations
// ij = k, jk = i, ki = j, ii = jj = kk = -1.
struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion identity() { return {1, 0, 0, 0}; }

    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }

    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

// Hamilton product.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion inverse(const Quaternion& q) {
    double n2 = q.norm2();
    return {q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

// Point in Euclidean 3-space, identified with the imaginary quaternion x i + y j + z k.
struct Point3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Point3() = default;
    constexpr Point3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Point3 operator-() const { return {-x, -y, -z}; }
    constexpr Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Point3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Point3& operator+=(const Point3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Point3& operator-=(const Point3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Point3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    constexpr double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    constexpr Quaternion as_quaternion() const { return {0.0, x, y, z}; }

    constexpr bool operator==(const Point3&) const = default;
};

constexpr Point3 operator*(double s, const Point3& p) { return p * s; }

constexpr double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Point3 cross(const Point3& a, const Point3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double distance(const Point3& a, const Point3& b) { return (a - b).norm(); }

inline Point3 normalized(const Point3& p) {
    double n = p.norm();
    return {p.x / n, p.y / n, p.z / n};
}

inline Point3 imag_part(const Quaternion& q) { return {q.x, q.y, q.z}; }

std::ostream& operator<<(std::ostream& os, const Point3& p);

// Quaternionic cross-ratio (x1-x2)(x2-x3)^{-1}(x3-x4)(x4-x1)^{-1} of four points
// regarded as imaginary quaternions. Its norm and |Im| are Moebius invariants,
// and it is real exactly for concyclic quadrilaterals.
Quaternion cross_ratio(const Point3& x1, const Point3& x2, const Point3& x3, const Point3& x4);

// External intersection angle in [0,pi] between the circumcircles of triangles
// (shared1, shared2, apex_left) and (shared1, shared2, apex_right), evaluated by
// the scalar-product formula. Symmetric both under swapping the shared points
// together with the apexes and under swapping the apexes alone.
double external_angle(const Point3& shared1, const Point3& shared2, const Point3& apex_left,
                      const Point3& apex_right);

// Scale-invariant degeneracy test: a triangle counts as degenerate when twice its
// area falls below 1e-12 times the squared longest edge.
bool triangle_degenerate(const Point3& a, const Point3& b, const Point3& c);

}  // namespace circlekit
