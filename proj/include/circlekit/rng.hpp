#pragma once

#include <cstdint>

#include "circlekit/mobius.hpp"
#include "circlekit/quaternion.hpp"

namespace circlekit {

// splitmix64: tiny, portable, deterministic across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Point3 point_in_box(double half) {
        return {uniform(-half, half), uniform(-half, half), uniform(-half, half)};
    }

    Point3 unit_vector();
    Quaternion unit_quaternion();
    Similarity similarity(double max_translation = 1.0);

    // Random inversion sphere whose center stays at distance >= clearance from
    // the origin (keeps test meshes away from the pole of the map).
    Sphere3 inversion_sphere(double clearance);

    MobiusMap mobius(double clearance);

  private:
    std::uint64_t state_;
};

}  // namespace circlekit
