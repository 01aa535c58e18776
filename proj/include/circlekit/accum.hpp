#pragma once

#include <cmath>

namespace circlekit {

// Neumaier compensated accumulator; totals stay order-deterministic to ~1e-13
// relative regardless of term magnitudes.
class KahanSum {
  public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace circlekit
