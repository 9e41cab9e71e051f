#pragma once

#include <cmath>

namespace pisum {

/// Neumaier compensated summation.
class compensated_sum {
 public:
  compensated_sum& operator+=(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  compensated_sum& operator-=(double v) { return *this += -v; }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace pisum
