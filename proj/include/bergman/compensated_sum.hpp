#pragma once

#include <cmath>

namespace bergman {

/*!
  Neumaier's variant of Kahan summation.

  The running compensation also captures the error when the incoming term is
  larger in magnitude than the partial sum, which happens for the alternating
  odd-moment series.
*/
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(bool enabled) : enabled_(enabled) {}

  CompensatedSum& operator+=(double value) {
    if (!enabled_) {
      sum_ += value;
      return *this;
    }
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
  bool enabled_ = true;
};

}  // namespace bergman
