#pragma once

#include <cmath>

namespace rfsum {

// Neumaier's variant of Kahan summation. The running error term is kept
// separately and folded in on value(), so merge() of two partials in a
// fixed order is deterministic.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  explicit constexpr CompensatedSum(double x) : sum_(x) {}

  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  void merge(const CompensatedSum& other) noexcept {
    add(other.sum_);
    comp_ += other.comp_;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace rfsum
