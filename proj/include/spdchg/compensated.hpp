#pragma once

#include <cmath>
#include <limits>

namespace spdchg {

// Neumaier's variant of Kahan summation.  Besides the compensated sum it
// tracks the running sum of magnitudes, whose ratio to the result is the
// cancellation (condition) diagnostic used to police alternating series.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;
  double abs_sum = 0.0;
  long count = 0;

  void add(double value) {
    abs_sum += std::abs(value);
    ++count;
    const double t = sum + value;
    if (std::abs(sum) >= std::abs(value))
      compensation += (sum - t) + value;
    else
      compensation += (value - t) + sum;
    sum = t;
  }

  double value() const { return sum + compensation; }

  // sum|terms| / |sum terms|; 1 for an empty or single-signed trivial sum.
  double condition() const {
    const double v = std::abs(value());
    if (abs_sum == 0.0) return 1.0;
    if (v == 0.0) return std::numeric_limits<double>::infinity();
    return abs_sum / v;
  }
};

}  // namespace spdchg
