#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace clasym {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }

  bool contains(double x, double slack = 0.0) const {
    return x >= lo - slack && x <= hi + slack;
  }

  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }

  Interval inflated(double margin) const { return {lo - margin, hi + margin}; }

  Interval hull(const Interval& other) const {
    return {std::min(lo, other.lo), std::max(hi, other.hi)};
  }
};

/// Which one-sided limit of a BV function to take.
enum class Side { left, right };

/// Wrap x into [0, p). Exact for x already in range.
inline double wrap_period(double x, double p) {
  double r = x - p * std::floor(x / p);
  if (r >= p) r -= p;  // guard against floor rounding at the seam
  if (r < 0.0) r = 0.0;
  return r;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace clasym
