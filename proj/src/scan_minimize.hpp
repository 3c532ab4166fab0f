#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace clasym::detail {

// Golden-section search for the minimum of f on [a, b]. The bracket is
// assumed to contain a local minimum; endpoints are admissible answers.
template <class F>
double golden_min(F&& f, double a, double b, double xtol) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

struct ScalarMin {
  double x = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

// Dense scan over [lo, hi] followed by golden-section refinement of every
// competitive local basin. Returns the smallest minimum; ties resolve to
// the leftmost location. n is the number of cells in the scan grid.
template <class F>
ScalarMin scan_minimize(F&& f, double lo, double hi, int n, double xtol) {
  if (!(hi > lo)) return {lo, f(lo)};
  if (n < 2) n = 2;
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  const double h = (hi - lo) / n;
  double gmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    g[i] = f(lo + i * h);
    gmin = std::min(gmin, g[i]);
  }
  // Basin-selection slack: the coarse value of the true global basin can
  // sit above gmin by the local sampling error, estimated from second
  // differences.
  double dd = 0.0;
  for (int i = 1; i < n; ++i)
    dd = std::max(dd, std::abs(g[i - 1] - 2.0 * g[i] + g[i + 1]));
  const double tau = std::max(1e-8 * (1.0 + std::abs(gmin)), 2.0 * dd);

  ScalarMin best;
  auto consider = [&](double x, double value) {
    const double eps = 1e-14 * (1.0 + std::abs(value));
    if (value < best.value - eps)
      best = {x, value};
    else if (value <= best.value + eps && x < best.x)
      best = {x, std::min(value, best.value)};
  };
  for (int i = 0; i <= n; ++i) {
    const bool left_ok = (i == 0) || g[i] <= g[i - 1];
    const bool right_ok = (i == n) || g[i] <= g[i + 1];
    if (!(left_ok && right_ok) || g[i] > gmin + tau) continue;
    const double a = lo + (i > 0 ? (i - 1) : 0) * h;
    const double b = lo + (i < n ? (i + 1) : n) * h;
    const double x = golden_min(f, a, b, xtol);
    const double v = f(x);
    if (v <= g[i])
      consider(x, v);
    else
      consider(lo + i * h, g[i]);
  }
  return best;
}

}  // namespace clasym::detail
