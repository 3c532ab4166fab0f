#pragma once

#include <span>
#include <vector>

namespace clasym {

enum class FitStatus {
  ok,
  /// All errors below the exactness floor; no decay rate to fit.
  exact,
  insufficient,
};

struct LogLogFit {
  double slope = 0.0;
  /// errors ~ constant * t^slope.
  double constant = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
  FitStatus status = FitStatus::insufficient;
};

/// Least-squares line through (log t, log e). Points with e <= floor are
/// dropped; if every error is below exact_floor the series is flagged
/// exact instead of fitted.
LogLogFit fit_loglog(std::span<const double> times,
                     std::span<const double> errors, double floor = 1e-13,
                     double exact_floor = 1e-10);

}  // namespace clasym
