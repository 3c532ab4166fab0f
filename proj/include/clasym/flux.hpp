#pragma once

#include <functional>
#include <string>
#include <vector>

#include "clasym/common.hpp"

namespace clasym {

/// Strictly convex flux together with the derived quantities the solvers
/// consume: f, the characteristic speed f', its inverse on the working
/// range, and the convex conjugate f*.
///
/// Immutable after construction; all queries are pure and thread-safe.
class FluxModel {
 public:
  using Fn = std::function<double(double)>;

  /// Flux with analytic inverse derivative and conjugate.
  FluxModel(std::string name, Fn f, Fn fprime, Fn fprime_inv, Fn legendre,
            Interval working_range);

  /// Flux given only f and f'; the inverse is solved by Newton with a
  /// bisection fallback and the conjugate derived from it.
  FluxModel(std::string name, Fn f, Fn fprime, Interval working_range);

  double f(double u) const { return f_(u); }
  double fprime(double u) const { return fprime_(u); }

  /// Inverse of f' on the working range. s must lie in speed_range().
  double fprime_inv(double s) const;

  /// Convex conjugate f*(s) = sup_u [s u - f(u)]; s in speed_range().
  double legendre(double s) const;

  const std::string& name() const { return name_; }
  const Interval& working_range() const { return range_; }

  /// [f'(u_min), f'(u_max)] — admissible speeds.
  Interval speed_range() const { return speed_range_; }

  /// Sampled lower bound of f'' over the working range (may be ~0 for
  /// fluxes whose second derivative vanishes at isolated points).
  double convexity_floor() const { return convexity_floor_; }

  /// Same flux restricted/extended to a different state range.
  FluxModel with_range(Interval range) const;

  /// Throws std::domain_error if u is outside the working range.
  void require_state(double u) const;

 private:
  void finalize();

  std::string name_;
  Fn f_;
  Fn fprime_;
  Fn fprime_inv_;  // may be empty -> numeric
  Fn legendre_;    // may be empty -> derived from fprime_inv
  Interval range_;
  Interval speed_range_{};
  double convexity_floor_ = 0.0;
};

/// Averaged characteristic speed between the states u and v. Equals the
/// Rankine-Hugoniot quotient (f(u)-f(v))/(u-v) for u != v and f'(u) in the
/// degenerate limit.
double sigma(const FluxModel& flux, double u, double v);

/// f*(s) for s in the admissible speed range.
double legendre_transform(const FluxModel& flux, double s);

FluxModel burgers_flux(Interval range = {-8.0, 8.0});
FluxModel quartic_flux(Interval range = {-8.0, 8.0});
FluxModel cosh_flux(Interval range = {-8.0, 8.0});

std::vector<FluxModel> builtin_fluxes();

/// Lookup by name ("burgers", "quartic", "cosh"); throws on unknown names.
FluxModel flux_by_name(const std::string& name, Interval range = {-8.0, 8.0});

}  // namespace clasym
