#pragma once

#include <optional>
#include <vector>

#include "clasym/common.hpp"
#include "clasym/flux.hpp"

namespace clasym {

/// Bounded periodic perturbation with zero average. Analytic waveforms
/// (sine, cosine, sawtooth) carry closed-form primitives; sampled profiles
/// are piecewise-linear over a uniform grid with exact piecewise-quadratic
/// primitives.
class PeriodicProfile {
 public:
  static PeriodicProfile zero(double period = 1.0);
  static PeriodicProfile sine(double amplitude, double period,
                              double phase = 0.0);
  static PeriodicProfile cosine(double amplitude, double period,
                                double phase = 0.0);
  /// Rises linearly from -amplitude to +amplitude over one period.
  static PeriodicProfile sawtooth(double amplitude, double period,
                                  double phase = 0.0);
  /// Piecewise-linear through samples at x_i = i*period/n (wrapping).
  /// The samples are assumed already zero-average; see
  /// normalize_zero_average for raw data.
  static PeriodicProfile from_samples(std::vector<double> samples,
                                      double period);

  double period() const { return period_; }
  bool is_zero() const;
  double sup_norm() const;
  Interval value_range() const;

  /// Periodic extension w(x).
  double value(double x) const;

  /// Exact primitive B(x) = \int_0^x w; periodic with period p because the
  /// average vanishes.
  double primitive(double x) const;

  /// min over R of the primitive (attained in [0, p)).
  double primitive_min() const { return primitive_min_; }

  /// Smallest z in [0, p) attaining the primitive minimum.
  double argmin_in_period() const { return argmin_; }

 private:
  enum class Form { zero, sine, cosine, sawtooth, samples };

  PeriodicProfile(Form form, double amplitude, double period, double phase);
  void compute_argmin();

  Form form_ = Form::zero;
  double amplitude_ = 0.0;
  double period_ = 1.0;
  double phase_ = 0.0;

  // sampled representation
  std::vector<double> samples_;
  std::vector<double> cum_;  // cum_[i] = \int_0^{x_i} w, exact
  double grid_h_ = 0.0;

  double primitive_min_ = 0.0;
  double argmin_ = 0.0;
};

struct NormalizedProfile {
  PeriodicProfile profile;
  /// Constant subtracted from the raw samples; fold it into the far-field
  /// state.
  double removed_average;
};

/// Subtracts the exact average of the piecewise-linear interpolant so the
/// stored profile integrates to zero over one period.
NormalizedProfile normalize_zero_average(std::vector<double> raw_samples,
                                         double period);

struct ArgminResult {
  double z;
  double min_value;
};

/// Smallest minimizer of the running primitive over one period.
ArgminResult argmin_primitive(const PeriodicProfile& profile);

/// Compactly supported deviation from the glued periodic background,
/// living on [-N, N].
class MiddleDeviation {
 public:
  static MiddleDeviation zero(double halfwidth);
  /// Parabolic bump scaled to the requested integral, supported on
  /// [center-width, center+width] (must fit inside [-N, N]).
  static MiddleDeviation bump(double halfwidth, double mass,
                              double center = 0.0, double width = 1.0);
  /// Piecewise-linear through uniform samples spanning [-N, N].
  static MiddleDeviation from_samples(double halfwidth,
                                      std::vector<double> samples);

  double halfwidth() const { return halfwidth_; }
  double value(double x) const;
  /// \int_0^x of the deviation (constant outside [-N, N]).
  double primitive(double x) const;
  double mass() const;
  Interval value_range() const;
  bool is_zero() const;

 private:
  explicit MiddleDeviation(double halfwidth) : halfwidth_(halfwidth) {}

  double halfwidth_ = 1.0;
  // bump parameters (width_ == 0 means no bump)
  double bump_mass_ = 0.0, bump_center_ = 0.0, bump_width_ = 0.0;
  std::vector<double> samples_;
  std::vector<double> cum_;  // from -N
  double grid_h_ = 0.0;
};

/// The full initial datum: far-field states with periodic perturbations on
/// both sides plus a compact deviation in the middle. For x < 0 the
/// background is u_left + w_left(x), for x >= 0 it is u_right + w_right(x);
/// the middle deviation vanishes outside [-N, N].
class CompositeInitialData {
 public:
  CompositeInitialData(double u_left, double u_right, PeriodicProfile left,
                       PeriodicProfile right, MiddleDeviation middle);

  /// Two-state Riemann datum (zero perturbations).
  static CompositeInitialData riemann(double u_left, double u_right);
  /// Purely periodic datum ubar + w everywhere.
  static CompositeInitialData periodic(double ubar, PeriodicProfile w);

  double u_left() const { return u_left_; }
  double u_right() const { return u_right_; }
  const PeriodicProfile& profile_left() const { return left_; }
  const PeriodicProfile& profile_right() const { return right_; }
  const MiddleDeviation& middle() const { return middle_; }
  double halfwidth() const { return middle_.halfwidth(); }

  double background(double x) const;
  double value(double x) const;  // u0(x)

  /// Exact primitive U(x) = \int_0^x u0.
  double primitive(double x) const;

  /// \int_a^b u0 exactly.
  double integral(double a, double b) const {
    return primitive(b) - primitive(a);
  }

  /// Hull of all values taken by u0 (conservative, exact for zero middle).
  Interval total_range() const { return total_range_; }

  double middle_mass() const { return middle_.mass(); }

 private:
  double u_left_, u_right_;
  PeriodicProfile left_, right_;
  MiddleDeviation middle_;
  Interval total_range_{};
};

/// Asymptotic shock shift for u_left > u_right: combines the middle mass
/// with the difference of the two primitive minima.
double shift_X_infinity(const CompositeInitialData& data);

/// True iff the running integral of (u0 - ubar) from x0 stays nonnegative,
/// which certifies u(x0 + f'(ubar) t, t) = ubar for all t.
bool is_divide(const CompositeInitialData& data, double ubar, double x0);

struct InitialInvariants {
  double P0;  // <= 0
  double Q0;  // >= 0
};

/// Extremal primitives measured from the k = K divide anchors. Requires
/// u_left <= u_right and K large enough that the anchors clear [-N, N].
InitialInvariants initial_invariants(const CompositeInitialData& data, int K);

/// Smallest K with z_l - K p_l <= -N and z_r + K p_r >= N.
int smallest_valid_K(const CompositeInitialData& data);

/// Divide-anchored characteristic z -+ k p + f'(ubar) t.
double gamma_curve(Side side, int k, double t, const CompositeInitialData& data,
                   const FluxModel& flux);

}  // namespace clasym
