#pragma once

#include <optional>
#include <vector>

#include "clasym/fit.hpp"
#include "clasym/laxoleinik.hpp"

namespace clasym {

struct HarnessOptions {
  /// Sup-norm sampling density per (smallest) perturbation period.
  double samples_per_period = 64.0;
  /// Sup-norm window half-width in units of the largest period.
  double window_periods = 4.0;
  /// Grid density for transition/edge scans (points per unit length).
  double transition_per_unit = 16.0;
  /// Grid density for the invariant extremum scans.
  double invariant_per_unit = 32.0;
  /// Matching tolerance against the periodic references, as a fraction of
  /// the initial value range.
  double match_tol_factor = 1e-4;
  /// Safety margin (in periods) when sizing the divide anchors.
  double margin_periods = 2.0;
  /// Divide anchor index override; defaults to the smallest valid K.
  std::optional<int> K_override;
  int threads = 1;
  SolverOptions solver;
};

/// Deviation edges of u against the flanking periodic solutions.
struct TransitionScan {
  double t = 0.0;
  bool found_left = false;
  bool found_right = false;
  double left_edge = 0.0;   // first x (from the left) off u_l
  double right_edge = 0.0;  // last x (from the right) off u_r
  double width = 0.0;       // max(0, right_edge - left_edge)
  double midpoint = 0.0;
};

struct ShockLocation {
  double t = 0.0;
  /// Mass-balance estimate (primary).
  double position = 0.0;
  TransitionScan transition;
};

struct ShockTrace {
  std::vector<double> times;
  std::vector<double> positions;
  std::vector<double> predicted;  // s t + X_inf
  std::vector<double> residuals;  // positions - predicted
  double speed = 0.0;
  double shift = 0.0;
};

struct DecayReport {
  std::vector<double> times;
  std::vector<double> errors;
  LogLogFit fit;
};

struct ShockStudy {
  ShockTrace trace;
  DecayReport left_sup;   // sup_{x < X(t)} |u - u_left|
  DecayReport right_sup;  // sup_{x > X(t)} |u - u_right|
  DecayReport residual;   // |X(t) - s t - X_inf|
  DecayReport combined;   // sum of the three
};

struct InvariantTrace {
  std::vector<double> times;
  std::vector<double> P;
  std::vector<double> Q;
  double P0 = 0.0;
  double Q0 = 0.0;
};

/// sqrt(t)-envelope measurement of the deviation edges.
struct EdgeEnvelope {
  std::vector<double> times;
  std::vector<double> left_distance;   // |left_edge - f'(u_l) t|
  std::vector<double> right_distance;  // |right_edge - f'(u_r) t|
  std::vector<double> left_ratio;      // distance / sqrt(t)
  std::vector<double> right_ratio;
  /// No ratio in the later half exceeds growth_max times the running max.
  bool bounded = true;
};

enum class StudyTarget { shock, rarefaction, constant, periodic };

/// Verification harness around one initial datum: shock locator, decay
/// measurements, invariant tracker and edge envelopes. Evaluations are
/// pure; time samples fan out over threads when requested.
class AsymptoticsHarness {
 public:
  AsymptoticsHarness(const FluxModel& flux, CompositeInitialData data,
                     HarnessOptions opts = {});

  /// Mass-balance shock position at time t (u_left > u_right). Throws if
  /// the transition estimator disagrees by more than one period.
  double locate_shock(double t, std::optional<int> K1 = {}) const;
  ShockLocation locate_shock_detail(double t, std::optional<int> K1 = {}) const;

  ShockTrace shock_trace(const std::vector<double>& times) const;
  ShockStudy shock_study(const std::vector<double>& times) const;

  /// Smallest sampled t at which the transition interval collapses below
  /// one period; nullopt if it never does before t_max.
  std::optional<double> merge_time_estimate(double t_max) const;

  /// P(t), Q(t) for u_left <= u_right.
  InvariantTrace track_invariants(const std::vector<double>& times) const;

  EdgeEnvelope sqrt_bound_check(const std::vector<double>& times,
                                double growth_max = 1.1) const;

  DecayReport decay_study(StudyTarget target,
                          const std::vector<double>& times) const;

  /// Largest deviation from the periodic references outside the detected
  /// transition zone at time t.
  double max_gluing_deviation(double t) const;

  const VariationalSolver& solver() const { return solver_; }
  const VariationalSolver& left_reference() const { return left_ref_; }
  const VariationalSolver& right_reference() const { return right_ref_; }
  const CompositeInitialData& data() const { return solver_.data(); }
  const FluxModel& flux() const { return solver_.flux(); }
  const HarnessOptions& options() const { return opts_; }

  /// Divide anchors z -+ k p + f'(u_bar) t sized so the curves stay clear
  /// of the perturbed cone up to time horizon.
  int left_anchor_index(double horizon) const;
  int right_anchor_index(double horizon) const;
  double left_anchor(int k, double t) const;
  double right_anchor(int k, double t) const;

 private:
  TransitionScan transition_scan(double t, double lo, double hi) const;
  double supremum_window() const;
  double min_period() const;
  double max_period() const;

  HarnessOptions opts_;
  VariationalSolver solver_;
  VariationalSolver left_ref_;
  VariationalSolver right_ref_;
  double match_tol_ = 0.0;
};

}  // namespace clasym
