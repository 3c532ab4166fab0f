#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clasym/asymptotics.hpp"
#include "clasym/profiles.hpp"

namespace clasym {

enum class StudyKind {
  shock_shift,
  rarefaction,
  constant,
  periodic_decay,
  oracle_compare,
};

std::string to_string(StudyKind kind);

struct TimeSchedule {
  double first = 8.0;
  double ratio = 2.0;
  int count = 5;
  std::vector<double> times() const;
};

/// Optional pass/fail thresholds; an assertion is emitted for every field
/// that is set.
struct Thresholds {
  // decay slopes (errors ~ C t^slope)
  std::optional<double> slope_max;
  std::optional<double> slope_min;
  // shock study
  std::optional<double> final_residual_max;
  bool require_monotone_residual = false;
  std::optional<double> side_slope_max;
  std::optional<double> gluing_tol;  // paired with gluing_time
  std::optional<double> gluing_time;
  // rarefaction: errors dominated by C/sqrt(t), C from the first sample
  bool require_sqrt_domination = false;
  // invariants (needs track_invariants)
  std::optional<double> invariant_drift_factor;
  // sqrt envelope (needs sqrt_envelope)
  std::optional<double> envelope_growth_max;
  // periodic amplitude model |e(t) - C t^p| <= rel_tol * C t^p
  std::optional<double> amplitude_coefficient;
  std::optional<double> amplitude_exponent;
  std::optional<double> amplitude_rel_tol;
  // entropy constant bound, measured for t >= entropy_min_time
  std::optional<double> entropy_max;
  std::optional<double> entropy_min_time;
  // oracle comparison
  std::optional<double> oracle_gap_factor;  // gap <= factor * dx * range
  std::optional<double> oracle_ratio_min;
  std::optional<double> oracle_ratio_max;
};

struct OracleSettings {
  Interval read_window{-2.0, 2.0};
  std::vector<double> dx_list;
  double cfl = 0.9;
  double margin = 2.0;
  /// Explicit finite-volume window; auto-sized when absent. An explicit
  /// window too small for boundary validity is refused.
  std::optional<Interval> window;
};

struct ExperimentConfig {
  std::string flux_name = "burgers";
  CompositeInitialData data = CompositeInitialData::riemann(1.0, -1.0);
  /// Averages removed from sampled profiles (folded into the states).
  double folded_left = 0.0;
  double folded_right = 0.0;

  StudyKind kind = StudyKind::shock_shift;
  TimeSchedule schedule;
  bool track_invariants = false;
  bool sqrt_envelope = false;
  Thresholds thresholds;
  HarnessOptions harness;
  std::optional<OracleSettings> oracle;
  std::string output_dir;  // empty -> resolved by the CLI
  std::string raw_text;    // original config body, echoed into the summary

  /// Validates cross-field consistency; throws std::invalid_argument.
  void validate() const;
};

/// Parses and validates a config file. Parse errors carry line numbers.
ExperimentConfig load_config(const std::string& path);

/// Parses a config from a JSON string (used by tests).
ExperimentConfig parse_config(const std::string& text,
                              const std::string& origin = "<string>");

}  // namespace clasym
