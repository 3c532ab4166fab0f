#pragma once

#include <cstddef>
#include <vector>

#include "clasym/common.hpp"
#include "clasym/flux.hpp"
#include "clasym/profiles.hpp"

namespace clasym {

struct SolverOptions {
  /// Coarse-scan density (points per unit length of the candidate
  /// interval) for the variational minimization.
  double scan_per_unit = 64.0;
  int min_scan_points = 64;
  /// Width of the final bracketing interval in y.
  double refine_tol = 1e-10;
  /// Relative tolerance for treating two basin minima as tied.
  double tie_tol = 1e-12;
  /// Jump flagging threshold as a fraction of the initial value range.
  double jump_threshold_factor = 1e-4;
};

/// Extreme global minimizers of the variational functional at one (x, t):
/// the leftmost minimizer yields u(x-, t), the rightmost u(x+, t).
struct MinimizeResult {
  double y_left = 0.0;
  double y_right = 0.0;
  double value = 0.0;
};

/// Pointwise samples of u(., t) on a window, with one-sided values and the
/// Hopf-Lax value function whose increments are exact integrals of u.
struct SolutionField {
  double t = 0.0;
  Interval window{};
  std::vector<double> x;
  std::vector<double> u_minus;
  std::vector<double> u_plus;
  std::vector<double> vf;
  double jump_threshold = 0.0;

  std::size_t size() const { return x.size(); }
  double dx() const {
    return x.size() > 1 ? (x.back() - x.front()) / double(x.size() - 1) : 0.0;
  }
  /// \int_{x_i}^{x_j} u dx, exact up to minimization tolerance.
  double integral_between(std::size_t i, std::size_t j) const {
    return vf[j] - vf[i];
  }
  double integral() const { return vf.back() - vf.front(); }
  /// Exact cell averages (vf[i+1]-vf[i])/dx; size() - 1 entries.
  std::vector<double> cell_averages() const;
  /// Clustered shock positions: point jumps and cell drops exceeding the
  /// threshold, merged when closer than two cells.
  std::vector<double> jump_positions() const;
};

/// Pointwise entropy-solution evaluator based on the variational principle
/// u(x,t) = (f')^{-1}((x - y*)/t) with y* minimizing
/// G(y) = U(y) + t f*((x - y)/t). Immutable and safe for concurrent use.
class VariationalSolver {
 public:
  VariationalSolver(FluxModel flux, CompositeInitialData data,
                    SolverOptions opts = {});

  /// One-sided solution value; t = 0 answers from the initial data.
  double evaluate(double x, double t, Side side = Side::right) const;

  /// min_y G(y); x-increments are exact integrals of u(., t).
  double value_function(double x, double t) const;

  MinimizeResult minimize(double x, double t) const;

  /// Uniform sampling with one-sided values and jump flags. The y-searches
  /// of neighbouring points bracket each other (minimizers are monotone in
  /// x), so whole-window sweeps stay cheap.
  SolutionField sample_field(Interval window, double t, int samples) const;

  double jump_threshold() const { return jump_threshold_; }
  const FluxModel& flux() const { return flux_; }
  const CompositeInitialData& data() const { return data_; }
  const SolverOptions& options() const { return opts_; }

 private:
  MinimizeResult minimize_impl(double x, double t, double y_lo,
                               double y_hi) const;
  double functional(double x, double t, double y) const;
  Interval candidate_interval(double x, double t) const;
  double initial_value(double x, Side side) const;

  FluxModel flux_;
  CompositeInitialData data_;
  SolverOptions opts_;
  Interval state_range_{};  // initial data range, slightly inflated
  double jump_threshold_ = 0.0;
};

enum class RiemannKind { shock, rarefaction, constant };

/// Closed-form Riemann solution used as the comparison target.
class RiemannSolution {
 public:
  RiemannSolution(double u_left, double u_right, FluxModel flux);

  RiemannKind kind() const { return kind_; }
  double speed() const { return speed_; }
  double u_left() const { return u_left_; }
  double u_right() const { return u_right_; }

  double evaluate(double x, double t) const;

 private:
  double u_left_, u_right_;
  FluxModel flux_;
  RiemannKind kind_;
  double speed_ = 0.0;
};

/// Solver for the purely periodic problem with data ubar + w.
VariationalSolver make_periodic_solver(const FluxModel& flux, double ubar,
                                       const PeriodicProfile& w,
                                       SolverOptions opts = {});

/// One-shot evaluation of the periodic entropy solution.
double periodic_reference(const PeriodicProfile& w, double ubar,
                          const FluxModel& flux, double x, double t);

/// Largest one-sided Oleinik ratio t*(u(x+dx)-u(x))/dx over the sampled
/// field; bounds the entropy constant E from below.
double measure_entropy_constant(const SolutionField& field);

}  // namespace clasym
