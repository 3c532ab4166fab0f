#include "clasym/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "clasym/parallel.hpp"
#include "scan_minimize.hpp"

namespace clasym {

namespace {

int field_samples(double span, double per_unit, int floor = 128) {
  return std::max(floor, static_cast<int>(std::ceil(span * per_unit)) + 1);
}

void require_increasing(const std::vector<double>& times) {
  require(!times.empty(), "empty time schedule");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    require(times[i] < times[i + 1], "times must be strictly increasing");
  require(times.front() > 0.0, "times must be positive");
}

}  // namespace

AsymptoticsHarness::AsymptoticsHarness(const FluxModel& flux,
                                       CompositeInitialData data,
                                       HarnessOptions opts)
    : opts_(opts),
      solver_(flux, data, opts.solver),
      left_ref_(flux, CompositeInitialData::periodic(data.u_left(),
                                                     data.profile_left()),
                opts.solver),
      right_ref_(flux, CompositeInitialData::periodic(data.u_right(),
                                                      data.profile_right()),
                 opts.solver) {
  match_tol_ =
      opts_.match_tol_factor * std::max(data.total_range().length(), 1e-10);
}

double AsymptoticsHarness::min_period() const {
  return std::min(data().profile_left().period(),
                  data().profile_right().period());
}

double AsymptoticsHarness::max_period() const {
  return std::max(data().profile_left().period(),
                  data().profile_right().period());
}

double AsymptoticsHarness::supremum_window() const {
  return opts_.window_periods * max_period();
}

int AsymptoticsHarness::left_anchor_index(double horizon) const {
  const auto& d = data();
  const double pl = d.profile_left().period();
  const double zl = d.profile_left().argmin_in_period();
  const double drift = flux().fprime(d.u_left()) -
                       flux().fprime(d.total_range().lo);
  const double need =
      d.halfwidth() + drift * horizon + opts_.margin_periods * pl;
  const int k = static_cast<int>(std::ceil((zl + need) / pl));
  return std::max({k, smallest_valid_K(d), opts_.K_override.value_or(0)});
}

int AsymptoticsHarness::right_anchor_index(double horizon) const {
  const auto& d = data();
  const double pr = d.profile_right().period();
  const double zr = d.profile_right().argmin_in_period();
  const double drift = flux().fprime(d.total_range().hi) -
                       flux().fprime(d.u_right());
  const double need =
      d.halfwidth() + drift * horizon + opts_.margin_periods * pr;
  const int k = static_cast<int>(std::ceil((need - zr) / pr));
  return std::max({k, smallest_valid_K(d), opts_.K_override.value_or(0)});
}

double AsymptoticsHarness::left_anchor(int k, double t) const {
  return gamma_curve(Side::left, k, t, data(), flux());
}

double AsymptoticsHarness::right_anchor(int k, double t) const {
  return gamma_curve(Side::right, k, t, data(), flux());
}

// ---------------------------------------------------------------------------
// Transition scan

TransitionScan AsymptoticsHarness::transition_scan(double t, double lo,
                                                   double hi) const {
  TransitionScan scan;
  scan.t = t;
  const int n = field_samples(hi - lo, opts_.transition_per_unit);
  const SolutionField u = solver_.sample_field({lo, hi}, t, n);
  const SolutionField ul = left_ref_.sample_field({lo, hi}, t, n);
  const SolutionField ur = right_ref_.sample_field({lo, hi}, t, n);

  for (int i = 0; i < n; ++i) {
    if (std::abs(u.u_plus[i] - ul.u_plus[i]) > match_tol_ ||
        std::abs(u.u_minus[i] - ul.u_minus[i]) > match_tol_) {
      scan.found_left = true;
      scan.left_edge = u.x[i];
      break;
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    if (std::abs(u.u_plus[i] - ur.u_plus[i]) > match_tol_ ||
        std::abs(u.u_minus[i] - ur.u_minus[i]) > match_tol_) {
      scan.found_right = true;
      scan.right_edge = u.x[i];
      break;
    }
  }
  if (scan.found_left && scan.found_right) {
    scan.width = std::max(0.0, scan.right_edge - scan.left_edge);
    scan.midpoint = 0.5 * (scan.left_edge + scan.right_edge);
  }
  return scan;
}

// ---------------------------------------------------------------------------
// Shock location

ShockLocation AsymptoticsHarness::locate_shock_detail(
    double t, std::optional<int> K1) const {
  const auto& d = data();
  require(d.u_left() > d.u_right(),
          "locate_shock: requires u_left > u_right");
  require(t > 0.0, "locate_shock: t must be positive");

  const int kl = K1 ? *K1 : left_anchor_index(t);
  const int kr = K1 ? *K1 : right_anchor_index(t);
  const double gl = left_anchor(kl, t);
  const double gr = right_anchor(kr, t);
  // Bracketing validity: the anchors must enclose the cone reachable from
  // the middle region.
  const Interval r = d.total_range();
  const double cone_lo = -d.halfwidth() + flux().fprime(r.lo) * t;
  const double cone_hi = d.halfwidth() + flux().fprime(r.hi) * t;
  require(gl <= cone_lo && gr >= cone_hi,
          "locate_shock: K1 too small to bracket the perturbed region");

  const double ubar_l = d.u_left();
  const double ubar_r = d.u_right();
  const double mass =
      solver_.value_function(gr, t) - solver_.value_function(gl, t);

  // Mass balance: mass = ubar_l (X - gl) + ubar_r (gr - X) + periodic
  // remainders; solve for X, then correct with the reference solutions'
  // exact remainders (two fixed-point sweeps suffice, the corrections are
  // O(p^2/t)).
  const double denom = ubar_l - ubar_r;
  double x_est = (mass + ubar_l * gl - ubar_r * gr) / denom;
  const double vl_gl = left_ref_.value_function(gl, t);
  const double vr_gr = right_ref_.value_function(gr, t);
  for (int pass = 0; pass < 2; ++pass) {
    const double corr_l =
        left_ref_.value_function(x_est, t) - vl_gl - ubar_l * (x_est - gl);
    const double corr_r =
        vr_gr - right_ref_.value_function(x_est, t) - ubar_r * (gr - x_est);
    x_est = (mass + ubar_l * gl - ubar_r * gr - corr_l - corr_r) / denom;
  }

  ShockLocation loc;
  loc.t = t;
  loc.position = x_est;
  loc.transition = transition_scan(t, gl, gr);
  if (loc.transition.found_left && loc.transition.found_right) {
    if (std::abs(loc.transition.midpoint - x_est) > max_period())
      throw std::runtime_error(
          "locate_shock: mass and transition estimators disagree at t=" +
          std::to_string(t));
  }
  return loc;
}

double AsymptoticsHarness::locate_shock(double t, std::optional<int> K1) const {
  return locate_shock_detail(t, K1).position;
}

ShockTrace AsymptoticsHarness::shock_trace(
    const std::vector<double>& times) const {
  require_increasing(times);
  ShockTrace trace;
  trace.speed = sigma(flux(), data().u_left(), data().u_right());
  trace.shift = shift_X_infinity(data());
  trace.times = times;
  trace.positions.resize(times.size());
  parallel_for(times.size(), opts_.threads, [&](std::size_t i) {
    trace.positions[i] = locate_shock(times[i]);
  });
  for (std::size_t i = 0; i < times.size(); ++i) {
    trace.predicted.push_back(trace.speed * times[i] + trace.shift);
    trace.residuals.push_back(trace.positions[i] - trace.predicted[i]);
  }
  return trace;
}

ShockStudy AsymptoticsHarness::shock_study(
    const std::vector<double>& times) const {
  require_increasing(times);
  ShockStudy study;
  study.trace.speed = sigma(flux(), data().u_left(), data().u_right());
  study.trace.shift = shift_X_infinity(data());
  study.trace.times = times;
  study.trace.positions.resize(times.size());

  const double w = supremum_window();
  const double delta = min_period() / 16.0;
  std::vector<double> sup_l(times.size()), sup_r(times.size());
  parallel_for(times.size(), opts_.threads, [&](std::size_t i) {
    const double t = times[i];
    const ShockLocation loc = locate_shock_detail(t);
    study.trace.positions[i] = loc.position;
    const double x = loc.position;
    const int n = field_samples(w, opts_.samples_per_period / min_period());
    const SolutionField left =
        solver_.sample_field({x - w, x - delta}, t, n);
    const SolutionField right =
        solver_.sample_field({x + delta, x + w}, t, n);
    double el = 0.0, er = 0.0;
    for (int j = 0; j < n; ++j) {
      el = std::max(el, std::abs(left.u_minus[j] - data().u_left()));
      er = std::max(er, std::abs(right.u_plus[j] - data().u_right()));
    }
    sup_l[i] = el;
    sup_r[i] = er;
  });

  study.trace.predicted.resize(times.size());
  study.trace.residuals.resize(times.size());
  std::vector<double> resid(times.size()), combined(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    study.trace.predicted[i] = study.trace.speed * times[i] + study.trace.shift;
    study.trace.residuals[i] = study.trace.positions[i] - study.trace.predicted[i];
    resid[i] = std::abs(study.trace.residuals[i]);
    combined[i] = sup_l[i] + sup_r[i] + resid[i];
  }
  auto report = [&](std::vector<double> errs) {
    DecayReport r;
    r.times = times;
    r.errors = std::move(errs);
    r.fit = fit_loglog(r.times, r.errors);
    return r;
  };
  study.left_sup = report(sup_l);
  study.right_sup = report(sup_r);
  study.residual = report(resid);
  study.combined = report(combined);
  return study;
}

std::optional<double> AsymptoticsHarness::merge_time_estimate(
    double t_max) const {
  require(data().u_left() > data().u_right(),
          "merge_time_estimate: requires u_left > u_right");
  const double p = max_period();
  for (double t = 0.5; t <= t_max; t *= 1.5) {
    const int kl = left_anchor_index(t);
    const int kr = right_anchor_index(t);
    const TransitionScan scan =
        transition_scan(t, left_anchor(kl, t), right_anchor(kr, t));
    if (!scan.found_left || !scan.found_right) return t;  // zone not visible
    if (scan.width <= p) return t;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Invariants

InvariantTrace AsymptoticsHarness::track_invariants(
    const std::vector<double>& times) const {
  require_increasing(times);
  const auto& d = data();
  require(d.u_left() <= d.u_right() + 1e-12,
          "track_invariants: requires u_left <= u_right");
  const double horizon = times.back();
  const int kl = left_anchor_index(horizon);
  const int kr = right_anchor_index(horizon);

  InvariantTrace trace;
  trace.times = times;
  trace.P.resize(times.size());
  trace.Q.resize(times.size());
  const auto inv0 = initial_invariants(d, std::max(kl, kr));
  trace.P0 = inv0.P0;
  trace.Q0 = inv0.Q0;

  parallel_for(times.size(), opts_.threads, [&](std::size_t i) {
    const double t = times[i];
    const double gl = left_anchor(kl, t);
    const double gr = right_anchor(kr, t);
    const int n = field_samples(gr - gl, opts_.invariant_per_unit);
    const SolutionField f = solver_.sample_field({gl, gr}, t, n);
    const double ul = d.u_left();
    const double ur = d.u_right();

    // P: smallest running integral of (u - ubar_l) from the left anchor.
    double p_best = 0.0;
    std::size_t p_idx = 0;
    for (int j = 0; j < n; ++j) {
      const double v = f.vf[j] - f.vf[0] - ul * (f.x[j] - gl);
      if (v < p_best) {
        p_best = v;
        p_idx = static_cast<std::size_t>(j);
      }
    }
    // Refine around the best grid point.
    {
      const double a = f.x[p_idx > 0 ? p_idx - 1 : 0];
      const double b = f.x[std::min<std::size_t>(p_idx + 1, n - 1)];
      auto fn = [&](double x) {
        return solver_.value_function(x, t) - f.vf[0] - ul * (x - gl);
      };
      const double x = detail::golden_min(fn, a, b, 1e-9 * (1.0 + gr - gl));
      p_best = std::min(p_best, fn(x));
    }

    double q_best = 0.0;
    std::size_t q_idx = static_cast<std::size_t>(n - 1);
    for (int j = 0; j < n; ++j) {
      const double v = f.vf[n - 1] - f.vf[j] - ur * (gr - f.x[j]);
      if (v > q_best) {
        q_best = v;
        q_idx = static_cast<std::size_t>(j);
      }
    }
    {
      const double a = f.x[q_idx > 0 ? q_idx - 1 : 0];
      const double b = f.x[std::min<std::size_t>(q_idx + 1, n - 1)];
      auto fn = [&](double x) {
        return -(f.vf[n - 1] - solver_.value_function(x, t) - ur * (gr - x));
      };
      const double x = detail::golden_min(fn, a, b, 1e-9 * (1.0 + gr - gl));
      q_best = std::max(q_best, -fn(x));
    }

    trace.P[i] = p_best;
    trace.Q[i] = q_best;
  });
  return trace;
}

EdgeEnvelope AsymptoticsHarness::sqrt_bound_check(
    const std::vector<double>& times, double growth_max) const {
  require_increasing(times);
  const auto& d = data();
  require(d.u_left() <= d.u_right() + 1e-12,
          "sqrt_bound_check: requires u_left <= u_right");
  const double horizon = times.back();
  const int kl = left_anchor_index(horizon);
  const int kr = right_anchor_index(horizon);

  EdgeEnvelope env;
  env.times = times;
  env.left_distance.resize(times.size());
  env.right_distance.resize(times.size());
  env.left_ratio.resize(times.size());
  env.right_ratio.resize(times.size());
  const double fl = flux().fprime(d.u_left());
  const double fr = flux().fprime(d.u_right());

  parallel_for(times.size(), opts_.threads, [&](std::size_t i) {
    const double t = times[i];
    const TransitionScan scan =
        transition_scan(t, left_anchor(kl, t), right_anchor(kr, t));
    env.left_distance[i] =
        scan.found_left ? std::abs(scan.left_edge - fl * t) : 0.0;
    env.right_distance[i] =
        scan.found_right ? std::abs(scan.right_edge - fr * t) : 0.0;
    env.left_ratio[i] = env.left_distance[i] / std::sqrt(t);
    env.right_ratio[i] = env.right_distance[i] / std::sqrt(t);
  });

  auto bounded = [&](const std::vector<double>& ratio) {
    double running = 0.0;
    for (std::size_t i = 0; i < ratio.size(); ++i) {
      if (i >= ratio.size() / 2 && running > 0.0 &&
          ratio[i] > growth_max * running)
        return false;
      running = std::max(running, ratio[i]);
    }
    return true;
  };
  env.bounded = bounded(env.left_ratio) && bounded(env.right_ratio);
  return env;
}

// ---------------------------------------------------------------------------
// Decay studies

DecayReport AsymptoticsHarness::decay_study(
    StudyTarget target, const std::vector<double>& times) const {
  require_increasing(times);
  require(times.size() >= 5, "decay_study: need at least five time samples");
  const auto& d = data();

  if (target == StudyTarget::shock)
    return shock_study(times).combined;

  DecayReport report;
  report.times = times;
  report.errors.resize(times.size());

  if (target == StudyTarget::periodic) {
    const double p = d.profile_left().period();
    const int n =
        std::max(129, static_cast<int>(opts_.samples_per_period) + 1);
    parallel_for(times.size(), opts_.threads, [&](std::size_t i) {
      const SolutionField f =
          solver_.sample_field({0.0, p}, times[i], n);
      double e = 0.0;
      for (int j = 0; j < n; ++j) {
        e = std::max(e, std::abs(f.u_minus[j] - d.u_left()));
        e = std::max(e, std::abs(f.u_plus[j] - d.u_left()));
      }
      report.errors[i] = e;
    });
  } else {
    require(d.u_left() <= d.u_right() + 1e-12,
            "decay_study: rarefaction/constant targets require "
            "u_left <= u_right");
    const RiemannSolution ref(d.u_left(), d.u_right(), flux());
    const Interval r = d.total_range();
    const double w = supremum_window();
    const double density = opts_.samples_per_period / min_period();
    parallel_for(times.size(), opts_.threads, [&](std::size_t i) {
      const double t = times[i];
      const Interval window{flux().fprime(r.lo) * t - w,
                            flux().fprime(r.hi) * t + w};
      const int n = field_samples(window.length(), density);
      const SolutionField f = solver_.sample_field(window, t, n);
      double e = 0.0;
      for (int j = 0; j < n; ++j) {
        const double target_v = target == StudyTarget::constant
                                    ? d.u_left()
                                    : ref.evaluate(f.x[j], t);
        e = std::max(e, std::abs(f.u_minus[j] - target_v));
        e = std::max(e, std::abs(f.u_plus[j] - target_v));
      }
      report.errors[i] = e;
    });
  }
  report.fit = fit_loglog(report.times, report.errors);
  return report;
}

double AsymptoticsHarness::max_gluing_deviation(double t) const {
  const int kl = left_anchor_index(t);
  const int kr = right_anchor_index(t);
  const double gl = left_anchor(kl, t);
  const double gr = right_anchor(kr, t);
  const TransitionScan scan = transition_scan(t, gl, gr);
  // Exclusion zone around the detected transition, padded by one scan cell.
  const double pad = 1.0 / opts_.transition_per_unit;
  const double zone_lo = scan.found_left ? scan.left_edge - pad : gr;
  const double zone_hi = scan.found_right ? scan.right_edge + pad : gl;

  const int n = field_samples(
      gr - gl, opts_.samples_per_period / min_period());
  const SolutionField u = solver_.sample_field({gl, gr}, t, n);
  const SolutionField ul = left_ref_.sample_field({gl, gr}, t, n);
  const SolutionField ur = right_ref_.sample_field({gl, gr}, t, n);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = u.x[j];
    if (x < zone_lo) {
      worst = std::max(worst, std::abs(u.u_minus[j] - ul.u_minus[j]));
      worst = std::max(worst, std::abs(u.u_plus[j] - ul.u_plus[j]));
    } else if (x > zone_hi) {
      worst = std::max(worst, std::abs(u.u_minus[j] - ur.u_minus[j]));
      worst = std::max(worst, std::abs(u.u_plus[j] - ur.u_plus[j]));
    }
  }
  return worst;
}

}  // namespace clasym
