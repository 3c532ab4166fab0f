#include "clasym/laxoleinik.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "scan_minimize.hpp"

namespace clasym {

// ---------------------------------------------------------------------------
// SolutionField

std::vector<double> SolutionField::cell_averages() const {
  std::vector<double> avg;
  if (x.size() < 2) return avg;
  avg.reserve(x.size() - 1);
  const double h = dx();
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    avg.push_back((vf[i + 1] - vf[i]) / h);
  return avg;
}

std::vector<double> SolutionField::jump_positions() const {
  std::vector<double> events;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (u_minus[i] - u_plus[i] > jump_threshold) events.push_back(x[i]);
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (u_plus[i] - u_minus[i + 1] > jump_threshold)
      events.push_back(0.5 * (x[i] + x[i + 1]));
  std::sort(events.begin(), events.end());
  std::vector<double> clusters;
  const double merge = 2.0 * dx();
  std::size_t i = 0;
  while (i < events.size()) {
    std::size_t j = i;
    while (j + 1 < events.size() && events[j + 1] - events[j] <= merge) ++j;
    double sum = 0.0;
    for (std::size_t k = i; k <= j; ++k) sum += events[k];
    clusters.push_back(sum / double(j - i + 1));
    i = j + 1;
  }
  return clusters;
}

// ---------------------------------------------------------------------------
// VariationalSolver

VariationalSolver::VariationalSolver(FluxModel flux, CompositeInitialData data,
                                     SolverOptions opts)
    : flux_(flux.with_range(data.total_range().inflated(1.0))),
      data_(std::move(data)),
      opts_(opts) {
  // total_range() is a conservative hull, so the backward cone built from
  // it already contains every minimizer; inflate only against fp rounding.
  const Interval r = data_.total_range();
  state_range_ = r.inflated(1e-12 * (1.0 + std::abs(r.lo) + std::abs(r.hi)));
  jump_threshold_ =
      opts_.jump_threshold_factor * std::max(r.length(), 1e-10);
}

double VariationalSolver::functional(double x, double t, double y) const {
  return data_.primitive(y) + t * flux_.legendre((x - y) / t);
}

Interval VariationalSolver::candidate_interval(double x, double t) const {
  return {x - t * flux_.fprime(state_range_.hi),
          x - t * flux_.fprime(state_range_.lo)};
}

double VariationalSolver::initial_value(double x, Side side) const {
  const bool left_branch = side == Side::left ? (x <= 0.0) : (x < 0.0);
  const double bg = left_branch
                        ? data_.u_left() + data_.profile_left().value(x)
                        : data_.u_right() + data_.profile_right().value(x);
  return bg + data_.middle().value(x);
}

MinimizeResult VariationalSolver::minimize_impl(double x, double t,
                                                double y_lo,
                                                double y_hi) const {
  auto g = [&](double y) { return functional(x, t, y); };
  // G'(y) = u0(y) - (f')^{-1}((x - y)/t); bisecting its sign change locates
  // minimizers to machine precision where value comparisons alone stall at
  // sqrt(eps).
  const Interval speeds{flux_.fprime(state_range_.lo),
                        flux_.fprime(state_range_.hi)};
  auto gprime = [&](double y) {
    return data_.value(y) - flux_.fprime_inv(speeds.clamp((x - y) / t));
  };
  auto refine_basin = [&](double a, double b) {
    const double ga = gprime(a);
    if (ga >= 0.0) return a;
    if (gprime(b) <= 0.0) return b;
    const double xtol = 1e-14 * (1.0 + std::abs(a) + std::abs(b));
    while (b - a > xtol) {
      const double mid = 0.5 * (a + b);
      (gprime(mid) < 0.0 ? a : b) = mid;
    }
    return 0.5 * (a + b);
  };

  if (!(y_hi - y_lo > opts_.refine_tol)) {
    const double y = refine_basin(y_lo, y_hi);
    return {y, y, g(y)};
  }
  const int n = std::max(
      opts_.min_scan_points,
      static_cast<int>(std::ceil(opts_.scan_per_unit * (y_hi - y_lo))));
  const double h = (y_hi - y_lo) / n;
  std::vector<double> gv(static_cast<std::size_t>(n) + 1);
  double gmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    gv[i] = g(y_lo + i * h);
    gmin = std::min(gmin, gv[i]);
  }
  // The true global basin may sit above the coarse minimum by the local
  // sampling error; widen the refinement set accordingly.
  double dd = 0.0;
  for (int i = 1; i < n; ++i)
    dd = std::max(dd, std::abs(gv[i - 1] - 2.0 * gv[i] + gv[i + 1]));
  const double tau = std::max(1e-8 * (1.0 + std::abs(gmin)), 2.0 * dd);

  struct Candidate {
    double y;
    double value;
  };
  std::vector<Candidate> refined;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const bool left_ok = (i == 0) || gv[i] <= gv[i - 1];
    const bool right_ok = (i == n) || gv[i] <= gv[i + 1];
    if (!(left_ok && right_ok) || gv[i] > gmin + tau) continue;
    const double a = y_lo + (i > 0 ? i - 1 : 0) * h;
    const double b = y_lo + (i < n ? i + 1 : n) * h;
    double y = refine_basin(a, b);
    double v = g(y);
    if (gv[i] < v) {  // keep the better of sample and refinement
      y = y_lo + i * h;
      v = gv[i];
    }
    refined.push_back({y, v});
    best = std::min(best, v);
  }
  MinimizeResult out{std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity(), best};
  const double tie = opts_.tie_tol * (1.0 + std::abs(best));
  for (const auto& c : refined) {
    if (c.value > best + tie) continue;
    out.y_left = std::min(out.y_left, c.y);
    out.y_right = std::max(out.y_right, c.y);
  }
  return out;
}

MinimizeResult VariationalSolver::minimize(double x, double t) const {
  require(t > 0.0, "VariationalSolver::minimize: t must be positive");
  const Interval c = candidate_interval(x, t);
  return minimize_impl(x, t, c.lo, c.hi);
}

double VariationalSolver::evaluate(double x, double t, Side side) const {
  if (t < 0.0)
    throw std::invalid_argument("VariationalSolver::evaluate: t < 0");
  if (t == 0.0) return initial_value(x, side);
  const MinimizeResult r = minimize(x, t);
  const double y = side == Side::left ? r.y_left : r.y_right;
  return flux_.fprime_inv(flux_.speed_range().clamp((x - y) / t));
}

double VariationalSolver::value_function(double x, double t) const {
  if (t < 0.0)
    throw std::invalid_argument("VariationalSolver::value_function: t < 0");
  if (t == 0.0) return data_.primitive(x);
  return minimize(x, t).value;
}

SolutionField VariationalSolver::sample_field(Interval window, double t,
                                              int samples) const {
  require(window.length() > 0.0, "sample_field: degenerate window");
  require(samples >= 2, "sample_field: need at least two samples");
  if (t < 0.0) throw std::invalid_argument("sample_field: t < 0");

  SolutionField field;
  field.t = t;
  field.window = window;
  field.jump_threshold = jump_threshold_;
  const int n = samples;
  field.x.resize(n);
  field.u_minus.resize(n);
  field.u_plus.resize(n);
  field.vf.resize(n);
  const double h = window.length() / (n - 1);
  for (int i = 0; i < n; ++i)
    field.x[i] = i + 1 == n ? window.hi : window.lo + i * h;

  if (t == 0.0) {
    for (int i = 0; i < n; ++i) {
      field.u_minus[i] = initial_value(field.x[i], Side::left);
      field.u_plus[i] = initial_value(field.x[i], Side::right);
      field.vf[i] = data_.primitive(field.x[i]);
    }
    return field;
  }

  // Backward minimizers are monotone in x, so a divide-and-conquer sweep
  // can bracket every search by its neighbours' answers.
  std::vector<MinimizeResult> res(n);
  const double pad = 4.0 * opts_.refine_tol;
  struct Job {
    int lo, hi;
    double y_lo, y_hi;
  };
  std::vector<Job> stack;
  const Interval whole = candidate_interval(window.lo, t)
                             .hull(candidate_interval(window.hi, t));
  stack.push_back({0, n - 1, whole.lo, whole.hi});
  while (!stack.empty()) {
    const Job job = stack.back();
    stack.pop_back();
    if (job.lo > job.hi) continue;
    const int mid = job.lo + (job.hi - job.lo) / 2;
    const Interval cone = candidate_interval(field.x[mid], t);
    double lo = std::max(job.y_lo - pad, cone.lo);
    double hi = std::min(job.y_hi + pad, cone.hi);
    if (!(lo <= hi)) lo = hi = 0.5 * (job.y_lo + job.y_hi);
    res[mid] = minimize_impl(field.x[mid], t, lo, hi);
    stack.push_back({job.lo, mid - 1, job.y_lo, res[mid].y_left});
    stack.push_back({mid + 1, job.hi, res[mid].y_right, job.y_hi});
  }

  const Interval speeds = flux_.speed_range();
  for (int i = 0; i < n; ++i) {
    const double sl = speeds.clamp((field.x[i] - res[i].y_left) / t);
    const double sr = speeds.clamp((field.x[i] - res[i].y_right) / t);
    field.u_minus[i] = flux_.fprime_inv(sl);
    field.u_plus[i] = flux_.fprime_inv(sr);
    field.vf[i] = res[i].value;
  }
  return field;
}

// ---------------------------------------------------------------------------
// RiemannSolution

RiemannSolution::RiemannSolution(double u_left, double u_right, FluxModel flux)
    : u_left_(u_left),
      u_right_(u_right),
      flux_(flux.with_range(Interval{std::min(u_left, u_right),
                                     std::max(u_left, u_right)}
                                .inflated(1.0))) {
  if (u_left_ > u_right_) {
    kind_ = RiemannKind::shock;
    speed_ = sigma(flux_, u_left_, u_right_);
  } else if (u_left_ < u_right_) {
    kind_ = RiemannKind::rarefaction;
  } else {
    kind_ = RiemannKind::constant;
  }
}

double RiemannSolution::evaluate(double x, double t) const {
  switch (kind_) {
    case RiemannKind::constant:
      return u_left_;
    case RiemannKind::shock:
      return x < speed_ * t ? u_left_ : u_right_;
    case RiemannKind::rarefaction: {
      if (t <= 0.0) return x < 0.0 ? u_left_ : u_right_;
      const double sl = flux_.fprime(u_left_);
      const double sr = flux_.fprime(u_right_);
      if (x <= sl * t) return u_left_;
      if (x >= sr * t) return u_right_;
      return flux_.fprime_inv(x / t);
    }
  }
  return u_left_;
}

// ---------------------------------------------------------------------------
// Periodic helpers

VariationalSolver make_periodic_solver(const FluxModel& flux, double ubar,
                                       const PeriodicProfile& w,
                                       SolverOptions opts) {
  return VariationalSolver(flux, CompositeInitialData::periodic(ubar, w),
                           opts);
}

double periodic_reference(const PeriodicProfile& w, double ubar,
                          const FluxModel& flux, double x, double t) {
  return make_periodic_solver(flux, ubar, w).evaluate(x, t);
}

double measure_entropy_constant(const SolutionField& field) {
  require(field.size() >= 2 && field.t > 0.0,
          "measure_entropy_constant: need a sampled field at t > 0");
  // Chord slopes over a uniform grid are averages of adjacent slopes, so
  // adjacent pairs realize the maximum.
  const double h = field.dx();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < field.size(); ++i)
    worst = std::max(worst, (field.u_plus[i + 1] - field.u_plus[i]) / h);
  return field.t * worst;
}

}  // namespace clasym
