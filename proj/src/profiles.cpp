#include "clasym/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <utility>

#include "scan_minimize.hpp"

namespace clasym {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

// ---------------------------------------------------------------------------
// PeriodicProfile

PeriodicProfile::PeriodicProfile(Form form, double amplitude, double period,
                                 double phase)
    : form_(form), amplitude_(amplitude), period_(period), phase_(phase) {
  require(period > 0.0, "PeriodicProfile: period must be positive");
}

PeriodicProfile PeriodicProfile::zero(double period) {
  PeriodicProfile w(Form::zero, 0.0, period, 0.0);
  w.compute_argmin();
  return w;
}

PeriodicProfile PeriodicProfile::sine(double amplitude, double period,
                                      double phase) {
  PeriodicProfile w(Form::sine, amplitude, period, phase);
  w.compute_argmin();
  return w;
}

PeriodicProfile PeriodicProfile::cosine(double amplitude, double period,
                                        double phase) {
  PeriodicProfile w(Form::cosine, amplitude, period, phase);
  w.compute_argmin();
  return w;
}

PeriodicProfile PeriodicProfile::sawtooth(double amplitude, double period,
                                          double phase) {
  PeriodicProfile w(Form::sawtooth, amplitude, period, phase);
  w.compute_argmin();
  return w;
}

PeriodicProfile PeriodicProfile::from_samples(std::vector<double> samples,
                                              double period) {
  require(!samples.empty(), "PeriodicProfile: empty sample set");
  PeriodicProfile w(Form::samples, 0.0, period, 0.0);
  w.samples_ = std::move(samples);
  const std::size_t n = w.samples_.size();
  w.grid_h_ = period / static_cast<double>(n);
  // Exact cumulative integrals of the wrapping piecewise-linear
  // interpolant; cum_[n] is the full-period integral.
  w.cum_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = w.samples_[i];
    const double b = w.samples_[(i + 1) % n];
    w.cum_[i + 1] = w.cum_[i] + 0.5 * (a + b) * w.grid_h_;
  }
  w.compute_argmin();
  return w;
}

bool PeriodicProfile::is_zero() const {
  if (form_ == Form::zero) return true;
  if (form_ == Form::samples)
    return std::all_of(samples_.begin(), samples_.end(),
                       [](double v) { return v == 0.0; });
  return amplitude_ == 0.0;
}

double PeriodicProfile::sup_norm() const {
  if (form_ == Form::samples) {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
  }
  return std::abs(amplitude_);
}

Interval PeriodicProfile::value_range() const {
  if (form_ == Form::samples) {
    auto [lo, hi] = std::minmax_element(samples_.begin(), samples_.end());
    return {*lo, *hi};
  }
  const double a = std::abs(amplitude_);
  return {-a, a};
}

double PeriodicProfile::value(double x) const {
  switch (form_) {
    case Form::zero:
      return 0.0;
    case Form::sine:
      return amplitude_ * std::sin(kTwoPi * (x - phase_) / period_);
    case Form::cosine:
      return amplitude_ * std::cos(kTwoPi * (x - phase_) / period_);
    case Form::sawtooth: {
      const double r = wrap_period(x - phase_, period_);
      return amplitude_ * (2.0 * r / period_ - 1.0);
    }
    case Form::samples: {
      const double r = wrap_period(x, period_);
      const std::size_t n = samples_.size();
      std::size_t i = static_cast<std::size_t>(r / grid_h_);
      if (i >= n) i = n - 1;
      const double d = r - static_cast<double>(i) * grid_h_;
      const double a = samples_[i];
      const double b = samples_[(i + 1) % n];
      return a + (b - a) * d / grid_h_;
    }
  }
  return 0.0;
}

double PeriodicProfile::primitive(double x) const {
  switch (form_) {
    case Form::zero:
      return 0.0;
    case Form::sine:
      // int_0^x A sin(2 pi (y - phi)/p) dy
      return amplitude_ * period_ / kTwoPi *
             (std::cos(kTwoPi * phase_ / period_) -
              std::cos(kTwoPi * (x - phase_) / period_));
    case Form::cosine:
      return amplitude_ * period_ / kTwoPi *
             (std::sin(kTwoPi * (x - phase_) / period_) +
              std::sin(kTwoPi * phase_ / period_));
    case Form::sawtooth: {
      auto base = [&](double r) {
        return amplitude_ * (r * r / period_ - r);
      };
      return base(wrap_period(x - phase_, period_)) -
             base(wrap_period(-phase_, period_));
    }
    case Form::samples: {
      const double r = wrap_period(x, period_);
      const std::size_t n = samples_.size();
      std::size_t i = static_cast<std::size_t>(r / grid_h_);
      if (i >= n) i = n - 1;
      const double d = r - static_cast<double>(i) * grid_h_;
      const double a = samples_[i];
      const double b = samples_[(i + 1) % n];
      return cum_[i] + a * d + 0.5 * (b - a) * d * d / grid_h_;
    }
  }
  return 0.0;
}

void PeriodicProfile::compute_argmin() {
  if (form_ == Form::zero) {
    argmin_ = 0.0;
    primitive_min_ = 0.0;
    return;
  }
  if (form_ == Form::samples) {
    // The primitive is piecewise quadratic: candidates are the nodes plus
    // interior stationary points where the profile crosses zero upward.
    const std::size_t n = samples_.size();
    double best_x = 0.0;
    double best_v = std::numeric_limits<double>::infinity();
    auto consider = [&](double x, double v) {
      if (v < best_v - 1e-15 * (1.0 + std::abs(v))) {
        best_v = v;
        best_x = x;
      }
    };
    for (std::size_t i = 0; i < n; ++i) {
      consider(static_cast<double>(i) * grid_h_, cum_[i]);
      const double a = samples_[i];
      const double b = samples_[(i + 1) % n];
      if (a < 0.0 && b > 0.0) {
        const double d = -a * grid_h_ / (b - a);
        const double v = cum_[i] + a * d + 0.5 * (b - a) * d * d / grid_h_;
        consider(static_cast<double>(i) * grid_h_ + d, v);
      }
    }
    argmin_ = best_x;
    primitive_min_ = best_v;
    return;
  }
  // Analytic forms: locate upward zero crossings of w by bisection; the
  // primitive attains its minima exactly there.
  const int cells = 4096;
  const double h = period_ / cells;
  double best_x = 0.0;
  double best_v = primitive(0.0);
  auto consider = [&](double x, double v) {
    if (v < best_v - 1e-15 * (1.0 + std::abs(v))) {
      best_v = v;
      best_x = x;
    }
  };
  for (int i = 0; i < cells; ++i) {
    const double a = i * h;
    consider(a, primitive(a));
    double wl = value(a), wr = value(a + h);
    if (wl < 0.0 && wr >= 0.0) {
      double lo = a, hi = a + h;
      for (int it = 0; it < 80 && hi - lo > 1e-15 * period_; ++it) {
        const double mid = 0.5 * (lo + hi);
        (value(mid) < 0.0 ? lo : hi) = mid;
      }
      const double x = 0.5 * (lo + hi);
      consider(x, primitive(x));
    }
  }
  argmin_ = wrap_period(best_x, period_);
  primitive_min_ = best_v;
}

NormalizedProfile normalize_zero_average(std::vector<double> raw_samples,
                                         double period) {
  require(!raw_samples.empty(), "normalize_zero_average: empty sample set");
  require(period > 0.0, "normalize_zero_average: period must be positive");
  // The cyclic trapezoid average of the interpolant is the sample mean.
  const double n = static_cast<double>(raw_samples.size());
  double mean = std::accumulate(raw_samples.begin(), raw_samples.end(), 0.0) / n;
  for (double& v : raw_samples) v -= mean;
  // One polish pass to push the residual average below 1e-12.
  const double residual =
      std::accumulate(raw_samples.begin(), raw_samples.end(), 0.0) / n;
  if (residual != 0.0)
    for (double& v : raw_samples) v -= residual;
  return {PeriodicProfile::from_samples(std::move(raw_samples), period),
          mean + residual};
}

ArgminResult argmin_primitive(const PeriodicProfile& profile) {
  return {profile.argmin_in_period(), profile.primitive_min()};
}

// ---------------------------------------------------------------------------
// MiddleDeviation

MiddleDeviation MiddleDeviation::zero(double halfwidth) {
  require(halfwidth > 0.0, "MiddleDeviation: halfwidth must be positive");
  return MiddleDeviation(halfwidth);
}

MiddleDeviation MiddleDeviation::bump(double halfwidth, double mass,
                                      double center, double width) {
  require(halfwidth > 0.0, "MiddleDeviation: halfwidth must be positive");
  require(width > 0.0, "MiddleDeviation: bump width must be positive");
  require(center - width >= -halfwidth && center + width <= halfwidth,
          "MiddleDeviation: bump support exceeds [-N, N]");
  MiddleDeviation m(halfwidth);
  m.bump_mass_ = mass;
  m.bump_center_ = center;
  m.bump_width_ = width;
  return m;
}

MiddleDeviation MiddleDeviation::from_samples(double halfwidth,
                                              std::vector<double> samples) {
  require(halfwidth > 0.0, "MiddleDeviation: halfwidth must be positive");
  require(samples.size() >= 2, "MiddleDeviation: need at least two samples");
  MiddleDeviation m(halfwidth);
  m.samples_ = std::move(samples);
  const std::size_t n = m.samples_.size();
  m.grid_h_ = 2.0 * halfwidth / static_cast<double>(n - 1);
  m.cum_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    m.cum_[i + 1] =
        m.cum_[i] + 0.5 * (m.samples_[i] + m.samples_[i + 1]) * m.grid_h_;
  return m;
}

bool MiddleDeviation::is_zero() const {
  if (bump_width_ > 0.0) return bump_mass_ == 0.0;
  if (samples_.empty()) return true;
  return std::all_of(samples_.begin(), samples_.end(),
                     [](double v) { return v == 0.0; });
}

double MiddleDeviation::value(double x) const {
  if (x < -halfwidth_ || x > halfwidth_) return 0.0;
  if (bump_width_ > 0.0) {
    const double r = (x - bump_center_) / bump_width_;
    if (std::abs(r) > 1.0) return 0.0;
    const double peak = 0.75 * bump_mass_ / bump_width_;
    return peak * (1.0 - r * r);
  }
  if (samples_.empty()) return 0.0;
  const double d = x + halfwidth_;
  std::size_t i = static_cast<std::size_t>(d / grid_h_);
  if (i + 1 >= samples_.size()) i = samples_.size() - 2;
  const double r = d - static_cast<double>(i) * grid_h_;
  return samples_[i] + (samples_[i + 1] - samples_[i]) * r / grid_h_;
}

double MiddleDeviation::primitive(double x) const {
  // int_0^x of the deviation; the helper C gives int_{-N}^{xi}.
  auto C = [&](double xi) -> double {
    if (bump_width_ > 0.0) {
      const double lo = bump_center_ - bump_width_;
      const double hi = bump_center_ + bump_width_;
      const double c = std::clamp(xi, lo, hi);
      const double r = (c - bump_center_) / bump_width_;
      const double peak = 0.75 * bump_mass_ / bump_width_;
      // int_{-W}^{r W} peak (1 - (y/W)^2) dy
      return peak * bump_width_ * (r - r * r * r / 3.0 + 2.0 / 3.0);
    }
    if (samples_.empty()) return 0.0;
    const double d = std::clamp(xi, -halfwidth_, halfwidth_) + halfwidth_;
    std::size_t i = static_cast<std::size_t>(d / grid_h_);
    if (i + 1 >= samples_.size()) i = samples_.size() - 2;
    const double r = d - static_cast<double>(i) * grid_h_;
    return cum_[i] + samples_[i] * r +
           0.5 * (samples_[i + 1] - samples_[i]) * r * r / grid_h_;
  };
  return C(x) - C(0.0);
}

double MiddleDeviation::mass() const {
  if (bump_width_ > 0.0) return bump_mass_;
  if (samples_.empty()) return 0.0;
  return cum_.back();
}

Interval MiddleDeviation::value_range() const {
  if (bump_width_ > 0.0) {
    const double peak = 0.75 * bump_mass_ / bump_width_;
    return {std::min(0.0, peak), std::max(0.0, peak)};
  }
  Interval r{0.0, 0.0};
  for (double v : samples_) {
    r.lo = std::min(r.lo, v);
    r.hi = std::max(r.hi, v);
  }
  return r;
}

// ---------------------------------------------------------------------------
// CompositeInitialData

CompositeInitialData::CompositeInitialData(double u_left, double u_right,
                                           PeriodicProfile left,
                                           PeriodicProfile right,
                                           MiddleDeviation middle)
    : u_left_(u_left),
      u_right_(u_right),
      left_(std::move(left)),
      right_(std::move(right)),
      middle_(std::move(middle)) {
  const Interval rl = left_.value_range();
  const Interval rr = right_.value_range();
  Interval base = Interval{u_left_ + rl.lo, u_left_ + rl.hi}.hull(
      {u_right_ + rr.lo, u_right_ + rr.hi});
  const Interval mid = middle_.value_range();
  total_range_ = {base.lo + std::min(0.0, mid.lo),
                  base.hi + std::max(0.0, mid.hi)};
}

CompositeInitialData CompositeInitialData::riemann(double u_left,
                                                   double u_right) {
  return CompositeInitialData(u_left, u_right, PeriodicProfile::zero(),
                              PeriodicProfile::zero(),
                              MiddleDeviation::zero(1.0));
}

CompositeInitialData CompositeInitialData::periodic(double ubar,
                                                    PeriodicProfile w) {
  const double n = 0.5 * w.period();
  return CompositeInitialData(ubar, ubar, w, w, MiddleDeviation::zero(n));
}

double CompositeInitialData::background(double x) const {
  return x < 0.0 ? u_left_ + left_.value(x) : u_right_ + right_.value(x);
}

double CompositeInitialData::value(double x) const {
  return background(x) + middle_.value(x);
}

double CompositeInitialData::primitive(double x) const {
  const double branch = x < 0.0 ? u_left_ * x + left_.primitive(x)
                                : u_right_ * x + right_.primitive(x);
  return branch + middle_.primitive(x);
}

// ---------------------------------------------------------------------------
// Operations

double shift_X_infinity(const CompositeInitialData& data) {
  require(data.u_left() > data.u_right(),
          "shift_X_infinity: requires u_left > u_right (shock case)");
  const double m = data.middle_mass();
  return (m - data.profile_left().primitive_min() +
          data.profile_right().primitive_min()) /
         (data.u_left() - data.u_right());
}

bool is_divide(const CompositeInitialData& data, double ubar, double x0) {
  const double pl = data.profile_left().period();
  const double pr = data.profile_right().period();
  const double tol =
      1e-9 * (1.0 + std::max(data.profile_left().sup_norm() * pl,
                             data.profile_right().sup_norm() * pr));
  const double state_eps =
      1e-12 * (1.0 + std::abs(data.u_left()) + std::abs(data.u_right()));
  // Per-period drift of the running integral in the two tails; a negative
  // drift sends it to -infinity.
  if (data.u_left() - ubar > state_eps) return false;   // left tail drops
  if (data.u_right() - ubar < -state_eps) return false;  // right tail drops
  const double n = data.halfwidth();
  const double lo = std::min(x0, -n) - pl;
  const double hi = std::max(x0, n) + pr;
  auto g = [&](double x) {
    return data.primitive(x) - data.primitive(x0) - ubar * (x - x0);
  };
  const int cells = std::max(2048, static_cast<int>(512.0 * (hi - lo)));
  const auto result =
      detail::scan_minimize(g, lo, hi, cells, 1e-12 * (1.0 + hi - lo));
  return result.value >= -tol;
}

int smallest_valid_K(const CompositeInitialData& data) {
  const double n = data.halfwidth();
  const double zl = data.profile_left().argmin_in_period();
  const double zr = data.profile_right().argmin_in_period();
  const int kl =
      static_cast<int>(std::ceil((zl + n) / data.profile_left().period()));
  const int kr =
      static_cast<int>(std::ceil((n - zr) / data.profile_right().period()));
  return std::max({kl, kr, 0});
}

InitialInvariants initial_invariants(const CompositeInitialData& data, int K) {
  require(data.u_left() <=
              data.u_right() + 1e-12 * (1.0 + std::abs(data.u_right())),
          "initial_invariants: requires u_left <= u_right");
  const double n = data.halfwidth();
  const double al = data.profile_left().argmin_in_period() -
                    K * data.profile_left().period();
  const double ar = data.profile_right().argmin_in_period() +
                    K * data.profile_right().period();
  require(al <= -n && ar >= n,
          "initial_invariants: K too small for the middle region");

  auto run_left = [&](double x) {
    return data.primitive(x) - data.primitive(al) - data.u_left() * (x - al);
  };
  auto run_right_neg = [&](double x) {
    return -(data.primitive(ar) - data.primitive(x) -
             data.u_right() * (ar - x));
  };
  const int cells = std::max(4096, static_cast<int>(512.0 * (ar - al)));
  const double xtol = 1e-12 * (1.0 + ar - al);
  const double p0 = detail::scan_minimize(run_left, al, ar, cells, xtol).value;
  const double q0 =
      -detail::scan_minimize(run_right_neg, al, ar, cells, xtol).value;
  return {std::min(p0, 0.0), std::max(q0, 0.0)};
}

double gamma_curve(Side side, int k, double t, const CompositeInitialData& data,
                   const FluxModel& flux) {
  require(k >= 0, "gamma_curve: k must be nonnegative");
  if (side == Side::left) {
    return data.profile_left().argmin_in_period() -
           k * data.profile_left().period() + flux.fprime(data.u_left()) * t;
  }
  return data.profile_right().argmin_in_period() +
         k * data.profile_right().period() + flux.fprime(data.u_right()) * t;
}

}  // namespace clasym
