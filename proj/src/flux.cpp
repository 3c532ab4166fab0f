#include "clasym/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace clasym {

namespace {

constexpr int kInverseMaxIter = 100;
constexpr double kInverseTol = 1e-12;

// Newton iteration for f'(u) = s with a bisection bracket on [lo, hi].
// f' is strictly increasing, so the bracket never loses the root.
double invert_fprime(const FluxModel::Fn& fprime, double s, double lo,
                     double hi) {
  double flo = fprime(lo) - s;
  double fhi = fprime(hi) - s;
  if (flo > 0.0 || fhi < 0.0)
    throw std::domain_error("fprime_inv: speed outside the working range");
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < kInverseMaxIter; ++it) {
    const double g = fprime(u) - s;
    if (g > 0.0)
      hi = u;
    else
      lo = u;
    // Central-difference slope; falls back to bisection when degenerate.
    const double h = 1e-7 * (1.0 + std::abs(u));
    const double dg = (fprime(u + h) - fprime(u - h)) / (2.0 * h);
    double next = (dg > 0.0) ? u - g / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) < kInverseTol * (1.0 + std::abs(u))) return next;
    u = next;
  }
  return u;
}

}  // namespace

FluxModel::FluxModel(std::string name, Fn f, Fn fprime, Fn fprime_inv,
                     Fn legendre, Interval working_range)
    : name_(std::move(name)),
      f_(std::move(f)),
      fprime_(std::move(fprime)),
      fprime_inv_(std::move(fprime_inv)),
      legendre_(std::move(legendre)),
      range_(working_range) {
  finalize();
}

FluxModel::FluxModel(std::string name, Fn f, Fn fprime, Interval working_range)
    : name_(std::move(name)),
      f_(std::move(f)),
      fprime_(std::move(fprime)),
      range_(working_range) {
  finalize();
}

void FluxModel::finalize() {
  require(range_.length() > 0.0, "FluxModel: empty working range");
  speed_range_ = {fprime_(range_.lo), fprime_(range_.hi)};

  // Sampled strict monotonicity of f' and the f'' floor.
  const int n = 512;
  const double h = range_.length() / n;
  double floor = std::numeric_limits<double>::infinity();
  double prev = fprime_(range_.lo);
  for (int i = 1; i <= n; ++i) {
    const double u = range_.lo + i * h;
    const double s = fprime_(u);
    if (!(s > prev))
      throw std::invalid_argument("FluxModel '" + name_ +
                                  "': f' is not strictly increasing");
    floor = std::min(floor, (s - prev) / h);
    prev = s;
  }
  convexity_floor_ = floor;
}

double FluxModel::fprime_inv(double s) const {
  const double slack = 1e-9 * (1.0 + std::abs(s));
  if (!speed_range_.contains(s, slack))
    throw std::domain_error("fprime_inv: speed " + std::to_string(s) +
                            " outside [" + std::to_string(speed_range_.lo) +
                            ", " + std::to_string(speed_range_.hi) + "]");
  const double sc = speed_range_.clamp(s);
  if (fprime_inv_) return fprime_inv_(sc);
  return invert_fprime(fprime_, sc, range_.lo, range_.hi);
}

double FluxModel::legendre(double s) const {
  if (legendre_) {
    const double slack = 1e-9 * (1.0 + std::abs(s));
    if (!speed_range_.contains(s, slack))
      throw std::domain_error("legendre: speed outside the admissible range");
    return legendre_(speed_range_.clamp(s));
  }
  const double u = fprime_inv(s);
  return s * u - f_(u);
}

FluxModel FluxModel::with_range(Interval range) const {
  FluxModel copy = *this;
  copy.range_ = range;
  copy.finalize();
  return copy;
}

void FluxModel::require_state(double u) const {
  if (!range_.contains(u, 1e-12 * (1.0 + std::abs(u))))
    throw std::domain_error("state " + std::to_string(u) +
                            " outside the working range of flux '" + name_ +
                            "'");
}

double sigma(const FluxModel& flux, double u, double v) {
  flux.require_state(u);
  flux.require_state(v);
  const double scale = std::max({1.0, std::abs(u), std::abs(v)});
  if (std::abs(u - v) < 1e-9 * scale) return flux.fprime(0.5 * (u + v));
  return (flux.f(u) - flux.f(v)) / (u - v);
}

double legendre_transform(const FluxModel& flux, double s) {
  return flux.legendre(s);
}

FluxModel burgers_flux(Interval range) {
  return FluxModel(
      "burgers", [](double u) { return 0.5 * u * u; },
      [](double u) { return u; }, [](double s) { return s; },
      [](double s) { return 0.5 * s * s; }, range);
}

FluxModel quartic_flux(Interval range) {
  return FluxModel(
      "quartic", [](double u) { return 0.25 * u * u * u * u; },
      [](double u) { return u * u * u; }, [](double s) { return std::cbrt(s); },
      [](double s) {
        const double u = std::cbrt(s);
        return s * u - 0.25 * u * u * u * u;
      },
      range);
}

FluxModel cosh_flux(Interval range) {
  return FluxModel(
      "cosh", [](double u) { return std::cosh(u); },
      [](double u) { return std::sinh(u); },
      [](double s) { return std::asinh(s); },
      [](double s) { return s * std::asinh(s) - std::sqrt(1.0 + s * s); },
      range);
}

std::vector<FluxModel> builtin_fluxes() {
  return {burgers_flux(), quartic_flux(), cosh_flux()};
}

FluxModel flux_by_name(const std::string& name, Interval range) {
  if (name == "burgers") return burgers_flux(range);
  if (name == "quartic") return quartic_flux(range);
  if (name == "cosh") return cosh_flux(range);
  throw std::invalid_argument("unknown flux '" + name +
                              "' (expected burgers, quartic or cosh)");
}

}  // namespace clasym
