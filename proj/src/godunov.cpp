#include "clasym/godunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace clasym {

double FvState::total_mass() const {
  double sum = 0.0;
  for (double v : u) sum += v;
  return sum * dx;
}

double godunov_flux(const FluxModel& flux, double ul, double ur) {
  if (ul <= ur) {
    const double fl = flux.fprime(ul);
    const double fr = flux.fprime(ur);
    if (fl >= 0.0) return flux.f(ul);
    if (fr <= 0.0) return flux.f(ur);
    return flux.f(flux.fprime_inv(0.0));  // sonic point
  }
  return std::max(flux.f(ul), flux.f(ur));
}

FvState make_fv_state(const CompositeInitialData& data, Interval window,
                      int cells, double cfl) {
  require(cells >= 1, "make_fv_state: need at least one cell");
  require(window.length() > 0.0, "make_fv_state: degenerate window");
  require(cfl > 0.0 && cfl <= 1.0, "make_fv_state: cfl must be in (0, 1]");
  FvState s;
  s.window = window;
  s.dx = window.length() / cells;
  s.cfl = cfl;
  s.u.resize(cells);
  double prev = data.primitive(window.lo);
  for (int i = 0; i < cells; ++i) {
    const double edge = i + 1 == cells ? window.hi : window.lo + (i + 1) * s.dx;
    const double next = data.primitive(edge);
    s.u[i] = (next - prev) / s.dx;
    prev = next;
  }
  return s;
}

namespace {

// Ghost cell averages outside the window.
double ghost_value(const FvState& s, const CompositeInitialData& data,
                   BoundaryMode mode, long long i) {
  const long long n = static_cast<long long>(s.u.size());
  if (mode == BoundaryMode::periodic) {
    long long j = ((i % n) + n) % n;
    return s.u[static_cast<std::size_t>(j)];
  }
  const double lo = s.window.lo + double(i) * s.dx;
  return data.integral(lo, lo + s.dx) / s.dx;
}

}  // namespace

double step(FvState& state, const FluxModel& flux,
            const CompositeInitialData& data, BoundaryMode boundary,
            double dt_max) {
  require(!state.u.empty(), "step: empty state");
  const long long n = static_cast<long long>(state.u.size());

  auto value = [&](long long i) -> double {
    if (i >= 0 && i < n) return state.u[static_cast<std::size_t>(i)];
    return ghost_value(state, data, boundary, i);
  };

  // max |f'| over cells and ghosts: f' monotone, so the extremes of u
  // determine it.
  double umin = value(-1), umax = value(-1);
  for (long long i = 0; i <= n; ++i) {
    const double v = value(i);
    umin = std::min(umin, v);
    umax = std::max(umax, v);
  }
  const double speed =
      std::max(std::abs(flux.fprime(umin)), std::abs(flux.fprime(umax)));
  double dt = speed > 0.0 ? state.cfl * state.dx / speed
                          : std::min(dt_max, state.dx);
  dt = std::min(dt, dt_max);
  if (!(dt > 0.0)) return 0.0;

  std::vector<double> fluxes(static_cast<std::size_t>(n) + 1);
  for (long long i = 0; i <= n; ++i)
    fluxes[static_cast<std::size_t>(i)] =
        godunov_flux(flux, value(i - 1), value(i));

  const double lambda = dt / state.dx;
  for (long long i = 0; i < n; ++i)
    state.u[static_cast<std::size_t>(i)] -=
        lambda * (fluxes[static_cast<std::size_t>(i) + 1] -
                  fluxes[static_cast<std::size_t>(i)]);
  state.t += dt;
  return dt;
}

void run_until(FvState& state, const FluxModel& flux,
               const CompositeInitialData& data, BoundaryMode boundary,
               double t_final) {
  require(t_final >= state.t, "run_until: t_final must not precede state.t");
  while (state.t < t_final) {
    const double remaining = t_final - state.t;
    const double taken = step(state, flux, data, boundary, remaining);
    if (taken <= 0.0) break;
    if (remaining <= 1e-15 * std::max(1.0, t_final)) break;
  }
  state.t = t_final;
}

Interval sized_window(const Interval& read, const CompositeInitialData& data,
                      const FluxModel& flux, double horizon, double dx,
                      double margin) {
  const Interval r = data.total_range();
  const double speed =
      std::max(std::abs(flux.fprime(r.lo)), std::abs(flux.fprime(r.hi)));
  const double pad = speed * horizon + margin;
  const double lo = read.lo - std::ceil(pad / dx) * dx;
  const double hi = read.hi + std::ceil(pad / dx) * dx;
  return {lo, hi};
}

}  // namespace clasym
