#pragma once

#include <limits>
#include <vector>

#include "clasym/common.hpp"
#include "clasym/flux.hpp"
#include "clasym/profiles.hpp"

namespace clasym {

enum class BoundaryMode {
  /// Wrap the window periodically.
  periodic,
  /// Pad ghost cells with exact cell averages of the initial background;
  /// valid as long as the cone of influence of the interior stays clear of
  /// the window edges.
  background,
};

/// First-order finite-volume state on a uniform grid of cell averages.
struct FvState {
  std::vector<double> u;
  double dx = 0.0;
  Interval window{};
  double t = 0.0;
  double cfl = 0.9;

  double total_mass() const;
  /// Center coordinate of cell i.
  double cell_center(std::size_t i) const {
    return window.lo + (double(i) + 0.5) * dx;
  }
};

/// Exact Riemann flux for a convex flux function: min of f over [ul, ur]
/// for ul <= ur (with the sonic interior minimum), max of the endpoint
/// values otherwise.
double godunov_flux(const FluxModel& flux, double ul, double ur);

/// Cell averages of the initial datum, exact via its primitive.
FvState make_fv_state(const CompositeInitialData& data, Interval window,
                      int cells, double cfl = 0.9);

/// One conservative update; dt = cfl * dx / max|f'| capped at dt_max.
/// Returns the dt actually taken.
double step(FvState& state, const FluxModel& flux,
            const CompositeInitialData& data, BoundaryMode boundary,
            double dt_max = std::numeric_limits<double>::infinity());

/// Advance to t_final exactly (the last step is shortened to land on it).
void run_until(FvState& state, const FluxModel& flux,
               const CompositeInitialData& data, BoundaryMode boundary,
               double t_final);

/// Window that keeps boundary effects away from [read.lo, read.hi] up to
/// time horizon: the read region inflated by max|f'|*horizon plus a margin,
/// snapped outward onto the grid of spacing dx so read edges align with
/// cell edges.
Interval sized_window(const Interval& read, const CompositeInitialData& data,
                      const FluxModel& flux, double horizon, double dx,
                      double margin = 2.0);

}  // namespace clasym
