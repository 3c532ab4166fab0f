#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "clasym/godunov.hpp"
#include "clasym/laxoleinik.hpp"
#include "doctest.h"

using namespace clasym;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("godunov flux specializations") {
  const auto burgers = burgers_flux();
  CHECK(godunov_flux(burgers, -1.0, 1.0) == doctest::Approx(0.0));  // sonic
  CHECK(godunov_flux(burgers, 1.0, -1.0) == doctest::Approx(0.5));
  CHECK(godunov_flux(burgers, 0.2, 0.8) == doctest::Approx(0.02));
  const auto quartic = quartic_flux();
  CHECK(godunov_flux(quartic, 0.5, 1.0) == doctest::Approx(0.015625));
  CHECK(godunov_flux(quartic, 1.0, 0.5) ==
        doctest::Approx(std::max(quartic.f(1.0), quartic.f(0.5))));
}

TEST_CASE("constant states are fixed points") {
  const auto data = CompositeInitialData::riemann(0.7, 0.7);
  FvState s = make_fv_state(data, {-2.0, 2.0}, 128);
  const auto flux = burgers_flux();
  for (int i = 0; i < 50; ++i)
    step(s, flux, data, BoundaryMode::background);
  for (double v : s.u) CHECK(v == doctest::Approx(0.7).epsilon(1e-13));
}

TEST_CASE("mass conservation over many periodic steps") {
  // single-cell perturbation on a periodic window
  const auto data = CompositeInitialData::riemann(0.0, 0.0);
  FvState s = make_fv_state(data, {0.0, 1.0}, 64);
  s.u[10] = 1.0;
  const double mass0 = s.total_mass();
  const auto flux = burgers_flux();
  for (int i = 0; i < 1000; ++i)
    step(s, flux, data, BoundaryMode::periodic);
  CHECK(s.total_mass() == doctest::Approx(mass0).epsilon(1e-12));
}

TEST_CASE("discrete maximum principle") {
  const auto w = PeriodicProfile::sine(1.0, 2.0 * kPi);
  const auto data = CompositeInitialData::periodic(0.2, w);
  FvState s = make_fv_state(data, {0.0, 2.0 * kPi}, 512);
  const auto flux = burgers_flux();
  run_until(s, flux, data, BoundaryMode::periodic, 5.0);
  for (double v : s.u) {
    CHECK(v >= -0.8 - 1e-12);
    CHECK(v <= 1.2 + 1e-12);
  }
  CHECK(s.t == doctest::Approx(5.0));
}

TEST_CASE("sawtooth amplitude matches the periodic decay law") {
  const auto w = PeriodicProfile::sine(1.0, 2.0 * kPi);
  const auto data = CompositeInitialData::periodic(0.0, w);
  const auto flux = burgers_flux();
  FvState s = make_fv_state(data, {0.0, 2.0 * kPi}, 4096);
  run_until(s, flux, data, BoundaryMode::periodic, 10.0);
  double sup = 0.0;
  for (double v : s.u) sup = std::max(sup, std::abs(v));
  CHECK(sup == doctest::Approx(kPi / 10.0).epsilon(0.10));
}

TEST_CASE("discrete entropy constant tracks the variational measurement") {
  const auto w = PeriodicProfile::sine(1.0, 2.0 * kPi);
  const auto data = CompositeInitialData::periodic(0.0, w);
  const auto flux = burgers_flux();
  const double t = 10.0;
  const int cells = 512;

  FvState s = make_fv_state(data, {0.0, 2.0 * kPi}, cells);
  run_until(s, flux, data, BoundaryMode::periodic, t);
  double slope = -1e300;
  for (int i = 0; i + 1 < cells; ++i)
    slope = std::max(slope, (s.u[i + 1] - s.u[i]) / s.dx);
  const double e_godunov = t * slope;

  const VariationalSolver solver(flux, data);
  const double e_var = measure_entropy_constant(
      solver.sample_field({0.0, 2.0 * kPi}, t, cells + 1));
  CHECK(std::abs(e_godunov - e_var) <= 0.1 * e_var);
}

TEST_CASE("first-order convergence against the variational field") {
  const CompositeInitialData data(1.0, -1.0,
                                  PeriodicProfile::sine(0.3, 1.0),
                                  PeriodicProfile::sine(0.3, 1.0),
                                  MiddleDeviation::zero(1.0));
  const auto flux = burgers_flux();
  const VariationalSolver solver(flux, data);
  const double t = 2.0;
  const Interval read{-2.0, 2.0};

  auto gap = [&](double dx) {
    const Interval window = sized_window(read, data, flux, t, dx);
    const int cells = int(std::llround(window.length() / dx));
    FvState fv = make_fv_state(data, window, cells);
    run_until(fv, flux, data, BoundaryMode::background, t);
    const long long i0 = std::llround((read.lo - window.lo) / dx);
    const long long i1 = std::llround((read.hi - window.lo) / dx);
    const SolutionField f = solver.sample_field(read, t, int(i1 - i0) + 1);
    const auto avg = f.cell_averages();
    double l1 = 0.0;
    for (std::size_t j = 0; j < avg.size(); ++j)
      l1 += std::abs(avg[j] - fv.u[std::size_t(i0) + j]) * dx;
    return l1;
  };
  const double coarse = gap(1.0 / 128.0);
  const double fine = gap(1.0 / 256.0);
  CHECK(coarse / fine > 1.5);
  CHECK(coarse / fine < 2.5);
}

TEST_CASE("shock position drift stays within two cells") {
  const auto data = CompositeInitialData::riemann(1.0, -1.0);
  const auto flux = burgers_flux();
  const double t = 10.0;
  const double dx = 4.0 / 512.0;
  const Interval window = sized_window({-2.0, 2.0}, data, flux, t, dx);
  const int cells = int(std::llround(window.length() / dx));
  FvState fv = make_fv_state(data, window, cells);
  run_until(fv, flux, data, BoundaryMode::background, t);
  // FV shock cell: steepest descent
  double pos = 0.0, drop = 0.0;
  for (int i = 0; i + 1 < cells; ++i) {
    const double d = fv.u[i] - fv.u[i + 1];
    if (d > drop) {
      drop = d;
      pos = window.lo + (i + 1) * dx;
    }
  }
  const VariationalSolver solver(flux, data);
  const auto jumps =
      solver.sample_field({-2.0, 2.0}, t, 1025).jump_positions();
  REQUIRE(jumps.size() == 1);
  CHECK(std::abs(pos - jumps[0]) <= 2.0 * dx);
}

TEST_CASE("run_until lands exactly and rejects backwards targets") {
  const auto data = CompositeInitialData::riemann(0.1, 0.1);
  FvState s = make_fv_state(data, {0.0, 1.0}, 16);
  const auto flux = burgers_flux();
  run_until(s, flux, data, BoundaryMode::periodic, 0.7);
  CHECK(s.t == doctest::Approx(0.7).epsilon(1e-15));
  CHECK_THROWS_AS(run_until(s, flux, data, BoundaryMode::periodic, 0.2),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_fv_state(data, {0.0, 1.0}, 0), std::invalid_argument);
}
