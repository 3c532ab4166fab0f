#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "clasym/flux.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace clasym;

TEST_CASE("sigma matches the Rankine-Hugoniot quotient and its limits") {
  const FluxModel burgers = burgers_flux();
  CHECK(sigma(burgers, 1.0, -1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(sigma(burgers, 0.4, 1.2) == doctest::Approx(0.8));
  // degenerate interval collapses to f'
  for (double u : {-2.0, 0.0, 0.37, 3.0})
    CHECK(sigma(burgers, u, u) == doctest::Approx(burgers.fprime(u)));

  const FluxModel quartic = quartic_flux();
  CHECK(sigma(quartic, 1.0, 0.0) == doctest::Approx(0.25).epsilon(1e-13));
  // theta-integral oracle: sigma(u,v) = int_0^1 f'(u + th (v-u)) dth
  auto theta_integral = [&](const FluxModel& fl, double u, double v) {
    return oracle::simpson(
        [&](double th) { return fl.fprime(u + th * (v - u)); }, 0.0, 1.0);
  };
  CHECK(sigma(quartic, 1.0, 0.0) ==
        doctest::Approx(theta_integral(quartic, 1.0, 0.0)).epsilon(1e-10));
  const FluxModel ch = cosh_flux();
  CHECK(sigma(ch, -0.7, 1.9) ==
        doctest::Approx(theta_integral(ch, -0.7, 1.9)).epsilon(1e-10));
}

TEST_CASE("sigma rejects out-of-range states") {
  const FluxModel burgers = burgers_flux({-2.0, 2.0});
  CHECK_THROWS_AS(sigma(burgers, 3.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(sigma(burgers, 0.0, -2.5), std::domain_error);
}

TEST_CASE("sigma is a monotone average of characteristic speeds") {
  std::mt19937 rng(20240811);
  for (const FluxModel& flux : builtin_fluxes()) {
    const Interval r = flux.working_range();
    std::uniform_real_distribution<double> dist(r.lo, r.hi);
    for (int i = 0; i < 1000; ++i) {
      const double u = dist(rng);
      const double v = dist(rng);
      const double s = sigma(flux, u, v);
      const double lo = std::min(flux.fprime(u), flux.fprime(v));
      const double hi = std::max(flux.fprime(u), flux.fprime(v));
      CHECK(s >= lo - 1e-12 * (1.0 + std::abs(lo)));
      CHECK(s <= hi + 1e-12 * (1.0 + std::abs(hi)));
    }
    // u >= s >= v implies sigma(u, v) <= sigma(u, s)
    for (int i = 0; i < 300; ++i) {
      double a = dist(rng), b = dist(rng), c = dist(rng);
      double u = std::max({a, b, c});
      double v = std::min({a, b, c});
      double m = a + b + c - u - v;
      CHECK(sigma(flux, u, v) <=
            sigma(flux, u, m) + 1e-12 * (1.0 + std::abs(sigma(flux, u, m))));
    }
  }
}

TEST_CASE("legendre transform closed forms and Fenchel-Young") {
  const FluxModel burgers = burgers_flux();
  CHECK(legendre_transform(burgers, 2.0) == doctest::Approx(2.0));

  const FluxModel quartic = quartic_flux();
  CHECK(legendre_transform(quartic, 1.0) == doctest::Approx(0.75));
  // grid-maximization oracle for f*(1) = sup_u [u - f(u)]
  auto [ustar, val] = oracle::grid_max(
      [&](double u) { return 1.0 * u - quartic.f(u); }, -3.0, 3.0);
  CHECK(val == doctest::Approx(0.75).epsilon(1e-8));
  CHECK(ustar == doctest::Approx(1.0).epsilon(1e-4));

  for (const FluxModel& flux : builtin_fluxes()) {
    // f*(f'(0)) = -f(0): the sup is attained at u = 0
    CHECK(flux.legendre(flux.fprime(0.0)) ==
          doctest::Approx(-flux.f(0.0)).epsilon(1e-12));
    // Fenchel-Young equality at s = f'(u)
    for (double u : {-1.5, -0.3, 0.0, 0.7, 2.0}) {
      const double s = flux.fprime(u);
      const double resid = flux.f(u) + flux.legendre(s) - s * u;
      CHECK(std::abs(resid) < 1e-10);
    }
    // Fenchel-Young inequality for mismatched pairs
    std::mt19937 rng(7);
    const Interval r = flux.working_range();
    std::uniform_real_distribution<double> dist(r.lo, r.hi);
    for (int i = 0; i < 200; ++i) {
      const double u = dist(rng);
      const double s = flux.fprime(dist(rng));
      CHECK(flux.f(u) + flux.legendre(s) >= s * u - 1e-10);
    }
  }
  CHECK_THROWS_AS(legendre_transform(burgers_flux({-1.0, 1.0}), 5.0),
                  std::domain_error);
}

TEST_CASE("builtin inverse derivatives") {
  CHECK(burgers_flux().fprime_inv(0.5) == doctest::Approx(0.5));
  CHECK(cosh_flux().fprime_inv(1.0) == doctest::Approx(std::asinh(1.0)));
  CHECK(quartic_flux().fprime_inv(1.0) == doctest::Approx(1.0));
  CHECK(quartic_flux().fprime_inv(-8.0) == doctest::Approx(-2.0));
  for (const FluxModel& flux : builtin_fluxes()) {
    for (double u = -1.9; u < 2.0; u += 0.37)
      CHECK(flux.fprime_inv(flux.fprime(u)) ==
            doctest::Approx(u).epsilon(1e-10));
  }
}

TEST_CASE("numeric inverse fallback agrees with analytic inverses") {
  // f = u^2/2 + u^4/4 has no closed-form inverse here; Newton handles it.
  const FluxModel mixed(
      "mixed", [](double u) { return 0.5 * u * u + 0.25 * u * u * u * u; },
      [](double u) { return u + u * u * u; }, Interval{-3.0, 3.0});
  for (double u = -2.9; u < 3.0; u += 0.23) {
    CHECK(mixed.fprime_inv(mixed.fprime(u)) ==
          doctest::Approx(u).epsilon(1e-10));
    const double s = mixed.fprime(u);
    const double resid = mixed.f(u) + mixed.legendre(s) - s * u;
    CHECK(std::abs(resid) < 1e-9);
  }
  CHECK(mixed.convexity_floor() > 0.9);
}

TEST_CASE("strict convexity is enforced") {
  CHECK_THROWS_AS(FluxModel("bad", [](double u) { return u * u * u; },
                            [](double u) { return 3.0 * u * u; },
                            Interval{-1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("flux_by_name") {
  CHECK(flux_by_name("burgers").name() == "burgers");
  CHECK(flux_by_name("quartic").name() == "quartic");
  CHECK(flux_by_name("cosh").name() == "cosh");
  CHECK_THROWS_AS(flux_by_name("cubic"), std::invalid_argument);
}
