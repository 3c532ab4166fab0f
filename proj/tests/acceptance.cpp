// Acceptance suite: one quantitative criterion per entry, each printing a
// single [PASS]/[FAIL] line. Run with no arguments for all criteria or with
// a list of criterion numbers.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "clasym/asymptotics.hpp"
#include "clasym/experiments.hpp"
#include "clasym/godunov.hpp"

using namespace clasym;

namespace {

constexpr double kPi = std::numbers::pi;

CompositeInitialData shock_data() {
  return CompositeInitialData(1.0, -1.0, PeriodicProfile::cosine(0.3, 1.0),
                              PeriodicProfile::sine(0.2, 1.5),
                              MiddleDeviation::zero(2.0));
}

CompositeInitialData rarefaction_data() {
  return CompositeInitialData(-1.0, 1.0, PeriodicProfile::cosine(0.3, 1.0),
                              PeriodicProfile::sine(0.2, 1.5),
                              MiddleDeviation::zero(2.0));
}

CompositeInitialData constant_data() {
  return CompositeInitialData(0.0, 0.0, PeriodicProfile::cosine(0.3, 1.0),
                              PeriodicProfile::sine(0.2, 1.5),
                              MiddleDeviation::zero(2.0));
}

CompositeInitialData periodic_sine_data() {
  return CompositeInitialData::periodic(0.0,
                                        PeriodicProfile::sine(1.0, 2.0 * kPi));
}

std::vector<double> geometric(double first, double ratio, int count) {
  std::vector<double> t;
  double v = first;
  for (int i = 0; i < count; ++i, v *= ratio) t.push_back(v);
  return t;
}

const ShockStudy& shared_shock_study() {
  static const ShockStudy study = [] {
    AsymptoticsHarness h(burgers_flux(), shock_data());
    return h.shock_study(geometric(8.0, 2.0, 5));
  }();
  return study;
}

bool monotone_after_first(const std::vector<double>& e) {
  for (std::size_t i = 2; i < e.size(); ++i)
    if (e[i] > e[i - 1] * (1.0 + 1e-9)) return false;
  return true;
}

// --- criteria -------------------------------------------------------------

bool criterion_shock_shift(std::ostream& out) {
  const ShockStudy& study = shared_shock_study();
  const double target = 0.3 / (4.0 * kPi);
  const bool shift_ok = std::abs(study.trace.shift - target) < 1e-12;
  const bool monotone = monotone_after_first(study.residual.errors);
  const bool slope_ok = study.residual.fit.status == FitStatus::ok &&
                        study.residual.fit.slope <= -0.85;
  const double final_resid = std::abs(study.residual.errors.back());
  const bool final_ok = final_resid < 5e-3;
  out << "X_inf=" << study.trace.shift << " (target " << target << ")"
      << ", residual slope=" << study.residual.fit.slope << " (<= -0.85)"
      << ", final residual=" << final_resid << " (< 5e-3)"
      << ", monotone after first=" << (monotone ? "yes" : "no");
  return shift_ok && monotone && slope_ok && final_ok;
}

bool criterion_shock_sup_decay(std::ostream& out) {
  const ShockStudy& study = shared_shock_study();
  const bool left_ok = study.left_sup.fit.status == FitStatus::ok &&
                       study.left_sup.fit.slope <= -0.85;
  const bool right_ok = study.right_sup.fit.status == FitStatus::ok &&
                        study.right_sup.fit.slope <= -0.85;
  out << "left slope=" << study.left_sup.fit.slope
      << ", right slope=" << study.right_sup.fit.slope << " (<= -0.85)";
  return left_ok && right_ok;
}

bool criterion_periodic_decay(std::ostream& out) {
  AsymptoticsHarness h(burgers_flux(), periodic_sine_data());
  const auto times = geometric(10.0, 2.0, 5);
  const DecayReport r = h.decay_study(StudyTarget::periodic, times);
  bool amplitude_ok = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double rel = std::abs(r.errors[i] - kPi / times[i]) /
                       (kPi / times[i]);
    worst = std::max(worst, rel);
    amplitude_ok = amplitude_ok && rel <= 0.2;
  }
  const bool slope_ok = r.fit.status == FitStatus::ok &&
                        r.fit.slope <= -0.85 && r.fit.slope >= -1.15;
  out << "slope=" << r.fit.slope << " (in [-1.15, -0.85])"
      << ", worst relative amplitude error=" << worst << " (<= 0.2)";
  return amplitude_ok && slope_ok;
}

bool criterion_rarefaction(std::ostream& out) {
  AsymptoticsHarness h(burgers_flux(), rarefaction_data());
  const auto times = geometric(8.0, 2.0, 5);
  const DecayReport r = h.decay_study(StudyTarget::rarefaction, times);
  const bool slope_ok =
      r.fit.status == FitStatus::ok && r.fit.slope <= -0.45;
  const double c = r.errors.front() * std::sqrt(times.front());
  bool dominated = true;
  for (std::size_t i = 0; i < times.size(); ++i)
    dominated =
        dominated && r.errors[i] <= c / std::sqrt(times[i]) * (1.0 + 1e-6);
  out << "slope=" << r.fit.slope << " (<= -0.45)"
      << ", C=" << c << ", dominated by C/sqrt(t)="
      << (dominated ? "yes" : "no");
  return slope_ok && dominated;
}

bool criterion_constant(std::ostream& out) {
  AsymptoticsHarness h(burgers_flux(), constant_data());
  const DecayReport r =
      h.decay_study(StudyTarget::constant, geometric(8.0, 2.0, 5));
  const bool slope_ok =
      r.fit.status == FitStatus::ok && r.fit.slope <= -0.45;
  out << "slope=" << r.fit.slope << " (<= -0.45)";
  return slope_ok;
}

bool criterion_invariants(std::ostream& out) {
  const CompositeInitialData data(-1.0, 1.0, PeriodicProfile::cosine(0.3, 1.0),
                                  PeriodicProfile::sine(0.2, 1.5),
                                  MiddleDeviation::bump(2.0, -0.2));
  AsymptoticsHarness h(burgers_flux(), data);
  const InvariantTrace tr = h.track_invariants({1.0, 5.0, 25.0, 125.0});
  const Interval range = data.total_range();
  const double sup = std::max(std::abs(range.lo), std::abs(range.hi));
  const double dx = 1.0 / h.options().invariant_per_unit;
  const double tol = 5.0 * dx * sup;
  double drift = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    drift = std::max({drift, std::abs(tr.P[i] - tr.P0),
                      std::abs(tr.Q[i] - tr.Q0)});
  out << "P0=" << tr.P0 << ", Q0=" << tr.Q0 << ", max drift=" << drift
      << " (<= " << tol << ")";
  return drift <= tol;
}

bool criterion_sqrt_envelope(std::ostream& out) {
  AsymptoticsHarness h(burgers_flux(), constant_data());
  const EdgeEnvelope env = h.sqrt_bound_check(geometric(4.0, 2.0, 7), 1.1);
  double worst = 0.0;
  for (std::size_t i = 0; i < env.times.size(); ++i)
    worst = std::max({worst, env.left_ratio[i], env.right_ratio[i]});
  out << "bounded=" << (env.bounded ? "yes" : "no")
      << ", max |edge - f'(ubar) t| / sqrt(t)=" << worst;
  return env.bounded;
}

bool criterion_gluing(std::ostream& out) {
  AsymptoticsHarness h(burgers_flux(), shock_data());
  const double dev = h.max_gluing_deviation(32.0);
  out << "max deviation outside the transition zone=" << dev << " (< 1e-6)";
  return dev < 1e-6;
}

bool criterion_oracle(std::ostream& out) {
  const CompositeInitialData data(1.0, -1.0, PeriodicProfile::sine(0.3, 1.0),
                                  PeriodicProfile::sine(0.3, 1.0),
                                  MiddleDeviation::zero(1.0));
  const FluxModel flux = burgers_flux();
  const VariationalSolver solver(flux, data);
  const double t = 5.0;
  const Interval read{-2.0, 2.0};
  const double range = data.total_range().length();

  std::vector<double> gaps;
  bool gap_ok = true;
  for (double dx : {std::pow(2.0, -8), std::pow(2.0, -9)}) {
    const Interval window = sized_window(read, data, flux, t, dx);
    const int cells = int(std::llround(window.length() / dx));
    FvState fv = make_fv_state(data, window, cells, 0.9);
    run_until(fv, flux, data, BoundaryMode::background, t);
    const long long i0 = std::llround((read.lo - window.lo) / dx);
    const long long i1 = std::llround((read.hi - window.lo) / dx);
    const SolutionField field =
        solver.sample_field(read, t, int(i1 - i0) + 1);
    const auto avg = field.cell_averages();
    double l1 = 0.0;
    for (std::size_t j = 0; j < avg.size(); ++j)
      l1 += std::abs(avg[j] - fv.u[std::size_t(i0) + j]) * dx;
    gaps.push_back(l1);
    gap_ok = gap_ok && l1 <= 3.0 * dx * range;
  }
  const double ratio = gaps[0] / gaps[1];
  const bool ratio_ok = ratio >= 1.5 && ratio <= 2.5;
  out << "L1 gaps=" << gaps[0] << ", " << gaps[1]
      << " (<= 3 dx range), ratio=" << ratio << " (in [1.5, 2.5])";
  return gap_ok && ratio_ok;
}

bool criterion_entropy(std::ostream& out) {
  AsymptoticsHarness h(burgers_flux(), periodic_sine_data());
  double worst = 0.0;
  for (double t : geometric(10.0, 2.0, 5)) {
    const SolutionField f =
        h.solver().sample_field({0.0, 2.0 * kPi}, t, 1025);
    worst = std::max(worst, measure_entropy_constant(f));
  }
  out << "max of t (u(x+a) - u(x)) / a over samples=" << worst
      << " (<= 1.05)";
  return worst <= 1.05;
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool(std::ostream&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "shock shift", criterion_shock_shift},
      {2, "shock-side sup-norm decay", criterion_shock_sup_decay},
      {3, "periodic decay", criterion_periodic_decay},
      {4, "rarefaction stability", criterion_rarefaction},
      {5, "constant case", criterion_constant},
      {6, "invariant conservation", criterion_invariants},
      {7, "sqrt(t) envelope", criterion_sqrt_envelope},
      {8, "gluing", criterion_gluing},
      {9, "oracle equivalence", criterion_oracle},
      {10, "entropy condition", criterion_entropy},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : criteria()) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
      continue;
    std::ostringstream detail;
    detail.precision(6);
    bool pass = false;
    try {
      pass = c.run(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                detail.str().c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures;
}
