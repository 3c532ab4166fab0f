#include "clasym/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "clasym/csv.hpp"
#include "clasym/godunov.hpp"
#include "json.hpp"

namespace clasym {

using nlohmann::json;

namespace {

json fit_to_json(const LogLogFit& fit) {
  json j;
  j["status"] = fit.status == FitStatus::ok
                    ? "ok"
                    : (fit.status == FitStatus::exact ? "exact"
                                                      : "insufficient");
  if (fit.status == FitStatus::ok) {
    j["slope"] = fit.slope;
    j["constant"] = fit.constant;
    j["r_squared"] = fit.r_squared;
    j["points_used"] = fit.points_used;
  }
  return j;
}

class Artifacts {
 public:
  Artifacts(const std::filesystem::path& dir, RunResult& result)
      : dir_(dir), result_(result) {
    std::filesystem::create_directories(dir);
  }

  void decay_csv(const std::string& name, const std::vector<double>& t,
                 const std::vector<double>& v) {
    CsvWriter csv(path(name), {"t", "value"});
    for (std::size_t i = 0; i < t.size(); ++i) csv.row({t[i], v[i]});
  }

  void trace_csv(const std::string& name, const std::vector<double>& t,
                 const std::vector<double>& v, const std::vector<double>& pred,
                 const std::vector<double>& resid) {
    CsvWriter csv(path(name), {"t", "value", "predicted", "residual"});
    for (std::size_t i = 0; i < t.size(); ++i)
      csv.row({t[i], v[i], pred[i], resid[i]});
  }

  std::string path(const std::string& name) {
    result_.files.push_back((dir_ / name).string());
    return result_.files.back();
  }

 private:
  std::filesystem::path dir_;
  RunResult& result_;
};

void assert_leq(RunResult& result, const std::string& name, double measured,
                double threshold) {
  Assertion a{name, "<=", threshold, measured, measured <= threshold};
  result.pass = result.pass && a.pass;
  result.assertions.push_back(a);
}

void assert_geq(RunResult& result, const std::string& name, double measured,
                double threshold) {
  Assertion a{name, ">=", threshold, measured, measured >= threshold};
  result.pass = result.pass && a.pass;
  result.assertions.push_back(a);
}

void assert_bool(RunResult& result, const std::string& name, bool ok) {
  Assertion a{name, "==", 1.0, ok ? 1.0 : 0.0, ok};
  result.pass = result.pass && a.pass;
  result.assertions.push_back(a);
}

bool monotone_after_first(const std::vector<double>& e) {
  for (std::size_t i = 2; i < e.size(); ++i)
    if (e[i] > e[i - 1] * (1.0 + 1e-9)) return false;
  return true;
}

json assertions_json(const RunResult& result) {
  json arr = json::array();
  for (const auto& a : result.assertions) {
    json j;
    j["name"] = a.name;
    j["comparison"] = a.comparison;
    j["threshold"] = a.threshold;
    j["measured"] = a.measured;
    j["pass"] = a.pass;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace

OracleComparison compare_oracles(const ExperimentConfig& cfg) {
  require(cfg.oracle.has_value(), "compare_oracles: missing oracle settings");
  const OracleSettings& o = *cfg.oracle;
  const FluxModel flux =
      flux_by_name(cfg.flux_name, cfg.data.total_range().inflated(1.0));
  const VariationalSolver solver(flux, cfg.data, cfg.harness.solver);

  OracleComparison cmp;
  cmp.times = cfg.schedule.times();
  cmp.dx_list = o.dx_list;
  const double horizon = cmp.times.back();

  for (double dx : o.dx_list) {
    const double cells_in_read = o.read_window.length() / dx;
    require(std::abs(cells_in_read - std::llround(cells_in_read)) < 1e-9,
            "oracle.read_window length must be a multiple of dx");
    Interval window =
        sized_window(o.read_window, cfg.data, flux, horizon, dx, o.margin);
    if (o.window) {
      if (o.window->lo > window.lo || o.window->hi < window.hi)
        throw std::runtime_error(
            "oracle window [" + format_number(o.window->lo) + ", " +
            format_number(o.window->hi) +
            "] cannot keep boundary effects out of the read region up to t=" +
            format_number(horizon) + "; need at least [" +
            format_number(window.lo) + ", " + format_number(window.hi) + "]");
      window = *o.window;
    }
    const int cells = static_cast<int>(std::llround(window.length() / dx));
    FvState fv = make_fv_state(cfg.data, window, cells, o.cfl);

    // Read-region cell indices (edges align by construction).
    const long long i_lo =
        std::llround((o.read_window.lo - window.lo) / dx);
    const long long i_hi = std::llround((o.read_window.hi - window.lo) / dx);

    std::vector<double> l1s, linfs;
    for (double t : cmp.times) {
      run_until(fv, flux, cfg.data, BoundaryMode::background, t);
      const int edges = static_cast<int>(i_hi - i_lo) + 1;
      const SolutionField field = solver.sample_field(
          {window.lo + double(i_lo) * dx, window.lo + double(i_hi) * dx}, t,
          edges);
      const std::vector<double> avg = field.cell_averages();
      double l1 = 0.0, linf = 0.0;
      for (std::size_t j = 0; j < avg.size(); ++j) {
        const double diff =
            std::abs(avg[j] - fv.u[static_cast<std::size_t>(i_lo) + j]);
        l1 += diff * dx;
        linf = std::max(linf, diff);
      }
      l1s.push_back(l1);
      linfs.push_back(linf);
    }
    cmp.l1.push_back(std::move(l1s));
    cmp.linf.push_back(std::move(linfs));
  }
  for (std::size_t k = 0; k + 1 < cmp.l1.size(); ++k) {
    std::vector<double> ratios;
    for (std::size_t i = 0; i < cmp.times.size(); ++i)
      ratios.push_back(cmp.l1[k + 1][i] > 0.0
                           ? cmp.l1[k][i] / cmp.l1[k + 1][i]
                           : 0.0);
    cmp.ratio.push_back(std::move(ratios));
  }
  return cmp;
}

RunResult run_experiment(const ExperimentConfig& cfg,
                         const std::filesystem::path& outdir, int threads) {
  cfg.validate();
  RunResult result;
  json summary;
  summary["study"] = to_string(cfg.kind);
  summary["config"] = json::parse(cfg.raw_text.empty() ? "{}" : cfg.raw_text);

  HarnessOptions hopts = cfg.harness;
  hopts.threads = threads;
  const std::vector<double> times = cfg.schedule.times();

  // Effective settings, so the summary is self-contained.
  {
    json eff;
    eff["flux"] = cfg.flux_name;
    eff["u_left"] = cfg.data.u_left();
    eff["u_right"] = cfg.data.u_right();
    eff["folded_left_average"] = cfg.folded_left;
    eff["folded_right_average"] = cfg.folded_right;
    eff["halfwidth"] = cfg.data.halfwidth();
    eff["middle_mass"] = cfg.data.middle_mass();
    eff["times"] = times;
    eff["samples_per_period"] = hopts.samples_per_period;
    eff["window_periods"] = hopts.window_periods;
    eff["transition_per_unit"] = hopts.transition_per_unit;
    eff["invariant_per_unit"] = hopts.invariant_per_unit;
    eff["match_tol_factor"] = hopts.match_tol_factor;
    eff["margin_periods"] = hopts.margin_periods;
    eff["threads"] = threads;
    eff["scan_per_unit"] = hopts.solver.scan_per_unit;
    eff["refine_tol"] = hopts.solver.refine_tol;
    summary["effective"] = eff;
  }

  Artifacts artifacts(outdir, result);
  const Thresholds& th = cfg.thresholds;
  json results;

  if (cfg.kind == StudyKind::oracle_compare) {
    const OracleComparison cmp = compare_oracles(cfg);
    const double range = cfg.data.total_range().length();
    for (std::size_t k = 0; k < cmp.dx_list.size(); ++k) {
      artifacts.decay_csv("oracle_l1_" + std::to_string(k) + ".csv", cmp.times,
                          cmp.l1[k]);
      artifacts.decay_csv("oracle_linf_" + std::to_string(k) + ".csv",
                          cmp.times, cmp.linf[k]);
      if (th.oracle_gap_factor) {
        for (std::size_t i = 0; i < cmp.times.size(); ++i)
          assert_leq(result,
                     "l1_gap[dx=" + format_number(cmp.dx_list[k]) +
                         ",t=" + format_number(cmp.times[i]) + "]",
                     cmp.l1[k][i], *th.oracle_gap_factor * cmp.dx_list[k] * range);
      }
    }
    for (std::size_t k = 0; k < cmp.ratio.size(); ++k) {
      artifacts.decay_csv("oracle_ratio_" + std::to_string(k) + ".csv",
                          cmp.times, cmp.ratio[k]);
      for (std::size_t i = 0; i < cmp.times.size(); ++i) {
        if (th.oracle_ratio_min)
          assert_geq(result, "gap_ratio[" + std::to_string(k) + "]",
                     cmp.ratio[k][i], *th.oracle_ratio_min);
        if (th.oracle_ratio_max)
          assert_leq(result, "gap_ratio[" + std::to_string(k) + "]",
                     cmp.ratio[k][i], *th.oracle_ratio_max);
      }
    }
    json jl1 = json::array(), jr = json::array();
    for (auto& v : cmp.l1) jl1.push_back(v);
    for (auto& v : cmp.ratio) jr.push_back(v);
    results["l1"] = jl1;
    results["ratio"] = jr;
  } else {
    const FluxModel flux = flux_by_name(cfg.flux_name);
    AsymptoticsHarness harness(flux, cfg.data, hopts);

    if (cfg.kind == StudyKind::shock_shift) {
      const ShockStudy study = harness.shock_study(times);
      artifacts.trace_csv("shock_trace.csv", study.trace.times,
                          study.trace.positions, study.trace.predicted,
                          study.trace.residuals);
      artifacts.decay_csv("decay_residual.csv", study.residual.times,
                          study.residual.errors);
      artifacts.decay_csv("decay_left.csv", study.left_sup.times,
                          study.left_sup.errors);
      artifacts.decay_csv("decay_right.csv", study.right_sup.times,
                          study.right_sup.errors);
      artifacts.decay_csv("decay_combined.csv", study.combined.times,
                          study.combined.errors);
      results["X_infinity"] = study.trace.shift;
      results["speed"] = study.trace.speed;
      results["residual_fit"] = fit_to_json(study.residual.fit);
      results["left_fit"] = fit_to_json(study.left_sup.fit);
      results["right_fit"] = fit_to_json(study.right_sup.fit);
      results["final_residual"] = std::abs(study.residual.errors.back());

      if (th.slope_max && study.residual.fit.status == FitStatus::ok)
        assert_leq(result, "residual_slope", study.residual.fit.slope,
                   *th.slope_max);
      if (th.final_residual_max)
        assert_leq(result, "final_residual",
                   std::abs(study.residual.errors.back()),
                   *th.final_residual_max);
      if (th.require_monotone_residual)
        assert_bool(result, "residual_monotone_after_first",
                    monotone_after_first(study.residual.errors));
      if (th.side_slope_max) {
        if (study.left_sup.fit.status == FitStatus::ok)
          assert_leq(result, "left_sup_slope", study.left_sup.fit.slope,
                     *th.side_slope_max);
        if (study.right_sup.fit.status == FitStatus::ok)
          assert_leq(result, "right_sup_slope", study.right_sup.fit.slope,
                     *th.side_slope_max);
      }
      if (th.gluing_tol) {
        const double dev = harness.max_gluing_deviation(*th.gluing_time);
        results["gluing_deviation"] = dev;
        assert_leq(result, "gluing_deviation", dev, *th.gluing_tol);
      }
    } else {
      const StudyTarget target = cfg.kind == StudyKind::periodic_decay
                                     ? StudyTarget::periodic
                                     : (cfg.kind == StudyKind::rarefaction
                                            ? StudyTarget::rarefaction
                                            : StudyTarget::constant);
      const DecayReport report = harness.decay_study(target, times);
      artifacts.decay_csv("decay.csv", report.times, report.errors);
      results["decay_fit"] = fit_to_json(report.fit);

      if (th.slope_max && report.fit.status == FitStatus::ok)
        assert_leq(result, "decay_slope", report.fit.slope, *th.slope_max);
      if (th.slope_min && report.fit.status == FitStatus::ok)
        assert_geq(result, "decay_slope", report.fit.slope, *th.slope_min);
      if (th.require_sqrt_domination) {
        const double c = report.errors.front() * std::sqrt(times.front());
        bool dominated = true;
        for (std::size_t i = 0; i < times.size(); ++i)
          dominated = dominated &&
                      report.errors[i] <=
                          c / std::sqrt(times[i]) * (1.0 + 1e-6);
        results["sqrt_domination_constant"] = c;
        assert_bool(result, "sqrt_dominated", dominated);
      }
      if (th.amplitude_coefficient) {
        bool ok = true;
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
          const double model = *th.amplitude_coefficient *
                               std::pow(times[i], *th.amplitude_exponent);
          const double rel = std::abs(report.errors[i] - model) / model;
          worst = std::max(worst, rel);
          ok = ok && rel <= *th.amplitude_rel_tol;
        }
        results["amplitude_worst_rel_error"] = worst;
        assert_leq(result, "amplitude_rel_error", worst,
                   *th.amplitude_rel_tol);
      }
      if (th.entropy_max) {
        const double tmin = th.entropy_min_time.value_or(times.front());
        const double p = cfg.data.profile_left().period();
        double worst = -std::numeric_limits<double>::infinity();
        std::vector<double> measured;
        for (double t : times) {
          if (t < tmin) {
            measured.push_back(std::nan(""));
            continue;
          }
          const int n =
              8 * static_cast<int>(hopts.samples_per_period) + 1;
          const double e = measure_entropy_constant(
              harness.solver().sample_field({0.0, p}, t, n));
          measured.push_back(e);
          worst = std::max(worst, e);
        }
        artifacts.decay_csv("entropy.csv", times, measured);
        results["entropy_constant"] = worst;
        assert_leq(result, "entropy_constant", worst, *th.entropy_max);
      }
      if (cfg.track_invariants) {
        const InvariantTrace inv = harness.track_invariants(times);
        std::vector<double> p_pred(times.size(), inv.P0);
        std::vector<double> q_pred(times.size(), inv.Q0);
        std::vector<double> p_res(times.size()), q_res(times.size());
        double drift = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
          p_res[i] = inv.P[i] - inv.P0;
          q_res[i] = inv.Q[i] - inv.Q0;
          drift = std::max({drift, std::abs(p_res[i]), std::abs(q_res[i])});
        }
        artifacts.trace_csv("invariants_P.csv", times, inv.P, p_pred, p_res);
        artifacts.trace_csv("invariants_Q.csv", times, inv.Q, q_pred, q_res);
        results["P0"] = inv.P0;
        results["Q0"] = inv.Q0;
        results["invariant_drift"] = drift;
        if (th.invariant_drift_factor) {
          const Interval r = cfg.data.total_range();
          const double sup = std::max(std::abs(r.lo), std::abs(r.hi));
          const double dx = 1.0 / hopts.invariant_per_unit;
          assert_leq(result, "invariant_drift", drift,
                     *th.invariant_drift_factor * dx * sup);
        }
      }
      if (cfg.sqrt_envelope) {
        const double growth = th.envelope_growth_max.value_or(1.1);
        const EdgeEnvelope env = harness.sqrt_bound_check(times, growth);
        artifacts.decay_csv("envelope_left.csv", times, env.left_ratio);
        artifacts.decay_csv("envelope_right.csv", times, env.right_ratio);
        results["envelope_bounded"] = env.bounded;
        if (th.envelope_growth_max)
          assert_bool(result, "envelope_bounded", env.bounded);
      }
    }
  }

  summary["results"] = results;
  summary["assertions"] = assertions_json(result);
  summary["pass"] = result.pass;
  json jfiles = json::array();
  for (const auto& f : result.files) jfiles.push_back(f);
  summary["files"] = jfiles;

  result.summary_text = summary.dump(2);
  std::ofstream out(outdir / "summary.json");
  require(out.good(), "cannot write summary.json");
  out << result.summary_text << "\n";
  result.files.push_back((outdir / "summary.json").string());
  return result;
}

}  // namespace clasym
