#include "clasym/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace clasym {

using nlohmann::json;

std::string to_string(StudyKind kind) {
  switch (kind) {
    case StudyKind::shock_shift:
      return "shock-shift";
    case StudyKind::rarefaction:
      return "rarefaction";
    case StudyKind::constant:
      return "constant";
    case StudyKind::periodic_decay:
      return "periodic-decay";
    case StudyKind::oracle_compare:
      return "oracle-compare";
  }
  return "?";
}

std::vector<double> TimeSchedule::times() const {
  std::vector<double> ts;
  double t = first;
  for (int i = 0; i < count; ++i) {
    ts.push_back(t);
    t *= ratio;
  }
  return ts;
}

namespace {

StudyKind kind_from_string(const std::string& s) {
  if (s == "shock-shift") return StudyKind::shock_shift;
  if (s == "rarefaction") return StudyKind::rarefaction;
  if (s == "constant") return StudyKind::constant;
  if (s == "periodic-decay") return StudyKind::periodic_decay;
  if (s == "oracle-compare") return StudyKind::oracle_compare;
  throw std::invalid_argument("unknown study kind '" + s + "'");
}

PeriodicProfile parse_profile(const json& j, double* folded) {
  const std::string name = j.value("name", "zero");
  if (name == "zero") return PeriodicProfile::zero(j.value("period", 1.0));
  if (name == "samples") {
    const double period = j.at("period").get<double>();
    auto values = j.at("values").get<std::vector<double>>();
    NormalizedProfile norm = normalize_zero_average(std::move(values), period);
    if (folded) *folded += norm.removed_average;
    return norm.profile;
  }
  const double amplitude = j.at("amplitude").get<double>();
  const double period = j.at("period").get<double>();
  const double phase = j.value("phase", 0.0);
  if (name == "sine") return PeriodicProfile::sine(amplitude, period, phase);
  if (name == "cosine")
    return PeriodicProfile::cosine(amplitude, period, phase);
  if (name == "sawtooth")
    return PeriodicProfile::sawtooth(amplitude, period, phase);
  throw std::invalid_argument("unknown profile '" + name +
                              "' (zero, sine, cosine, sawtooth, samples)");
}

MiddleDeviation parse_middle(const json& j) {
  const double n = j.value("halfwidth", 1.0);
  if (j.contains("bump")) {
    const json& b = j.at("bump");
    return MiddleDeviation::bump(n, b.at("mass").get<double>(),
                                 b.value("center", 0.0), b.value("width", 1.0));
  }
  if (j.contains("samples"))
    return MiddleDeviation::from_samples(
        n, j.at("samples").get<std::vector<double>>());
  return MiddleDeviation::zero(n);
}

CompositeInitialData parse_initial(const json& j, double* folded_left,
                                   double* folded_right) {
  if (j.contains("periodic")) {
    const json& p = j.at("periodic");
    double state = p.at("state").get<double>();
    double folded = 0.0;
    PeriodicProfile w = parse_profile(p.at("profile"), &folded);
    state += folded;
    if (folded_left) *folded_left = folded;
    if (folded_right) *folded_right = folded;
    return CompositeInitialData::periodic(state, w);
  }
  const json& l = j.at("left");
  const json& r = j.at("right");
  double fl = 0.0, fr = 0.0;
  PeriodicProfile wl = l.contains("profile")
                           ? parse_profile(l.at("profile"), &fl)
                           : PeriodicProfile::zero();
  PeriodicProfile wr = r.contains("profile")
                           ? parse_profile(r.at("profile"), &fr)
                           : PeriodicProfile::zero();
  const double ul = l.at("state").get<double>() + fl;
  const double ur = r.at("state").get<double>() + fr;
  if (folded_left) *folded_left = fl;
  if (folded_right) *folded_right = fr;
  MiddleDeviation mid = j.contains("middle") ? parse_middle(j.at("middle"))
                                             : MiddleDeviation::zero(1.0);
  return CompositeInitialData(ul, ur, wl, wr, mid);
}

void parse_thresholds(const json& j, Thresholds& th) {
  auto opt = [&](const char* key, std::optional<double>& slot) {
    if (j.contains(key)) slot = j.at(key).get<double>();
  };
  opt("slope_max", th.slope_max);
  opt("slope_min", th.slope_min);
  opt("final_residual_max", th.final_residual_max);
  th.require_monotone_residual = j.value("require_monotone_residual", false);
  opt("side_slope_max", th.side_slope_max);
  opt("gluing_tol", th.gluing_tol);
  opt("gluing_time", th.gluing_time);
  th.require_sqrt_domination = j.value("require_sqrt_domination", false);
  opt("invariant_drift_factor", th.invariant_drift_factor);
  opt("envelope_growth_max", th.envelope_growth_max);
  opt("amplitude_coefficient", th.amplitude_coefficient);
  opt("amplitude_exponent", th.amplitude_exponent);
  opt("amplitude_rel_tol", th.amplitude_rel_tol);
  opt("entropy_max", th.entropy_max);
  opt("entropy_min_time", th.entropy_min_time);
  opt("oracle_gap_factor", th.oracle_gap_factor);
  opt("oracle_ratio_min", th.oracle_ratio_min);
  opt("oracle_ratio_max", th.oracle_ratio_max);
}

}  // namespace

void ExperimentConfig::validate() const {
  flux_by_name(flux_name);  // throws on unknown names
  // Convexity over the inferred working range. FluxModel construction
  // checks strict monotonicity of f'; exercise it on the actual range.
  const Interval range = data.total_range().inflated(1.0);
  flux_by_name(flux_name, range);

  require(data.halfwidth() > 0.0, "middle halfwidth must be positive");
  require(schedule.first > 0.0, "times.first must be positive");
  require(schedule.ratio > 1.0, "times.ratio must exceed 1");
  require(schedule.count >= 1, "times.count must be positive");

  const double ul = data.u_left();
  const double ur = data.u_right();
  switch (kind) {
    case StudyKind::shock_shift:
      require(ul > ur, "shock-shift study requires u_left > u_right");
      require(schedule.count >= 5, "decay studies need at least 5 times");
      break;
    case StudyKind::rarefaction:
      require(ul < ur, "rarefaction study requires u_left < u_right");
      require(schedule.count >= 5, "decay studies need at least 5 times");
      break;
    case StudyKind::constant:
      require(std::abs(ul - ur) <= 1e-12 * (1.0 + std::abs(ul)),
              "constant study requires u_left == u_right");
      require(schedule.count >= 5, "decay studies need at least 5 times");
      break;
    case StudyKind::periodic_decay:
      require(std::abs(ul - ur) <= 1e-12 * (1.0 + std::abs(ul)),
              "periodic-decay study requires purely periodic data");
      require(schedule.count >= 5, "decay studies need at least 5 times");
      break;
    case StudyKind::oracle_compare:
      require(oracle.has_value(),
              "oracle-compare study requires an 'oracle' section");
      require(!oracle->dx_list.empty(), "oracle.dx must not be empty");
      for (double dx : oracle->dx_list)
        require(dx > 0.0, "oracle.dx entries must be positive");
      require(oracle->read_window.length() > 0.0,
              "oracle.read_window must be nonempty");
      require(oracle->cfl > 0.0 && oracle->cfl <= 1.0,
              "oracle.cfl must lie in (0, 1]");
      break;
  }
  if (thresholds.gluing_tol.has_value())
    require(thresholds.gluing_time.has_value(),
            "gluing_tol requires gluing_time");
  if (thresholds.invariant_drift_factor.has_value())
    require(track_invariants,
            "invariant_drift_factor requires track_invariants");
  if (thresholds.envelope_growth_max.has_value())
    require(sqrt_envelope, "envelope_growth_max requires sqrt_envelope");
  if (thresholds.amplitude_coefficient.has_value())
    require(thresholds.amplitude_exponent.has_value() &&
                thresholds.amplitude_rel_tol.has_value(),
            "amplitude model needs coefficient, exponent and rel_tol");
}

ExperimentConfig parse_config(const std::string& text,
                              const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Map the byte offset to a line number for the error message.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " +
                                e.what());
  }

  ExperimentConfig cfg;
  cfg.raw_text = text;
  try {
    if (j.contains("flux")) cfg.flux_name = j.at("flux").value("name", "burgers");
    cfg.data = parse_initial(j.at("initial"), &cfg.folded_left,
                             &cfg.folded_right);

    const json& study = j.at("study");
    cfg.kind = kind_from_string(study.at("kind").get<std::string>());
    if (study.contains("times")) {
      const json& ts = study.at("times");
      cfg.schedule.first = ts.value("first", 8.0);
      cfg.schedule.ratio = ts.value("ratio", 2.0);
      cfg.schedule.count = ts.value("count", 5);
    }
    cfg.harness.samples_per_period =
        study.value("samples_per_period", cfg.harness.samples_per_period);
    cfg.harness.window_periods =
        study.value("window_periods", cfg.harness.window_periods);
    if (study.contains("anchor_index"))
      cfg.harness.K_override = study.at("anchor_index").get<int>();
    cfg.track_invariants = study.value("track_invariants", false);
    cfg.sqrt_envelope = study.value("sqrt_envelope", false);
    if (study.contains("thresholds"))
      parse_thresholds(study.at("thresholds"), cfg.thresholds);

    if (j.contains("oracle")) {
      OracleSettings o;
      const json& jo = j.at("oracle");
      if (jo.contains("read_window")) {
        auto w = jo.at("read_window").get<std::vector<double>>();
        require(w.size() == 2, "oracle.read_window must be [lo, hi]");
        o.read_window = {w[0], w[1]};
      }
      o.dx_list = jo.value("dx", std::vector<double>{});
      o.cfl = jo.value("cfl", 0.9);
      o.margin = jo.value("margin", 2.0);
      if (jo.contains("window")) {
        auto w = jo.at("window").get<std::vector<double>>();
        require(w.size() == 2, "oracle.window must be [lo, hi]");
        o.window = Interval{w[0], w[1]};
      }
      cfg.oracle = o;
    }
    if (j.contains("output"))
      cfg.output_dir = j.at("output").value("dir", "");
  } catch (const json::exception& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in.good())
    throw std::invalid_argument("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace clasym
