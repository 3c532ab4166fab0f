#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "clasym/experiments.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace clasym;
namespace fs = std::filesystem;

namespace {

const char* kShockConfig = R"json({
  "flux": {"name": "burgers"},
  "initial": {
    "left":  {"state": 1.0, "profile": {"name": "cosine", "amplitude": 0.3, "period": 1.0}},
    "right": {"state": -1.0, "profile": {"name": "sine", "amplitude": 0.2, "period": 1.5}},
    "middle": {"halfwidth": 2.0}
  },
  "study": {
    "kind": "shock-shift",
    "times": {"first": 4.0, "ratio": 2.0, "count": 5},
    "thresholds": {"final_residual_max": 0.05}
  }
})json";

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const ExperimentConfig cfg = parse_config(kShockConfig);
  CHECK(cfg.flux_name == "burgers");
  CHECK(cfg.data.u_left() == doctest::Approx(1.0));
  CHECK(cfg.data.u_right() == doctest::Approx(-1.0));
  CHECK(cfg.kind == StudyKind::shock_shift);
  CHECK(cfg.schedule.times() ==
        std::vector<double>{4.0, 8.0, 16.0, 32.0, 64.0});
}

TEST_CASE("config errors") {
  SUBCASE("malformed flux name") {
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"flux": {"name": "cubic"},
                         "initial": {"periodic": {"state": 0.0,
                            "profile": {"name": "zero"}}},
                         "study": {"kind": "periodic-decay",
                                   "times": {"first": 1, "ratio": 2, "count": 5}}})"),
        doctest::Contains("unknown flux"), std::invalid_argument);
  }
  SUBCASE("parse errors carry line numbers") {
    try {
      parse_config("{\n  \"flux\": {\n  oops\n}", "cfg.json");
      FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("cfg.json:3") != std::string::npos);
    }
  }
  SUBCASE("kind/state mismatch") {
    CHECK_THROWS_AS(
        parse_config(R"({"initial": {"left": {"state": -1.0},
                                     "right": {"state": 1.0}},
                         "study": {"kind": "shock-shift",
                                   "times": {"first": 1, "ratio": 2, "count": 5}}})"),
        std::invalid_argument);
  }
  SUBCASE("no partial outputs on validation errors") {
    const fs::path dir = temp_dir("clasym_cfg_err");
    ExperimentConfig cfg = parse_config(kShockConfig);
    cfg.kind = StudyKind::rarefaction;  // now inconsistent with the states
    CHECK_THROWS_AS(run_experiment(cfg, dir / "out"), std::invalid_argument);
    CHECK_FALSE(fs::exists(dir / "out"));
  }
}

TEST_CASE("zero-perturbation shock run reports a clean pass") {
  const char* text = R"json({
    "initial": {
      "left":  {"state": 1.0},
      "right": {"state": -1.0},
      "middle": {"halfwidth": 1.0}
    },
    "study": {
      "kind": "shock-shift",
      "times": {"first": 2.0, "ratio": 2.0, "count": 5},
      "thresholds": {"final_residual_max": 1e-8}
    }
  })json";
  const fs::path dir = temp_dir("clasym_zero_shock");
  const RunResult r = run_experiment(parse_config(text), dir);
  CHECK(r.pass);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["results"]["X_infinity"].get<double>() ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(summary["results"]["residual_fit"]["status"] == "exact");
  CHECK(summary["pass"].get<bool>());
}

TEST_CASE("acceptance shock config reports the analytic shift in summary") {
  const fs::path dir = temp_dir("clasym_shift_summary");
  const RunResult r = run_experiment(parse_config(kShockConfig), dir);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["results"]["X_infinity"].get<double>() ==
        doctest::Approx(0.0238732).epsilon(1e-4));
  CHECK(r.pass);
}

TEST_CASE("reruns are byte-identical") {
  const char* text = R"json({
    "initial": {"periodic": {"state": 0.0,
      "profile": {"name": "sine", "amplitude": 1.0, "period": 6.283185307179586}}},
    "study": {
      "kind": "periodic-decay",
      "times": {"first": 5.0, "ratio": 2.0, "count": 5},
      "thresholds": {"slope_max": -0.85, "slope_min": -1.15}
    }
  })json";
  const ExperimentConfig cfg = parse_config(text);
  const fs::path a = temp_dir("clasym_rerun_a");
  const fs::path b = temp_dir("clasym_rerun_b");
  const RunResult ra = run_experiment(cfg, a);
  const RunResult rb = run_experiment(cfg, b, 2);  // threads must not matter
  CHECK(ra.pass);
  CHECK(slurp(a / "decay.csv") == slurp(b / "decay.csv"));
  CHECK(slurp(a / "decay.csv").find("t,value") == 0);
}

TEST_CASE("oracle comparison on a small grid") {
  const char* text = R"json({
    "initial": {
      "left":  {"state": 1.0, "profile": {"name": "sine", "amplitude": 0.3, "period": 1.0}},
      "right": {"state": -1.0, "profile": {"name": "sine", "amplitude": 0.3, "period": 1.0}},
      "middle": {"halfwidth": 1.0}
    },
    "study": {
      "kind": "oracle-compare",
      "times": {"first": 1.0, "ratio": 2.0, "count": 1},
      "thresholds": {"oracle_gap_factor": 3.0}
    },
    "oracle": {"read_window": [-2.0, 2.0], "dx": [0.015625, 0.0078125]}
  })json";
  const fs::path dir = temp_dir("clasym_oracle");
  const RunResult r = run_experiment(parse_config(text), dir);
  CHECK(r.pass);
  CHECK(fs::exists(dir / "oracle_l1_0.csv"));
  CHECK(fs::exists(dir / "oracle_ratio_0.csv"));
}

TEST_CASE("explicit undersized oracle windows are refused") {
  const char* text = R"json({
    "initial": {"left": {"state": 1.0}, "right": {"state": -1.0},
                "middle": {"halfwidth": 1.0}},
    "study": {"kind": "oracle-compare",
              "times": {"first": 4.0, "ratio": 2.0, "count": 1}},
    "oracle": {"read_window": [-2.0, 2.0], "dx": [0.03125],
               "window": [-3.0, 3.0]}
  })json";
  CHECK_THROWS_WITH_AS(run_experiment(parse_config(text), temp_dir("clasym_win")),
                       doctest::Contains("boundary"), std::runtime_error);
}
