/*
 * Copyright 2026 The geoseek Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "geoseek/experiment.hpp"

using geoseek::ChartPoint;
using geoseek::ExperimentConfig;
using geoseek::GroupElement;
using geoseek::Rational;
using geoseek::SpaceKind;
using geoseek::State;

namespace
{

std::string config_path(const std::string & name)
{
  return std::string(GEOSEEK_SOURCE_DIR) + "/configs/" + name;
}

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ExperimentConfig short_s1(const std::string & output)
{
  ExperimentConfig cfg = *geoseek::find_builtin("s1_benchmark");
  cfg.integrator.horizon = 2.0;
  cfg.integrator.sample_stride = 10;
  cfg.output = output;
  return cfg;
}

}  // namespace

TEST_CASE("built-in experiments are present and valid")
{
  const auto & builtins = geoseek::builtin_experiments();
  REQUIRE(builtins.size() == 4);
  for (const auto & cfg : builtins) {
    CHECK_NOTHROW(cfg.validate());
  }
  CHECK(geoseek::find_builtin("so3_paper").has_value());
  CHECK(geoseek::find_builtin("se3_paper").has_value());
  CHECK(geoseek::find_builtin("r1_classic").has_value());
  CHECK(geoseek::find_builtin("s1_benchmark").has_value());
  CHECK_FALSE(geoseek::find_builtin("nope").has_value());
}

TEST_CASE("load_config reads the shipped SO(3) experiment")
{
  const auto cfg = geoseek::load_config(config_path("so3_paper.json"));
  CHECK(cfg.experiment == "so3_paper");
  CHECK(cfg.space == SpaceKind::SO3);
  REQUIRE(cfg.dither.amplitudes.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(cfg.dither.amplitudes(i) == 0.1);
  }
  REQUIRE(cfg.dither.multipliers.size() == 3);
  CHECK(cfg.dither.multipliers[0] == Rational(2));
  CHECK(cfg.dither.multipliers[1] == Rational(41, 10));
  CHECK(cfg.dither.multipliers[2] == Rational(31, 5));
  CHECK(cfg.dither.base_frequency == 1.0);
  CHECK(cfg.integrator.horizon == 200.0);

  const auto & g0 = std::get<GroupElement>(cfg.initial_state);
  CHECK((g0.mat - Eigen::MatrixXd(geoseek::rotation_z(M_PI / 4.0))).norm() < 1e-15);
}

TEST_CASE("config validation failures")
{
  // Every violated frequency condition is named.
  try {
    geoseek::load_config(config_path("bad_frequencies.json"));
    FAIL("expected a validation error");
  } catch (const geoseek::ArgumentError & e) {
    const std::string what = e.what();
    CHECK(what.find("2*w[1] == w[2]") != std::string::npos);
    CHECK(what.find("w[3] == w[1] + w[2]") != std::string::npos);
  }

  CHECK_THROWS_AS(geoseek::load_config("no_such_file.json"), geoseek::IoError);

  // Parse errors carry position context.
  try {
    geoseek::parse_config_text("{ not json", "inline");
    FAIL("expected a parse error");
  } catch (const geoseek::ArgumentError & e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }

  // Multipliers must be strings, not floats.
  const std::string numeric_multiplier = R"({
    "experiment": "x", "space": "S1",
    "cost": {"type": "cos_well", "theta_star": 0.0},
    "initial_state": [0.5],
    "dither": {"amplitudes": [0.1], "multipliers": [4.1], "omega": 1.0},
    "integrator": {"method": "chart_rk4", "step": 0.001, "t_f": 1.0},
    "target": [0.0], "enter_radius": 0.1, "output": "x"
  })";
  CHECK_THROWS_AS(
    geoseek::parse_config_text(numeric_multiplier, "inline"), geoseek::ArgumentError);
}

TEST_CASE("initial costs of the paper experiments evaluate to the published values")
{
  const auto so3 = *geoseek::find_builtin("so3_paper");
  CHECK(
    so3.oracle()(so3.initial_state) ==
    doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));

  const auto se3 = *geoseek::find_builtin("se3_paper");
  // (2 - sqrt(2)) + 0.5 * |(1, -1, 2)|^2
  CHECK(
    se3.oracle()(se3.initial_state) ==
    doctest::Approx(3.5857864376269049).epsilon(1e-9));

  // On the group, 1/2 |g - I|_F^2 equals 3 - tr(g).
  const auto & g0 = std::get<GroupElement>(so3.initial_state);
  CHECK(
    so3.oracle()(so3.initial_state) ==
    doctest::Approx(3.0 - g0.mat.trace()).epsilon(1e-12));
}

TEST_CASE("r1_classic converges near the origin")
{
  ExperimentConfig cfg = *geoseek::find_builtin("r1_classic");
  cfg.output = "test_out/r1_classic";
  const auto record = geoseek::run_experiment(cfg);
  CHECK(record.initial_cost == 1.0);
  // Final |x| < 0.05 means final cost < 2.5e-3.
  CHECK(record.final_cost < 2.5e-3);
  CHECK(record.t_enter.has_value());
  CHECK(record.error.empty());
}

TEST_CASE("CSV output shape and determinism")
{
  const auto record_a = geoseek::run_experiment(short_s1("test_out/s1_a"));
  const auto record_b = geoseek::run_experiment(short_s1("test_out/s1_b"));

  const std::string a = read_file("test_out/s1_a.csv");
  const std::string b = read_file("test_out/s1_b.csv");
  CHECK(a == b);
  CHECK(a.find('\r') == std::string::npos);

  std::istringstream lines(a);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "t,cost,dist_to_target,theta");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
  }
  // 2000 steps at stride 10 plus the initial sample.
  CHECK(rows == 201);
  CHECK(record_a.sample_count == 201);
  CHECK(record_b.csv_path == "test_out/s1_b.csv");

  // Summary JSON and plot script exist alongside.
  CHECK(read_file("test_out/s1_a.summary.json").find("\"experiment\"") != std::string::npos);
  CHECK(read_file("test_out/s1_a_plot.py").find("matplotlib") != std::string::npos);
}

TEST_CASE("SO(3) CSV has 12 columns and tiny defects on a short run")
{
  ExperimentConfig cfg = *geoseek::find_builtin("so3_paper");
  cfg.integrator.horizon = 0.5;
  cfg.integrator.sample_stride = 100;
  cfg.output = "test_out/so3_short";
  const auto record = geoseek::run_experiment(cfg);
  CHECK(record.max_membership_defect < 1e-12);

  std::istringstream lines(read_file("test_out/so3_short.csv"));
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(
    line ==
    "t,cost,dist_to_target,g11,g12,g13,g21,g22,g23,g31,g32,g33");
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 11);
  }
}

TEST_CASE("sweep with a single value notes the missing trend")
{
  ExperimentConfig base = short_s1("test_out/sweep_single");
  const auto result =
    geoseek::run_sweep(base, geoseek::SweepAxis::AmplitudeScale, {0.1});
  CHECK(result.records.size() == 1);
  REQUIRE_FALSE(result.notes.empty());
  bool found = false;
  for (const auto & note : result.notes) {
    if (note.find("insufficient") != std::string::npos) {
      found = true;
    }
  }
  CHECK(found);
  CHECK_FALSE(result.residual_slope_value.has_value());
}

TEST_CASE("amplitude sweep emits the averaging-residual slope")
{
  ExperimentConfig base = short_s1("test_out/sweep_amp");
  const auto result = geoseek::run_sweep(
    base, geoseek::SweepAxis::AmplitudeScale, {0.2, 0.1, 0.05, 0.025});
  REQUIRE(result.records.size() == 4);
  for (const auto & record : result.records) {
    CHECK(record.error.empty());
    CHECK(record.axis == "amplitude");
  }
  REQUIRE(result.residual_slope_value.has_value());
  CHECK(*result.residual_slope_value > 3.5);
  CHECK(*result.residual_slope_value < 4.5);
}

TEST_CASE("run_experiment surfaces divergence and retains a marked partial CSV")
{
  ExperimentConfig cfg = *geoseek::find_builtin("r1_classic");
  cfg.initial_state = State{ChartPoint{Eigen::VectorXd::Constant(1, 1e3)}};
  cfg.dither.amplitudes = Eigen::VectorXd::Constant(1, 1.0);
  cfg.integrator.step = 10.0;
  cfg.integrator.horizon = 100.0;
  cfg.integrator.sample_stride = 1;
  cfg.output = "test_out/diverge";
  CHECK_THROWS_AS(geoseek::run_experiment(cfg), geoseek::IntegrationDivergedError);
  const std::string csv = read_file("test_out/diverge.csv");
  CHECK(csv.find("# aborted:") != std::string::npos);
}

TEST_CASE("emit_summary is deterministic and sorted")
{
  CHECK(geoseek::emit_summary_table({}).find("experiment") == 0);

  geoseek::RunRecord r1;
  r1.experiment = "b_exp";
  r1.initial_cost = 1.0;
  r1.final_cost = 0.25;
  r1.final_distance = 0.5;
  r1.t_enter = 12.5;
  geoseek::RunRecord r2;
  r2.experiment = "a_exp";
  r2.initial_cost = 2.0;
  r2.final_cost = 0.5;
  r2.final_distance = 0.7;

  const std::string table = geoseek::emit_summary_table({r1, r2});
  CHECK(table.find("a_exp") < table.find("b_exp"));
  CHECK(table == geoseek::emit_summary_table({r2, r1}));
  CHECK(table.find("never") != std::string::npos);
  CHECK(table.find("12.5") != std::string::npos);

  const std::string json_text = geoseek::emit_summary_json({r1, r2});
  CHECK(json_text == geoseek::emit_summary_json({r2, r1}));
  CHECK(json_text.find("\"t_enter\": \"never\"") != std::string::npos);
}
