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

// End-to-end acceptance checks for the whole library: the two matrix-group
// reproductions, the averaging/corrector/Taylor scaling laws, structure
// preservation, the frequency validator, the closed-form-vs-series oracles
// and byte-level determinism. Each criterion prints one pass/fail line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "geoseek/experiment.hpp"
#include "oracle_helpers.hpp"

namespace
{

int g_failures = 0;

void report(int id, const std::string & name, bool pass, const std::string & details)
{
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              details.c_str());
  std::fflush(stdout);
  if (!pass) {
    ++g_failures;
  }
}

void run_criterion(int id, const std::string & name, const std::function<void()> & body)
{
  try {
    body();
  } catch (const std::exception & e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(const std::chrono::steady_clock::time_point & start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Eigen::VectorXd random_algebra_coords(std::mt19937 & rng, int n, double max_norm)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.05, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    v(i) = normal(rng);
  }
  return v * (scale(rng) * max_norm / v.norm());
}

geoseek::RunRecord g_so3_record;
geoseek::RunRecord g_se3_record;
double g_so3_seconds = 0.0;
double g_se3_seconds = 0.0;

void criterion_1_so3()
{
  geoseek::ExperimentConfig cfg = *geoseek::find_builtin("so3_paper");
  cfg.output = "acceptance_out/so3_paper";
  const auto start = std::chrono::steady_clock::now();
  g_so3_record = geoseek::run_experiment(cfg);
  g_so3_seconds = seconds_since(start);

  std::ostringstream details;
  details << "final cost " << g_so3_record.final_cost << " < 0.02, angle "
          << g_so3_record.final_distance << " < 0.2 rad, " << g_so3_seconds << " s < 30 s";
  report(
    1, "SO(3) reproduction",
    g_so3_record.final_cost < 0.02 && g_so3_record.final_distance < 0.2 &&
      g_so3_seconds < 30.0,
    details.str());
}

void criterion_2_se3()
{
  geoseek::ExperimentConfig cfg = *geoseek::find_builtin("se3_paper");
  cfg.output = "acceptance_out/se3_paper";
  const double expected_initial = 3.5857864376269049;
  const auto start = std::chrono::steady_clock::now();
  g_se3_record = geoseek::run_experiment(cfg);
  g_se3_seconds = seconds_since(start);

  const bool initial_ok = std::abs(g_se3_record.initial_cost - expected_initial) < 1e-6;
  const bool final_ok = g_se3_record.final_cost < 0.05 * g_se3_record.initial_cost;
  std::ostringstream details;
  details << "initial cost " << g_se3_record.initial_cost << " = " << expected_initial
          << " +- 1e-6, final cost " << g_se3_record.final_cost << " < 5% of initial, "
          << g_se3_seconds << " s < 60 s";
  report(2, "SE(3) reproduction", initial_ok && final_ok && g_se3_seconds < 60.0,
         details.str());
}

void criterion_3_averaging_slope()
{
  geoseek::ExperimentConfig cfg = *geoseek::find_builtin("s1_benchmark");
  cfg.output = "acceptance_out/s1_amp";
  const auto start = std::chrono::steady_clock::now();
  const auto sweep = geoseek::run_sweep(
    cfg, geoseek::SweepAxis::AmplitudeScale, {0.2, 0.1, 0.05, 0.025});
  const double elapsed = seconds_since(start);

  bool runs_ok = true;
  for (const auto & record : sweep.records) {
    runs_ok = runs_ok && record.error.empty();
  }
  const double slope = sweep.residual_slope_value.value_or(0.0);
  std::ostringstream details;
  details << "residual log-log slope " << slope << " in [3.5, 4.5], " << elapsed
          << " s < 10 s";
  report(
    3, "averaging residual scaling",
    runs_ok && sweep.residual_slope_value.has_value() && slope > 3.5 && slope < 4.5 &&
      elapsed < 10.0,
    details.str());
}

void criterion_4_corrector()
{
  geoseek::ExperimentConfig cfg = *geoseek::find_builtin("s1_benchmark");
  cfg.output = "acceptance_out/s1_omega";
  const auto start = std::chrono::steady_clock::now();
  const auto sweep = geoseek::run_sweep(cfg, geoseek::SweepAxis::Omega, {50.0, 100.0});
  const double elapsed = seconds_since(start);

  const bool have = sweep.corrector_sups.size() == 2 && sweep.corrector_ratios.size() == 1;
  const double ratio = have ? sweep.corrector_ratios[0] : 0.0;
  std::ostringstream details;
  details << "sup corrector distance ratio (omega 50 -> 100) " << ratio
          << " in [0.3, 0.7], " << elapsed << " s < 20 s";
  report(4, "corrector-flow closeness", have && ratio > 0.3 && ratio < 0.7 && elapsed < 20.0,
         details.str());
}

void criterion_5_lyapunov()
{
  // S1 gradient flow.
  geoseek::CostOracle s1_cost;
  s1_cost.eval = [](const geoseek::State & s) {
    return 1.0 - std::cos(std::get<geoseek::ChartPoint>(s).coords(0) - 1.0);
  };
  s1_cost.target = geoseek::State{geoseek::ChartPoint{Eigen::VectorXd::Constant(1, 1.0)}};
  geoseek::IntegratorConfig s1_cfg;
  s1_cfg.method = geoseek::Method::ChartRK4;
  s1_cfg.step = 1e-2;
  s1_cfg.horizon = 200.0;
  s1_cfg.sample_stride = 10;
  const geoseek::SpaceBinding s1{geoseek::ChartBinding{geoseek::ManifoldDescriptor::circle()}};
  const auto s1_traj = geoseek::integrate_gradient(
    s1_cost, geoseek::State{geoseek::ChartPoint{Eigen::VectorXd::Constant(1, 1.5)}},
    Eigen::VectorXd::Constant(1, 0.1), s1_cfg, s1);
  const auto s1_report = geoseek::lyapunov_monitor(s1_traj);

  // SO(3) gradient flow.
  geoseek::CostOracle so3_cost;
  so3_cost.eval = [](const geoseek::State & s) {
    return 0.5 * (std::get<geoseek::GroupElement>(s).mat - Eigen::Matrix3d::Identity())
                   .squaredNorm();
  };
  so3_cost.target = geoseek::State{geoseek::GroupElement::identity(geoseek::GroupTag::SO3)};
  geoseek::IntegratorConfig so3_cfg;
  so3_cfg.method = geoseek::Method::LieEuler;
  so3_cfg.step = 1e-2;
  so3_cfg.horizon = 50.0;
  so3_cfg.sample_stride = 10;
  const geoseek::SpaceBinding so3{geoseek::GroupBinding{geoseek::GroupTag::SO3}};
  const auto so3_traj = geoseek::integrate_gradient(
    so3_cost,
    geoseek::State{geoseek::GroupElement{geoseek::GroupTag::SO3, geoseek::rotation_z(M_PI / 4.0)}},
    Eigen::VectorXd::Constant(3, 0.1), so3_cfg, so3);
  const auto so3_report = geoseek::lyapunov_monitor(so3_traj);

  std::ostringstream details;
  details << "S1 max positive jump " << s1_report.max_positive_jump << ", SO(3) "
          << so3_report.max_positive_jump << ", both <= 1e-8*(1+J0)";
  report(5, "Lyapunov descent of the gradient flows",
         s1_report.descent_verified && so3_report.descent_verified, details.str());
}

void criterion_6_structure()
{
  const bool defects_ok = g_so3_record.max_membership_defect < 1e-12 &&
                          g_se3_record.max_membership_defect < 1e-12;
  std::mt19937 rng(20260810);
  std::uniform_real_distribution<double> param(-M_PI / 2.0, M_PI / 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd c3 = random_algebra_coords(rng, 3, 1.0);
    const double t = param(rng);
    const double s = param(rng);
    const auto exp3 = [&](double u) {
      return geoseek::so3_exp(Eigen::Matrix3d(
        geoseek::algebra_from_coords((u * c3).eval(), geoseek::GroupTag::SO3)));
    };
    worst = std::max(worst, (exp3(t).mat * exp3(s).mat - exp3(t + s).mat).norm());

    const Eigen::VectorXd c6 = random_algebra_coords(rng, 6, 1.0);
    const auto exp6 = [&](double u) {
      return geoseek::se3_exp(Eigen::Matrix4d(
        geoseek::algebra_from_coords((u * c6).eval(), geoseek::GroupTag::SE3)));
    };
    worst = std::max(worst, (exp6(t).mat * exp6(s).mat - exp6(t + s).mat).norm());
  }

  std::ostringstream details;
  details << "sampled membership defects SO(3) " << g_so3_record.max_membership_defect
          << ", SE(3) " << g_se3_record.max_membership_defect
          << " (< 1e-12); worst one-parameter-subgroup error " << worst << " < 1e-10";
  report(6, "structure preservation", defects_ok && worst < 1e-10, details.str());
}

void criterion_7_frequency_validator()
{
  const auto parse = [](const std::vector<std::string> & texts) {
    std::vector<geoseek::Rational> out;
    for (const auto & t : texts) {
      out.push_back(geoseek::parse_rational(t));
    }
    return out;
  };

  const bool paper_ok = geoseek::validate_frequencies(parse({"2", "4.1", "6.2"})).empty();
  const bool six_ok =
    geoseek::validate_frequencies(parse({"2", "4.1", "6.2", "8.3", "10.4", "12.5"})).empty();

  const auto violations = geoseek::validate_frequencies(parse({"1", "2", "3"}));
  const bool reject_ok =
    violations.size() == 2 &&
    violations[0].kind == geoseek::FrequencyViolation::Kind::DoubleOf &&
    violations[0].i == 0 && violations[0].j == 1 &&
    violations[1].kind == geoseek::FrequencyViolation::Kind::SumOf && violations[1].i == 2 &&
    violations[1].j == 0 && violations[1].k == 1;

  std::ostringstream details;
  details << "accepts the 3- and 6-frequency sets; rejects (1,2,3) with exactly {"
          << (violations.size() > 0 ? violations[0].describe() : "") << ", "
          << (violations.size() > 1 ? violations[1].describe() : "") << "}";
  report(7, "frequency-condition validator", paper_ok && six_ok && reject_ok, details.str());
}

void criterion_8_oracle_equivalence()
{
  std::mt19937 rng(77);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd c3 =
      random_algebra_coords(rng, 3, M_PI / std::sqrt(2.0));
    const Eigen::Matrix3d s =
      geoseek::algebra_from_coords(c3, geoseek::GroupTag::SO3);
    worst = std::max(worst, (geoseek::so3_exp(s).mat - oracle::matrix_exp_series(s)).norm());

    const Eigen::VectorXd c6 =
      random_algebra_coords(rng, 6, M_PI / std::sqrt(2.0));
    const Eigen::Matrix4d xi =
      Eigen::Matrix4d(geoseek::algebra_from_coords(c6, geoseek::GroupTag::SE3));
    worst = std::max(worst, (geoseek::se3_exp(xi).mat - oracle::matrix_exp_series(xi)).norm());
  }

  // Averaged field on the scalar quadratic vs the closed form -(a^2/2) J'(x).
  geoseek::CostOracle quadratic;
  quadratic.eval = [](const geoseek::State & s) {
    const double x = std::get<geoseek::ChartPoint>(s).coords(0);
    return x * x;
  };
  geoseek::DitherSpec spec;
  spec.amplitudes = Eigen::VectorXd::Constant(1, 0.1);
  spec.multipliers = {geoseek::parse_rational("1")};
  spec.base_frequency = 10.0;
  const geoseek::ESField field(
    spec, quadratic,
    geoseek::SpaceBinding{geoseek::ChartBinding{geoseek::ManifoldDescriptor::euclidean(1)}});
  const double averaged =
    geoseek::averaged_field(field, geoseek::State{geoseek::ChartPoint{
                                     Eigen::VectorXd::Constant(1, 1.0)}})
      .coeffs(0);
  const double closed_form = -0.5 * 0.1 * 0.1 * 2.0;  // -(a^2/2) J'(1)
  const bool averaged_ok = std::abs(averaged - closed_form) < 1e-4;

  std::ostringstream details;
  details << "worst exp-vs-30-term-series error " << worst << " < 1e-10; averaged field "
          << averaged << " vs closed form " << closed_form << " within 1e-4";
  report(8, "closed forms match independent oracles", worst < 1e-10 && averaged_ok,
         details.str());
}

void criterion_9_taylor()
{
  geoseek::CostOracle cost;
  cost.eval = [](const geoseek::State & s) {
    return 1.0 - std::cos(std::get<geoseek::ChartPoint>(s).coords(0) - 1.0);
  };
  const geoseek::SpaceBinding s1{geoseek::ChartBinding{geoseek::ManifoldDescriptor::circle()}};
  const geoseek::State probe{geoseek::ChartPoint{Eigen::VectorXd::Constant(1, 1.3)}};
  const std::vector<double> etas = {0.1, 0.05, 0.025};
  const Eigen::VectorXd direction = Eigen::VectorXd::Constant(1, 1.0);

  const double first = geoseek::taylor_remainder(cost, probe, direction, etas, 1, s1).slope;
  const double second = geoseek::taylor_remainder(cost, probe, direction, etas, 2, s1).slope;

  std::ostringstream details;
  details << "first-order slope " << first << " in [1.8, 2.2]; second-order slope " << second
          << " in [2.7, 3.3]";
  report(9, "Taylor-remainder scaling", first > 1.8 && first < 2.2 && second > 2.7 &&
                                          second < 3.3,
         details.str());
}

void criterion_10_determinism()
{
  geoseek::ExperimentConfig a = *geoseek::find_builtin("s1_benchmark");
  a.output = "acceptance_out/det_a";
  geoseek::ExperimentConfig b = a;
  b.output = "acceptance_out/det_b";
  geoseek::run_experiment(a);
  geoseek::run_experiment(b);
  const std::string csv_a = read_file("acceptance_out/det_a.csv");
  const std::string csv_b = read_file("acceptance_out/det_b.csv");
  const bool equal = !csv_a.empty() && csv_a == csv_b;
  std::ostringstream details;
  details << "two s1_benchmark runs produced byte-identical CSV (" << csv_a.size()
          << " bytes)";
  report(10, "determinism", equal, details.str());
}

}  // namespace

int main()
{
  run_criterion(1, "SO(3) reproduction", criterion_1_so3);
  run_criterion(2, "SE(3) reproduction", criterion_2_se3);
  run_criterion(3, "averaging residual scaling", criterion_3_averaging_slope);
  run_criterion(4, "corrector-flow closeness", criterion_4_corrector);
  run_criterion(5, "Lyapunov descent of the gradient flows", criterion_5_lyapunov);
  run_criterion(6, "structure preservation", criterion_6_structure);
  run_criterion(7, "frequency-condition validator", criterion_7_frequency_validator);
  run_criterion(8, "closed forms match independent oracles", criterion_8_oracle_equivalence);
  run_criterion(9, "Taylor-remainder scaling", criterion_9_taylor);
  run_criterion(10, "determinism", criterion_10_determinism);

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
