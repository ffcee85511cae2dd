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

#include <cmath>

#include "geoseek/integrator.hpp"

using geoseek::ChartBinding;
using geoseek::ChartPoint;
using geoseek::CostOracle;
using geoseek::ESField;
using geoseek::GroupBinding;
using geoseek::GroupElement;
using geoseek::GroupTag;
using geoseek::IntegratorConfig;
using geoseek::ManifoldDescriptor;
using geoseek::Method;
using geoseek::SpaceBinding;
using geoseek::State;

namespace
{

Eigen::VectorXd vec1(double a)
{
  return Eigen::VectorXd::Constant(1, a);
}

CostOracle no_monitor()
{
  return CostOracle{};
}

IntegratorConfig chart_cfg(double step, double horizon, int stride = 1)
{
  IntegratorConfig cfg;
  cfg.step = step;
  cfg.method = Method::ChartRK4;
  cfg.horizon = horizon;
  cfg.sample_stride = stride;
  return cfg;
}

IntegratorConfig group_cfg(Method method, double step, double horizon, int stride = 1)
{
  IntegratorConfig cfg;
  cfg.step = step;
  cfg.method = method;
  cfg.horizon = horizon;
  cfg.sample_stride = stride;
  return cfg;
}

double terminal_decay_error(double step)
{
  // |x(1) - 1/e| for the linear decay problem at the given step.
  const SpaceBinding r1{ChartBinding{ManifoldDescriptor::euclidean(1)}};
  const geoseek::FieldFn field = [](const State & s, double) {
    return Eigen::VectorXd(-std::get<ChartPoint>(s).coords);
  };
  const auto traj = geoseek::integrate(
    field, State{ChartPoint{vec1(1.0)}}, chart_cfg(step, 1.0, 1 << 30), r1, no_monitor());
  return std::abs(std::get<ChartPoint>(traj.back().state).coords(0) - std::exp(-1.0));
}

}  // namespace

TEST_CASE("zero field keeps the state and the monitors constant")
{
  const SpaceBinding r1{ChartBinding{ManifoldDescriptor::euclidean(1)}};
  CostOracle monitor;
  monitor.eval = [](const State & s) {
    return std::abs(std::get<ChartPoint>(s).coords(0) - 2.0);
  };
  monitor.target = State{ChartPoint{vec1(2.0)}};

  const geoseek::FieldFn zero = [](const State &, double) {
    return Eigen::VectorXd::Zero(1);
  };
  const auto traj =
    geoseek::integrate(zero, State{ChartPoint{vec1(0.5)}}, chart_cfg(0.1, 3.0, 2), r1, monitor);
  for (const auto & sample : traj.samples) {
    CHECK(std::get<ChartPoint>(sample.state).coords(0) == 0.5);
    CHECK(sample.dist_to_target == 1.5);
    CHECK(sample.cost == 1.5);
  }
}

TEST_CASE("Lie-Euler is exact for constant algebra fields")
{
  Eigen::VectorXd xi(3);
  xi << 0.3, -0.2, 0.5;
  const geoseek::FieldFn constant = [&xi](const State &, double) { return xi; };
  const SpaceBinding so3{GroupBinding{GroupTag::SO3}};
  const State g0{GroupElement{GroupTag::SO3, geoseek::rotation_z(0.4)}};

  for (Method method : {Method::LieEuler, Method::RKMK4}) {
    const auto traj = geoseek::integrate(
      constant, g0, group_cfg(method, 0.05, 2.0, 8), so3, no_monitor());
    for (const auto & sample : traj.samples) {
      const Eigen::MatrixXd expected =
        std::get<GroupElement>(g0).mat *
        geoseek::so3_exp(Eigen::Matrix3d(geoseek::algebra_from_coords(
                           (sample.t * xi).eval(), GroupTag::SO3)))
          .mat;
      CHECK((std::get<GroupElement>(sample.state).mat - expected).norm() < 1e-12);
    }
  }
}

TEST_CASE("chart RK4 solves linear decay to 1e-9")
{
  CHECK(terminal_decay_error(1e-3) < 1e-9);
}

TEST_CASE("chart RK4 shows 4th-order step convergence")
{
  const double coarse = terminal_decay_error(0.02);
  const double fine = terminal_decay_error(0.01);
  const double ratio = coarse / fine;
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("RKMK4 converges at 4th order on a time-varying group field")
{
  const geoseek::FieldFn field = [](const State &, double t) {
    Eigen::VectorXd xi(3);
    xi << std::sin(t), std::cos(t), 0.2;
    return xi;
  };
  const SpaceBinding so3{GroupBinding{GroupTag::SO3}};
  const State g0{GroupElement::identity(GroupTag::SO3)};

  const auto endpoint = [&](Method method, double h) {
    IntegratorConfig cfg = group_cfg(method, h, 2.0, 1 << 30);
    cfg.project_each_step = false;
    return std::get<GroupElement>(
             geoseek::integrate(field, g0, cfg, so3, no_monitor()).back().state)
      .mat;
  };

  const Eigen::MatrixXd reference = endpoint(Method::RKMK4, 1e-4);
  const double coarse = (endpoint(Method::RKMK4, 0.02) - reference).norm();
  const double fine = (endpoint(Method::RKMK4, 0.01) - reference).norm();
  CHECK(coarse / fine > 10.0);
  CHECK(coarse / fine < 25.0);

  // And it beats Lie-Euler at the same step.
  const double euler = (endpoint(Method::LieEuler, 0.01) - reference).norm();
  CHECK(fine < 0.01 * euler);
}

TEST_CASE("sample time stamps are exact grid multiples")
{
  const SpaceBinding r1{ChartBinding{ManifoldDescriptor::euclidean(1)}};
  const geoseek::FieldFn zero = [](const State &, double) {
    return Eigen::VectorXd::Zero(1);
  };
  IntegratorConfig cfg = chart_cfg(0.1, 2.7, 3);
  cfg.t0 = 2.0;
  const auto traj =
    geoseek::integrate(zero, State{ChartPoint{vec1(1.0)}}, cfg, r1, no_monitor());

  // 7 steps, stride 3: samples at steps 0, 3, 6 and the final step. Interior
  // stamps are t0 + k*h; the final stamp is the configured horizon itself.
  REQUIRE(traj.samples.size() == 4);
  CHECK(traj.samples[0].t == 2.0);
  CHECK(traj.samples[1].t == 2.0 + 3.0 * 0.1);
  CHECK(traj.samples[2].t == 2.0 + 6.0 * 0.1);
  CHECK(traj.samples[3].t == 2.7);
  CHECK(std::get<ChartPoint>(traj.samples[0].state).coords(0) == 1.0);

  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  }
}

TEST_CASE("integrate_gradient is stationary at a critical point")
{
  const SpaceBinding r1{ChartBinding{ManifoldDescriptor::euclidean(1)}};
  CostOracle cost;
  cost.eval = [](const State & s) {
    const double x = std::get<ChartPoint>(s).coords(0);
    return x * x;
  };
  const auto traj = geoseek::integrate_gradient(
    cost, State{ChartPoint{vec1(0.0)}}, vec1(0.1), chart_cfg(1e-2, 1.0), r1);
  CHECK(std::abs(std::get<ChartPoint>(traj.back().state).coords(0)) < 1e-8);
}

TEST_CASE("integrate_gradient matches the linear-decay solution")
{
  const SpaceBinding r1{ChartBinding{ManifoldDescriptor::euclidean(1)}};
  CostOracle cost;
  cost.eval = [](const State & s) {
    const double x = std::get<ChartPoint>(s).coords(0);
    return x * x;
  };
  // a = 0.1: xdot = -(a^2/2) J' = -0.01 x.
  const auto traj = geoseek::integrate_gradient(
    cost, State{ChartPoint{vec1(1.0)}}, vec1(0.1), chart_cfg(1e-3, 1.0), r1);
  CHECK(
    std::get<ChartPoint>(traj.back().state).coords(0) ==
    doctest::Approx(std::exp(-0.01)).epsilon(1e-8));
}

TEST_CASE("integrate_gradient descends the rotation cost")
{
  const SpaceBinding so3{GroupBinding{GroupTag::SO3}};
  CostOracle cost;
  cost.eval = [](const State & s) {
    return 0.5 *
           (std::get<GroupElement>(s).mat - Eigen::Matrix3d::Identity()).squaredNorm();
  };
  cost.target = State{GroupElement::identity(GroupTag::SO3)};
  const State g0{GroupElement{GroupTag::SO3, geoseek::rotation_z(M_PI / 4.0)}};

  const auto traj = geoseek::integrate_gradient(
    cost, g0, Eigen::VectorXd::Constant(3, 0.1),
    group_cfg(Method::LieEuler, 1e-2, 20.0, 100), so3);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].cost < traj.samples[i - 1].cost);
  }
}

TEST_CASE("integrate_averaged keeps a constant-cost system still")
{
  const SpaceBinding s1{ChartBinding{ManifoldDescriptor::circle()}};
  CostOracle constant;
  constant.eval = [](const State &) { return 2.0; };
  geoseek::DitherSpec spec;
  spec.amplitudes = vec1(0.1);
  spec.multipliers = {geoseek::parse_rational("1")};
  spec.base_frequency = 10.0;
  const ESField field(spec, constant, s1);

  const auto traj = geoseek::integrate_averaged(
    field, State{ChartPoint{vec1(1.0)}}, chart_cfg(0.01, 1.0, 10));
  CHECK(
    std::abs(std::get<ChartPoint>(traj.back().state).coords(0) - 1.0) < 1e-10);
}

TEST_CASE("integrate_averaged converges toward the cosine-well minimizer")
{
  const SpaceBinding s1{ChartBinding{ManifoldDescriptor::circle()}};
  CostOracle cost;
  cost.eval = [](const State & s) {
    return 1.0 - std::cos(std::get<ChartPoint>(s).coords(0) - 1.0);
  };
  cost.target = State{ChartPoint{vec1(1.0)}};
  geoseek::DitherSpec spec;
  spec.amplitudes = vec1(0.1);
  spec.multipliers = {geoseek::parse_rational("1")};
  spec.base_frequency = 50.0;
  const ESField field(spec, cost, s1);

  const auto traj = geoseek::integrate_averaged(
    field, State{ChartPoint{vec1(1.5)}}, chart_cfg(0.01, 50.0, 1000));
  const double initial = traj.front().dist_to_target;
  const double final = traj.back().dist_to_target;
  CHECK(initial == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(final < initial - 0.05);
}

TEST_CASE("group runs keep membership defects tiny with projection")
{
  geoseek::DitherSpec spec;
  spec.amplitudes = Eigen::VectorXd::Constant(3, 0.1);
  spec.multipliers = {
    geoseek::parse_rational("2"), geoseek::parse_rational("4.1"),
    geoseek::parse_rational("6.2")};
  spec.base_frequency = 1.0;
  CostOracle cost;
  cost.eval = [](const State & s) {
    return 0.5 *
           (std::get<GroupElement>(s).mat - Eigen::Matrix3d::Identity()).squaredNorm();
  };
  const SpaceBinding so3{GroupBinding{GroupTag::SO3}};
  const ESField field(spec, cost, so3);
  const State g0{GroupElement{GroupTag::SO3, geoseek::rotation_z(M_PI / 4.0)}};

  IntegratorConfig cfg = group_cfg(Method::LieEuler, 1e-3, 10.0, 100);
  const auto projected = geoseek::integrate_es(field, g0, cfg);
  CHECK(projected.max_membership_defect < 1e-12);

  // Without projection the defect drifts but stays far below the divergence
  // guard over 1e5 steps.
  cfg.horizon = 100.0;
  cfg.project_each_step = false;
  const auto raw = geoseek::integrate_es(field, g0, cfg);
  CHECK(raw.max_membership_defect < 1e-6);
}

TEST_CASE("divergence and chart-exit errors carry partial trajectories")
{
  const SpaceBinding r1{ChartBinding{ManifoldDescriptor::euclidean(1)}};
  const geoseek::FieldFn blowup = [](const State & s, double) {
    const double x = std::get<ChartPoint>(s).coords(0);
    return vec1(x * x);
  };
  try {
    geoseek::integrate(blowup, State{ChartPoint{vec1(2.0)}}, chart_cfg(0.5, 20.0), r1,
                       no_monitor());
    FAIL("expected divergence");
  } catch (const geoseek::IntegrationDivergedError & e) {
    CHECK_FALSE(e.partial_trajectory().samples.empty());
    CHECK(e.partial_trajectory().front().t == 0.0);
  }

  ManifoldDescriptor interval = ManifoldDescriptor::euclidean(1);
  interval.name = "interval";
  interval.chart_domain = geoseek::ChartDomain::box(vec1(-1.0), vec1(1.0));
  const SpaceBinding bounded{ChartBinding{interval}};
  const geoseek::FieldFn drift = [](const State &, double) { return vec1(1.0); };
  try {
    geoseek::integrate(drift, State{ChartPoint{vec1(0.5)}}, chart_cfg(0.1, 2.0), bounded,
                       no_monitor());
    FAIL("expected chart exit");
  } catch (const geoseek::IntegrationChartExitError & e) {
    CHECK_FALSE(e.partial_trajectory().samples.empty());
  }
}

TEST_CASE("method and binding must agree")
{
  const SpaceBinding r1{ChartBinding{ManifoldDescriptor::euclidean(1)}};
  const SpaceBinding so3{GroupBinding{GroupTag::SO3}};
  const geoseek::FieldFn zero1 = [](const State &, double) {
    return Eigen::VectorXd::Zero(1);
  };
  const geoseek::FieldFn zero3 = [](const State &, double) {
    return Eigen::VectorXd::Zero(3);
  };
  CHECK_THROWS_AS(
    geoseek::integrate(zero1, State{ChartPoint{vec1(0.0)}},
                       group_cfg(Method::LieEuler, 0.1, 1.0), r1, no_monitor()),
    geoseek::ArgumentError);
  CHECK_THROWS_AS(
    geoseek::integrate(zero3, State{GroupElement::identity(GroupTag::SO3)},
                       chart_cfg(0.1, 1.0), so3, no_monitor()),
    geoseek::ArgumentError);

  IntegratorConfig bad = chart_cfg(0.0, 1.0);
  CHECK_THROWS_AS(bad.validate(), geoseek::ArgumentError);
  bad = chart_cfg(2.0, 1.0);
  CHECK_THROWS_AS(bad.validate(), geoseek::ArgumentError);
  bad = chart_cfg(0.1, 1.0, 0);
  CHECK_THROWS_AS(bad.validate(), geoseek::ArgumentError);
}

TEST_CASE("S1 coordinates wrap after each step")
{
  const SpaceBinding s1{ChartBinding{ManifoldDescriptor::circle()}};
  const geoseek::FieldFn drift = [](const State &, double) { return vec1(1.0); };
  const auto traj = geoseek::integrate(
    drift, State{ChartPoint{vec1(6.0)}}, chart_cfg(0.1, 1.0), s1, no_monitor());
  // 6.0 + 1.0 would leave [0, 2*pi); the wrapped angle stays inside.
  const double theta = std::get<ChartPoint>(traj.back().state).coords(0);
  CHECK(theta >= 0.0);
  CHECK(theta < 2.0 * M_PI);
  CHECK(theta == doctest::Approx(7.0 - 2.0 * M_PI).epsilon(1e-12));
}
