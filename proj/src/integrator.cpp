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

#include "geoseek/integrator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "geoseek/averaging.hpp"

namespace geoseek
{

namespace
{

// Distinguishes genuine blow-up from numerical drift of the group invariants.
constexpr double kDivergenceDefect = 1e-3;
// Central-difference step for directional derivatives of the cost.
constexpr double kGradientFdStep = 1e-5;

double nan()
{
  return std::numeric_limits<double>::quiet_NaN();
}

Eigen::VectorXd bracket_coords(
  const Eigen::VectorXd & u, const Eigen::VectorXd & k, GroupTag tag)
{
  const Eigen::MatrixXd mu = algebra_from_coords(u, tag);
  const Eigen::MatrixXd mk = algebra_from_coords(k, tag);
  return coords_from_algebra(mu * mk - mk * mu, tag);
}

// For the right-multiplication update g = g0 * exp(u(t)) of gdot = g * xi,
// the algebra coordinate satisfies udot = dexpinv_{-u}(xi); truncated to the
// commutator order needed for a 4th-order Runge-Kutta-Munthe-Kaas update.
Eigen::VectorXd dexpinv(const Eigen::VectorXd & u, const Eigen::VectorXd & k, GroupTag tag)
{
  const Eigen::VectorXd uk = bracket_coords(u, k, tag);
  return k + 0.5 * uk + (1.0 / 12.0) * bracket_coords(u, uk, tag);
}

struct StepGrid
{
  long long n_steps = 0;
  double step = 0.0;
  double last_step = 0.0;  // may be shorter so the grid lands on the horizon

  double time_at(long long k, double t0, double horizon) const
  {
    if (k >= n_steps) {
      return horizon;
    }
    return t0 + static_cast<double>(k) * step;
  }
};

StepGrid make_grid(const IntegratorConfig & cfg)
{
  const double duration = cfg.horizon - cfg.t0;
  StepGrid grid;
  grid.step = cfg.step;
  grid.n_steps = std::max<long long>(1, std::llround(duration / cfg.step));
  const double residue = duration - static_cast<double>(grid.n_steps) * cfg.step;
  if (std::abs(residue) <= 1e-9 * std::max(1.0, std::abs(cfg.horizon))) {
    grid.last_step = grid.step;
  } else {
    grid.n_steps = static_cast<long long>(std::ceil(duration / cfg.step));
    grid.last_step = duration - static_cast<double>(grid.n_steps - 1) * cfg.step;
  }
  return grid;
}

class Recorder
{
public:
  Recorder(
    const IntegratorConfig & cfg, const SpaceBinding & binding, const CostOracle & monitor,
    const std::string & description)
  : binding_(binding), monitor_(monitor)
  {
    trajectory_.config = cfg;
    trajectory_.field_description = description;
  }

  void record(double t, const State & state)
  {
    TrajectorySample sample;
    sample.t = t;
    sample.state = state;
    sample.cost = monitor_.eval ? monitor_.eval(state) : nan();
    sample.dist_to_target = nan();
    if (monitor_.target.has_value()) {
      sample.dist_to_target = space_distance(binding_, state, *monitor_.target);
    }
    if (const auto * g = std::get_if<GroupElement>(&state)) {
      trajectory_.max_membership_defect =
        std::max(trajectory_.max_membership_defect, check_group_membership(*g).max_defect());
    }
    trajectory_.samples.push_back(std::move(sample));
  }

  Trajectory take() { return std::move(trajectory_); }

private:
  SpaceBinding binding_;
  CostOracle monitor_;
  Trajectory trajectory_;
};

ChartPoint chart_rk4_step(
  const FieldFn & field, const ChartPoint & x, double t, double h,
  const ManifoldDescriptor & manifold)
{
  const auto eval = [&field](const Eigen::VectorXd & coords, double at) {
    return field(State{ChartPoint{coords}}, at);
  };
  const Eigen::VectorXd k1 = eval(x.coords, t);
  const Eigen::VectorXd k2 = eval(x.coords + 0.5 * h * k1, t + 0.5 * h);
  const Eigen::VectorXd k3 = eval(x.coords + 0.5 * h * k2, t + 0.5 * h);
  const Eigen::VectorXd k4 = eval(x.coords + h * k3, t + h);
  Eigen::VectorXd next = x.coords + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (manifold.wrap) {
    next = manifold.wrap(next);
  }
  return ChartPoint{std::move(next)};
}

GroupElement lie_euler_step(const FieldFn & field, const GroupElement & g, double t, double h)
{
  const Eigen::VectorXd xi = field(State{g}, t);
  const GroupElement inc = group_exp(algebra_from_coords(h * xi, g.tag), g.tag);
  return GroupElement{g.tag, g.mat * inc.mat};
}

GroupElement rkmk4_step(const FieldFn & field, const GroupElement & g, double t, double h)
{
  const GroupTag tag = g.tag;
  const auto eval = [&](const Eigen::VectorXd & u, double at) {
    const GroupElement moved{
      tag, g.mat * group_exp(algebra_from_coords(u, tag), tag).mat};
    return dexpinv(u, field(State{moved}, at), tag);
  };

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(group_algebra_dim(tag));
  const Eigen::VectorXd k1 = eval(zero, t);
  const Eigen::VectorXd k2 = eval(0.5 * h * k1, t + 0.5 * h);
  const Eigen::VectorXd k3 = eval(0.5 * h * k2, t + 0.5 * h);
  const Eigen::VectorXd k4 = eval(h * k3, t + h);
  const Eigen::VectorXd v = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return GroupElement{tag, g.mat * group_exp(algebra_from_coords(v, tag), tag).mat};
}

}  // namespace

std::string method_name(Method method)
{
  switch (method) {
    case Method::LieEuler:
      return "lie_euler";
    case Method::RKMK4:
      return "rkmk4";
    case Method::ChartRK4:
      return "chart_rk4";
  }
  return "unknown";
}

Method method_from_name(const std::string & name)
{
  if (name == "lie_euler") {
    return Method::LieEuler;
  }
  if (name == "rkmk4") {
    return Method::RKMK4;
  }
  if (name == "chart_rk4") {
    return Method::ChartRK4;
  }
  throw ArgumentError("unknown integration method '" + name + "'");
}

void IntegratorConfig::validate() const
{
  if (!(step > 0.0)) {
    throw ArgumentError("integrator step must be positive");
  }
  if (!(horizon > t0)) {
    throw ArgumentError("integrator horizon must exceed the start time");
  }
  if (!(step < horizon - t0)) {
    throw ArgumentError("integrator step must be smaller than the horizon");
  }
  if (sample_stride < 1) {
    throw ArgumentError("sample stride must be at least 1");
  }
}

Trajectory integrate(
  const FieldFn & field, const State & x0, const IntegratorConfig & cfg,
  const SpaceBinding & binding, const CostOracle & monitor, const std::string & description)
{
  cfg.validate();
  if (!state_matches(binding, x0)) {
    throw ArgumentError("initial state does not match the space binding");
  }
  const bool chart = is_chart(binding);
  if (chart && cfg.method != Method::ChartRK4) {
    throw ArgumentError("chart-bound integration requires the chart_rk4 method");
  }
  if (!chart && cfg.method == Method::ChartRK4) {
    throw ArgumentError("group-bound integration requires lie_euler or rkmk4");
  }

  const StepGrid grid = make_grid(cfg);
  Recorder recorder(cfg, binding, monitor, description);
  recorder.record(cfg.t0, x0);

  State state = x0;
  for (long long k = 0; k < grid.n_steps; ++k) {
    const double t = grid.time_at(k, cfg.t0, cfg.horizon);
    const double h = (k == grid.n_steps - 1) ? grid.last_step : grid.step;
    const double t_next = grid.time_at(k + 1, cfg.t0, cfg.horizon);

    if (chart) {
      const auto & manifold = std::get<ChartBinding>(binding).manifold;
      ChartPoint next =
        chart_rk4_step(field, std::get<ChartPoint>(state), t, h, manifold);
      if (!next.coords.allFinite()) {
        throw IntegrationDivergedError(
          "integration diverged (non-finite chart coordinates)", recorder.take());
      }
      if (!manifold.chart_domain.contains(next.coords)) {
        throw IntegrationChartExitError(
          "integration left the chart domain of " + manifold.name, recorder.take());
      }
      state = State{std::move(next)};
    } else {
      const GroupElement & g = std::get<GroupElement>(state);
      GroupElement next = cfg.method == Method::LieEuler ? lie_euler_step(field, g, t, h)
                                                         : rkmk4_step(field, g, t, h);
      if (!next.mat.allFinite()) {
        throw IntegrationDivergedError(
          "integration diverged (non-finite group element)", recorder.take());
      }
      const double defect = check_group_membership(next).max_defect();
      if (defect > kDivergenceDefect) {
        std::ostringstream os;
        os << "integration diverged (group-membership defect " << defect << ")";
        throw IntegrationDivergedError(os.str(), recorder.take());
      }
      if (cfg.project_each_step) {
        next = project_to_group(next.mat, next.tag);
      }
      state = State{std::move(next)};
    }

    if ((k + 1) % cfg.sample_stride == 0 || k + 1 == grid.n_steps) {
      recorder.record(t_next, state);
    }
  }
  return recorder.take();
}

Trajectory integrate_es(const ESField & field, const State & x0, const IntegratorConfig & cfg)
{
  const FieldFn fn = [&field](const State & state, double t) {
    return es_field_coeffs(state, t, field);
  };
  return integrate(
    fn, x0, cfg, field.binding, field.cost, "extremum seeking on " + space_name(field.binding));
}

Eigen::VectorXd gradient_coeffs(
  const CostOracle & cost, const State & state, const Eigen::VectorXd & amplitudes,
  const SpaceBinding & binding)
{
  const int n = space_dim(binding);
  if (amplitudes.size() != n) {
    throw ArgumentError("amplitude vector does not match the space dimension");
  }
  Eigen::VectorXd coeffs(n);
  const double h = kGradientFdStep;
  for (int i = 0; i < n; ++i) {
    double forward = 0.0;
    double backward = 0.0;
    if (const auto * chart = std::get_if<ChartBinding>(&binding)) {
      const auto & x = std::get<ChartPoint>(state);
      const Eigen::VectorXd dir = Eigen::VectorXd::Unit(n, i);
      forward = cost(State{exp_map(chart->manifold, x, dir, h)});
      backward = cost(State{exp_map(chart->manifold, x, -dir, h)});
    } else {
      const auto tag = std::get<GroupBinding>(binding).tag;
      const auto & g = std::get<GroupElement>(state);
      const Eigen::MatrixXd & basis = algebra_basis(tag)[static_cast<size_t>(i)];
      forward = cost(State{GroupElement{tag, g.mat * group_exp(h * basis, tag).mat}});
      backward = cost(State{GroupElement{tag, g.mat * group_exp(-h * basis, tag).mat}});
    }
    const double directional = (forward - backward) / (2.0 * h);
    coeffs(i) = -0.5 * amplitudes(i) * amplitudes(i) * directional;
  }
  return coeffs;
}

Trajectory integrate_gradient(
  const CostOracle & cost, const State & x0, const Eigen::VectorXd & amplitudes,
  const IntegratorConfig & cfg, const SpaceBinding & binding)
{
  const FieldFn fn = [&cost, &amplitudes, &binding](const State & state, double) {
    return gradient_coeffs(cost, state, amplitudes, binding);
  };
  return integrate(
    fn, x0, cfg, binding, cost, "scaled gradient system on " + space_name(binding));
}

Trajectory integrate_averaged(
  const ESField & field, const State & x0, const IntegratorConfig & cfg,
  int quadrature_subintervals)
{
  const FieldFn fn = [&field, quadrature_subintervals](const State & state, double) {
    return averaged_field(field, state, quadrature_subintervals).coeffs;
  };
  return integrate(
    fn, x0, cfg, field.binding, field.cost,
    "averaged extremum seeking on " + space_name(field.binding));
}

}  // namespace geoseek
