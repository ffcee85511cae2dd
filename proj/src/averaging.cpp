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

#include "geoseek/averaging.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace geoseek
{

namespace
{

constexpr double kResidualFloor = 1e-12;
constexpr double kRemainderFloor = 1e-13;
// Central-difference steps for the first and second directional derivatives
// in the Taylor remainder. Dyadic steps near 1e-5 and 1e-4 keep the
// differences exact for costs whose values are exact at these offsets; the
// second difference needs the larger step to stay above the cancellation
// floor.
constexpr double kTaylorFdStep1 = 0x1p-17;  // ~7.6e-6
constexpr double kTaylorFdStep2 = 0x1p-13;  // ~1.2e-4
// Pseudo-time steps for the unit-time corrector flow.
constexpr int kCorrectorPseudoSteps = 20;

double nan()
{
  return std::numeric_limits<double>::quiet_NaN();
}

void require_even_subintervals(int subintervals)
{
  if (subintervals < 8 || subintervals % 2 != 0) {
    throw ArgumentError("quadrature subinterval count must be even and at least 8");
  }
}

// Composite Simpson of a vector-valued function over [a, b].
Eigen::VectorXd simpson(
  const std::function<Eigen::VectorXd(double)> & f, double a, double b, int subintervals)
{
  const double h = (b - a) / subintervals;
  Eigen::VectorXd acc = f(a) + f(b);
  for (int k = 1; k < subintervals; ++k) {
    const double weight = (k % 2 == 1) ? 4.0 : 2.0;
    acc += weight * f(a + k * h);
  }
  return (h / 3.0) * acc;
}

double tangent_norm(const SpaceBinding & binding, const State & at, const Eigen::VectorXd & v)
{
  if (const auto * chart = std::get_if<ChartBinding>(&binding)) {
    return metric_norm(
      chart->manifold, TangentCoords{std::get<ChartPoint>(at), v});
  }
  // Left-invariant metric with an orthonormal algebra basis: the norm of the
  // field value at g equals the Euclidean norm of the coefficients.
  return v.norm();
}

State move_along(
  const SpaceBinding & binding, const State & state, const Eigen::VectorXd & direction,
  double eta)
{
  if (const auto * chart = std::get_if<ChartBinding>(&binding)) {
    return State{exp_map(chart->manifold, std::get<ChartPoint>(state), direction, eta)};
  }
  const auto tag = std::get<GroupBinding>(binding).tag;
  const auto & g = std::get<GroupElement>(state);
  const GroupElement step = group_exp(algebra_from_coords(eta * direction, tag), tag);
  return State{GroupElement{tag, g.mat * step.mat}};
}

double fit_slope(const std::vector<double> & xs, const std::vector<double> & ys)
{
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  if (den == 0.0) {
    throw ArgumentError("slope fit needs at least two distinct abscissae");
  }
  return num / den;
}

double residual_at(const ESField & field, const State & probe, int subintervals)
{
  const Eigen::VectorXd averaged = averaged_field(field, probe, subintervals).coeffs;
  const Eigen::VectorXd gradient =
    gradient_field(field.cost, probe, field.spec.amplitudes, field.binding);
  return tangent_norm(field.binding, probe, averaged - gradient);
}

}  // namespace

FieldValue averaged_field(
  const ESField & field, const State & state, int subintervals, double window_start)
{
  require_even_subintervals(subintervals);
  const double period = field.spec.period();
  const auto integrand = [&](double s) { return es_field_coeffs(state, s, field); };

  FieldValue out;
  out.coeffs =
    simpson(integrand, window_start, window_start + period, subintervals) / period;
  if (const auto * group = std::get_if<GroupBinding>(&field.binding)) {
    out.group_field = left_translate(
      std::get<GroupElement>(state), algebra_from_coords(out.coeffs, group->tag));
  }
  return out;
}

Eigen::VectorXd gradient_field(
  const CostOracle & cost, const State & state, const Eigen::VectorXd & amplitudes,
  const SpaceBinding & binding)
{
  return gradient_coeffs(cost, state, amplitudes, binding);
}

ResidualReport averaging_residual(
  const ESField & field, const std::vector<State> & probes, int subintervals)
{
  ResidualReport report;
  report.amplitude_scale = field.spec.amplitudes.maxCoeff();
  for (const auto & probe : probes) {
    const double r = residual_at(field, probe, subintervals);
    report.per_probe.push_back(ProbeResidual{probe, r});
    report.max_residual = std::max(report.max_residual, r);
  }
  return report;
}

SlopeFit residual_slope(
  const ESField & base, const State & probe, const std::vector<double> & scales,
  int subintervals)
{
  if (scales.size() < 3) {
    throw ArgumentError("residual_slope needs at least three amplitude scales");
  }
  const double base_max = base.spec.amplitudes.maxCoeff();

  SlopeFit fit;
  for (double scale : scales) {
    if (!(scale > 0.0)) {
      throw ArgumentError("amplitude scales must be positive");
    }
    DitherSpec spec = base.spec;
    spec.amplitudes = (scale / base_max) * base.spec.amplitudes;
    const auto report = validate_dither_amplitude(base.binding, spec.amplitudes);
    if (!report.pass) {
      std::ostringstream os;
      os << "amplitude scale " << scale << " fails the dither safety bound (" << report.bound
         << " >= " << report.radius << ")";
      throw ArgumentError(os.str());
    }
    const ESField scaled(spec, base.cost, base.binding);
    const double r = residual_at(scaled, probe, subintervals);
    if (r < kResidualFloor) {
      std::ostringstream os;
      os << "averaging residual " << r << " at scale " << scale
         << " sits at the rounding floor; the cost is too symmetric at this probe";
      throw DegenerateFitError(os.str());
    }
    fit.log_x.push_back(std::log(scale));
    fit.log_y.push_back(std::log(r));
  }
  fit.slope = fit_slope(fit.log_x, fit.log_y);
  return fit;
}

SlopeFit taylor_remainder(
  const CostOracle & cost, const State & state, const Eigen::VectorXd & direction,
  const std::vector<double> & etas, int order, const SpaceBinding & binding)
{
  if (order != 1 && order != 2) {
    throw ArgumentError("taylor_remainder supports orders 1 and 2");
  }
  if (etas.size() < 3) {
    throw ArgumentError("taylor_remainder needs at least three eta values");
  }

  const double j0 = cost(state);
  const double h1 = kTaylorFdStep1;
  const double d1 =
    (cost(move_along(binding, state, direction, h1)) -
     cost(move_along(binding, state, -direction, h1))) /
    (2.0 * h1);
  double d2 = 0.0;
  if (order >= 2) {
    const double h2 = kTaylorFdStep2;
    d2 = (cost(move_along(binding, state, direction, h2)) - 2.0 * j0 +
          cost(move_along(binding, state, -direction, h2))) /
         (h2 * h2);
  }

  SlopeFit fit;
  for (double eta : etas) {
    if (!(eta > 0.0)) {
      throw ArgumentError("eta values must be positive");
    }
    double expansion = j0 + eta * d1;
    if (order >= 2) {
      expansion += 0.5 * eta * eta * d2;
    }
    const double remainder =
      std::abs(cost(move_along(binding, state, direction, eta)) - expansion);
    if (remainder < kRemainderFloor) {
      std::ostringstream os;
      os << "Taylor remainder " << remainder << " at eta " << eta
         << " sits at the rounding floor; the expansion is exact here";
      throw DegenerateFitError(os.str());
    }
    fit.log_x.push_back(std::log(eta));
    fit.log_y.push_back(std::log(remainder));
  }
  fit.slope = fit_slope(fit.log_x, fit.log_y);
  return fit;
}

DescentReport lyapunov_monitor(const Trajectory & trajectory)
{
  if (trajectory.samples.empty()) {
    throw ArgumentError("lyapunov_monitor needs a non-empty trajectory");
  }
  DescentReport report;
  report.initial_cost = trajectory.front().cost;
  for (std::size_t i = 1; i < trajectory.samples.size(); ++i) {
    const double jump = trajectory.samples[i].cost - trajectory.samples[i - 1].cost;
    report.max_positive_jump = std::max(report.max_positive_jump, jump);
  }
  report.max_positive_jump = std::max(report.max_positive_jump, 0.0);
  report.descent_verified =
    report.max_positive_jump <= 1e-8 * (1.0 + report.initial_cost);
  return report;
}

Eigen::VectorXd corrector_displacement(
  const ESField & field, const State & state, double t, int subintervals)
{
  require_even_subintervals(subintervals);
  const Eigen::VectorXd averaged = averaged_field(field, state, subintervals).coeffs;
  if (t == 0.0) {
    return Eigen::VectorXd::Zero(averaged.size());
  }
  const auto integrand = [&](double s) { return es_field_coeffs(state, s, field); };
  return t * averaged - simpson(integrand, 0.0, t, subintervals);
}

CorrectorResult corrector_flow(
  const ESField & field, const State & x0, double t_eval, const IntegratorConfig & cfg,
  int subintervals)
{
  const auto * chart = std::get_if<ChartBinding>(&field.binding);
  if (chart == nullptr) {
    throw UnsupportedOperationError("corrector_flow is restricted to chart manifolds");
  }
  if (t_eval < cfg.t0) {
    throw ArgumentError("corrector_flow needs t_eval >= t0");
  }

  CorrectorResult result;
  if (t_eval == cfg.t0) {
    result.es_endpoint = x0;
    result.corrected = x0;
    result.distance = 0.0;
    return result;
  }

  IntegratorConfig es_cfg = cfg;
  es_cfg.horizon = t_eval;
  es_cfg.sample_stride = std::numeric_limits<int>::max();
  const Trajectory es = integrate_es(field, x0, es_cfg);
  result.es_endpoint = es.back().state;

  // Unit pseudo-time flow of the frozen-t corrector field.
  const auto z_field = [&](const Eigen::VectorXd & coords) {
    return corrector_displacement(field, State{ChartPoint{coords}}, t_eval, subintervals);
  };
  const double h = 1.0 / kCorrectorPseudoSteps;
  Eigen::VectorXd z = std::get<ChartPoint>(result.es_endpoint).coords;
  for (int s = 0; s < kCorrectorPseudoSteps; ++s) {
    const Eigen::VectorXd k1 = z_field(z);
    const Eigen::VectorXd k2 = z_field(z + 0.5 * h * k1);
    const Eigen::VectorXd k3 = z_field(z + 0.5 * h * k2);
    const Eigen::VectorXd k4 = z_field(z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (chart->manifold.wrap) {
    z = chart->manifold.wrap(z);
  }
  result.corrected = State{ChartPoint{z}};
  result.distance = space_distance(field.binding, result.es_endpoint, result.corrected);
  return result;
}

ClosenessReport closeness_report(
  const ESField & field, const State & x0, const IntegratorConfig & cfg,
  double enter_radius, int subintervals)
{
  if (!field.cost.target.has_value()) {
    throw ArgumentError("closeness_report needs a target registered on the cost oracle");
  }
  if (!(enter_radius > 0.0)) {
    throw ArgumentError("closeness_report needs a positive enter radius");
  }

  ClosenessReport report;
  report.enter_radius = enter_radius;
  report.es = integrate_es(field, x0, cfg);

  // The averaged and gradient systems are smooth and slow; integrate them on
  // the sample grid so the sample indices line up with the full run.
  IntegratorConfig coarse = cfg;
  coarse.step = cfg.step * cfg.sample_stride;
  coarse.sample_stride = 1;
  report.averaged = integrate_averaged(field, x0, coarse, subintervals);
  report.gradient =
    integrate_gradient(field.cost, x0, field.spec.amplitudes, coarse, field.binding);

  const std::size_t count = std::min(
    {report.es.samples.size(), report.averaged.samples.size(),
     report.gradient.samples.size()});
  for (std::size_t i = 0; i < count; ++i) {
    const auto & es_sample = report.es.samples[i];
    const auto & avg_sample = report.averaged.samples[i];
    const auto & grad_sample = report.gradient.samples[i];
    if (std::abs(es_sample.t - avg_sample.t) > 1e-9 * std::max(1.0, std::abs(es_sample.t))) {
      throw NumericalError("closeness_report sample grids failed to line up");
    }
    ClosenessSample s;
    s.t = es_sample.t;
    s.es_to_averaged = space_distance(field.binding, es_sample.state, avg_sample.state);
    s.es_to_target = es_sample.dist_to_target;
    s.averaged_to_target = avg_sample.dist_to_target;
    s.gradient_to_target = grad_sample.dist_to_target;
    report.samples.push_back(s);
    report.sup_es_to_averaged = std::max(report.sup_es_to_averaged, s.es_to_averaged);
    report.sup_averaged_to_target =
      std::max(report.sup_averaged_to_target, s.averaged_to_target);
  }

  // First sample time after which the full trajectory stays inside the radius.
  std::optional<double> t_enter;
  for (auto it = report.samples.rbegin(); it != report.samples.rend(); ++it) {
    if (it->es_to_target < enter_radius) {
      t_enter = it->t;
    } else {
      break;
    }
  }
  report.t_enter = t_enter;
  report.sup_es_to_target_after_enter = nan();
  if (t_enter.has_value()) {
    double sup = 0.0;
    for (const auto & s : report.samples) {
      if (s.t >= *t_enter) {
        sup = std::max(sup, s.es_to_target);
      }
    }
    report.sup_es_to_target_after_enter = sup;
  }
  return report;
}

}  // namespace geoseek
