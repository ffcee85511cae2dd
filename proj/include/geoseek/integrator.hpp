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

#ifndef GEOSEEK_INTEGRATOR_HPP_
#define GEOSEEK_INTEGRATOR_HPP_

#include <functional>
#include <string>
#include <vector>

#include "geoseek/es_law.hpp"
#include "geoseek/space.hpp"

namespace geoseek
{

enum class Method { LieEuler, RKMK4, ChartRK4 };

std::string method_name(Method method);
Method method_from_name(const std::string & name);

struct IntegratorConfig
{
  double step = 1e-3;
  Method method = Method::ChartRK4;
  double horizon = 1.0;  // final time t_f
  double t0 = 0.0;
  int sample_stride = 1;
  bool project_each_step = true;

  void validate() const;
};

struct TrajectorySample
{
  double t = 0.0;
  State state;
  double cost = 0.0;
  double dist_to_target = 0.0;
};

/// Time-stamped samples of one integration run. Sample times are computed
/// as t0 + k * step, never by repeated addition.
struct Trajectory
{
  std::vector<TrajectorySample> samples;
  IntegratorConfig config;
  std::string field_description;
  /// Max group-membership defect over the recorded samples (0 on charts).
  double max_membership_defect = 0.0;

  const TrajectorySample & front() const { return samples.front(); }
  const TrajectorySample & back() const { return samples.back(); }
};

/// Integration blew up: the state went non-finite or the group-membership
/// defect passed the divergence threshold.
class IntegrationDivergedError : public Error
{
public:
  IntegrationDivergedError(const std::string & what, Trajectory partial)
  : Error(what), partial_(std::move(partial))
  {
  }

  const Trajectory & partial_trajectory() const { return partial_; }

private:
  Trajectory partial_;
};

/// A chart-bound integration left the chart domain.
class IntegrationChartExitError : public Error
{
public:
  IntegrationChartExitError(const std::string & what, Trajectory partial)
  : Error(what), partial_(std::move(partial))
  {
  }

  const Trajectory & partial_trajectory() const { return partial_; }

private:
  Trajectory partial_;
};

/// A time-varying tangent field in basis coefficients. On group bindings the
/// coefficients are the body-frame algebra coordinates (the left-invariant
/// field value at g is g times the coefficient matrix).
using FieldFn = std::function<Eigen::VectorXd(const State &, double)>;

/// Integrates the field from x0 over [t0, horizon] with the configured
/// method, recording every sample_stride-th step plus the final time. The
/// monitor oracle supplies the recorded cost and distance-to-target (NaN
/// when absent).
Trajectory integrate(
  const FieldFn & field, const State & x0, const IntegratorConfig & cfg,
  const SpaceBinding & binding, const CostOracle & monitor,
  const std::string & description = "");

/// Integrates the extremum seeking closed loop of `field`.
Trajectory integrate_es(const ESField & field, const State & x0, const IntegratorConfig & cfg);

/// Coefficients of the scaled gradient field -(a_i^2/2) D_i J at a state,
/// with the directional derivatives taken by central differences along the
/// coordinate/algebra directions.
Eigen::VectorXd gradient_coeffs(
  const CostOracle & cost, const State & state, const Eigen::VectorXd & amplitudes,
  const SpaceBinding & binding);

/// Integrates the scaled gradient system of the cost.
Trajectory integrate_gradient(
  const CostOracle & cost, const State & x0, const Eigen::VectorXd & amplitudes,
  const IntegratorConfig & cfg, const SpaceBinding & binding);

/// Integrates the averaged extremum seeking system, with the average taken
/// by composite Simpson over one dither period per field evaluation.
Trajectory integrate_averaged(
  const ESField & field, const State & x0, const IntegratorConfig & cfg,
  int quadrature_subintervals = 512);

}  // namespace geoseek

#endif  // GEOSEEK_INTEGRATOR_HPP_
