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

#ifndef GEOSEEK_AVERAGING_HPP_
#define GEOSEEK_AVERAGING_HPP_

#include <optional>
#include <vector>

#include "geoseek/integrator.hpp"

namespace geoseek
{

/// Time average of the extremum seeking field over one dither period,
/// by composite Simpson with the given (even, >= 8) subinterval count.
/// The averaging window is [window_start, window_start + period]; by
/// periodicity the window start must not matter.
FieldValue averaged_field(
  const ESField & field, const State & state, int subintervals = 512,
  double window_start = 0.0);

/// The scaled gradient field -(a_i^2/2) D_i J as basis coefficients.
Eigen::VectorXd gradient_field(
  const CostOracle & cost, const State & state, const Eigen::VectorXd & amplitudes,
  const SpaceBinding & binding);

struct ProbeResidual
{
  State probe;
  double residual = 0.0;  // |averaged - gradient|_g at the probe
};

struct ResidualReport
{
  double amplitude_scale = 0.0;  // max dither amplitude used
  std::vector<ProbeResidual> per_probe;
  double max_residual = 0.0;
};

/// Residual between the averaged field and the scaled gradient field at
/// each probe. Both fields live in the unscaled time variable, so there is
/// no dependence on the base frequency.
ResidualReport averaging_residual(
  const ESField & field, const std::vector<State> & probes, int subintervals = 512);

struct SlopeFit
{
  double slope = 0.0;
  std::vector<double> log_x;
  std::vector<double> log_y;
};

/// Log-log slope of the averaging residual against the dither amplitude
/// scale. Each entry of `scales` becomes the largest dither amplitude, with
/// the relative amplitude pattern of `base` preserved. Throws
/// DegenerateFitError when the residual sits at the rounding floor.
SlopeFit residual_slope(
  const ESField & base, const State & probe, const std::vector<double> & scales,
  int subintervals = 512);

/// Log-log slope of the Taylor remainder of the cost along the geodesic in
/// the given basis direction: expected about order + 1. Orders 1 and 2 are
/// supported; the directional derivatives come from central differences.
SlopeFit taylor_remainder(
  const CostOracle & cost, const State & state, const Eigen::VectorXd & direction,
  const std::vector<double> & etas, int order, const SpaceBinding & binding);

struct DescentReport
{
  double initial_cost = 0.0;
  double max_positive_jump = 0.0;
  /// max positive jump <= 1e-8 * (1 + initial cost)
  bool descent_verified = false;
};

/// Checks a trajectory's recorded costs for monotone descent.
DescentReport lyapunov_monitor(const Trajectory & trajectory);

/// Z(t, x) = t * averaged(x) - integral_0^t field(x, s) ds, the zero-mean
/// corrector of the averaging analysis, as basis coefficients.
Eigen::VectorXd corrector_displacement(
  const ESField & field, const State & state, double t, int subintervals = 512);

struct CorrectorResult
{
  State es_endpoint;   // the extremum seeking flow at t_eval
  State corrected;     // the corrector flow applied to that endpoint
  double distance = 0.0;
};

/// Integrates the extremum seeking flow to t_eval, then flows the frozen-t
/// corrector field Z(t_eval, .) for unit pseudo-time from the endpoint.
/// Chart manifolds only.
CorrectorResult corrector_flow(
  const ESField & field, const State & x0, double t_eval, const IntegratorConfig & cfg,
  int subintervals = 512);

struct ClosenessSample
{
  double t = 0.0;
  double es_to_averaged = 0.0;
  double es_to_target = 0.0;
  double averaged_to_target = 0.0;
  double gradient_to_target = 0.0;
};

struct ClosenessReport
{
  std::vector<ClosenessSample> samples;
  double enter_radius = 0.0;
  std::optional<double> t_enter;          // empty means "never" within the horizon
  double sup_es_to_averaged = 0.0;
  double sup_es_to_target_after_enter = 0.0;  // NaN when t_enter is empty
  double sup_averaged_to_target = 0.0;

  Trajectory es;
  Trajectory averaged;
  Trajectory gradient;
};

/// Runs the full, averaged and gradient systems from the same initial state
/// and reports the distance legs over time plus the first time after which
/// the extremum seeking trajectory stays within enter_radius of the target.
/// The averaged and gradient systems are integrated on the sample grid
/// (step = cfg.step * cfg.sample_stride).
ClosenessReport closeness_report(
  const ESField & field, const State & x0, const IntegratorConfig & cfg,
  double enter_radius, int subintervals = 512);

}  // namespace geoseek

#endif  // GEOSEEK_AVERAGING_HPP_
