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

#ifndef GEOSEEK_ES_LAW_HPP_
#define GEOSEEK_ES_LAW_HPP_

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "geoseek/frequency.hpp"
#include "geoseek/space.hpp"

namespace geoseek
{

/// Dither parameters: amplitudes a_i, exact rational frequency multipliers
/// and the base frequency. The dither component i at time t is
/// a_i * sin(base_frequency * multiplier_i * t).
struct DitherSpec
{
  Eigen::VectorXd amplitudes;
  std::vector<Rational> multipliers;
  double base_frequency = 1.0;

  int dim() const { return static_cast<int>(multipliers.size()); }

  /// Amplitudes positive, multiplier count matching, frequency conditions
  /// satisfied, base frequency positive. Throws ArgumentError listing every
  /// violated frequency condition.
  void validate() const;

  /// Least period of the dither family in the time variable t.
  double period() const;
};

/// Black-box cost evaluation J >= 0, with an optional registered target
/// (the minimizer, used for distance monitoring only).
struct CostOracle
{
  std::function<double(const State &)> eval;
  std::optional<State> target;

  /// Evaluates and enforces the nonnegativity contract.
  double operator()(const State & state) const;
};

/// Wraps an oracle with a call counter. Single-threaded use only; never
/// share one instrumented oracle across concurrent runs.
CostOracle counting_oracle(const CostOracle & inner, std::shared_ptr<long long> counter);

/// The time-varying extremum seeking vector field: dither spec, cost oracle
/// and the space it is bound to. The gain is fixed to -1 (minimization).
struct ESField
{
  static constexpr double kGain = -1.0;

  DitherSpec spec;
  CostOracle cost;
  SpaceBinding binding;

  ESField(DitherSpec spec, CostOracle cost, SpaceBinding binding);

  /// Dither frequency of component i in the time variable t.
  double omega(int i) const;
};

/// Tangent coefficients of the dither at time t: (a_i sin(omega_i t))_i.
Eigen::VectorXd dither_vector(double t, const DitherSpec & spec);

/// The dither-perturbed state: exp_x(dither) on charts, g * exp(dither) on
/// groups.
State dithered_point(
  const State & state, double t, const DitherSpec & spec, const SpaceBinding & binding);

/// Value of a tangent field: coefficients on the coordinate/algebra basis,
/// plus the left-translated matrix when bound to a group.
struct FieldValue
{
  Eigen::VectorXd coeffs;
  std::optional<Eigen::MatrixXd> group_field;
};

/// One evaluation of the extremum seeking field. Makes exactly one cost
/// oracle call.
FieldValue es_field_eval(const State & state, double t, const ESField & field);

/// Coefficient-only evaluation, used by the integrator hot path. Also makes
/// exactly one cost oracle call.
Eigen::VectorXd es_field_coeffs(const State & state, double t, const ESField & field);

}  // namespace geoseek

#endif  // GEOSEEK_ES_LAW_HPP_
