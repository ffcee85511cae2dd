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

#ifndef GEOSEEK_MANIFOLD_HPP_
#define GEOSEEK_MANIFOLD_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "geoseek/errors.hpp"

namespace geoseek
{

/// Box constraints on chart coordinates. Empty bounds mean the whole of R^n.
struct ChartDomain
{
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static ChartDomain unbounded(int dim);
  static ChartDomain box(const Eigen::VectorXd & lo, const Eigen::VectorXd & hi);

  bool contains(const Eigen::VectorXd & coords) const;
};

/// A point of the manifold expressed in chart coordinates.
struct ChartPoint
{
  Eigen::VectorXd coords;
};

/// Tangent vector as coefficients on the coordinate basis at a base point.
struct TangentCoords
{
  ChartPoint base;
  Eigen::VectorXd components;
};

/// Connection coefficients Gamma^i_{jk} at one chart point.
class ChristoffelTensor
{
public:
  explicit ChristoffelTensor(int dim)
  : dim_(dim), gamma_(static_cast<std::size_t>(dim) * dim * dim, 0.0)
  {
  }

  int dim() const { return dim_; }

  double & at(int i, int j, int k) { return gamma_[index(i, j, k)]; }
  double at(int i, int j, int k) const { return gamma_[index(i, j, k)]; }

private:
  std::size_t index(int i, int j, int k) const
  {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_;
  std::vector<double> gamma_;
};

using MetricFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd &)>;
using WrapFn = std::function<Eigen::VectorXd(const Eigen::VectorXd &)>;
using ChartDistanceFn =
  std::function<double(const Eigen::VectorXd &, const Eigen::VectorXd &)>;

/// A chart-based description of a Riemannian manifold: dimension, metric
/// evaluator, injectivity radius and (optionally) a closed-form distance,
/// a coordinate canonicalization (wrap) and sample points used for
/// metric-supremum estimates.
struct ManifoldDescriptor
{
  std::string name;
  int dim = 0;
  MetricFn metric_at;
  double injectivity_radius = 0.0;
  ChartDomain chart_domain;
  /// True when the metric is constant in the chart, so geodesics are
  /// straight coordinate lines and all Christoffel symbols vanish.
  bool flat_chart = false;
  WrapFn wrap;                        // optional
  ChartDistanceFn closed_form_distance;  // optional
  std::vector<Eigen::VectorXd> metric_samples;

  /// R^n with the Euclidean metric.
  static ManifoldDescriptor euclidean(int n);
  /// S^1 in the angle chart theta -> (sin theta, cos theta), constant metric
  /// g = 1, injectivity radius pi. Coordinates are canonicalized into
  /// [0, 2*pi) by `wrap`; the angular distance handles wraparound.
  static ManifoldDescriptor circle();
};

/// Thrown when a geodesic leaves the chart domain; carries the last point
/// that was still inside.
class ChartExitError : public Error
{
public:
  ChartExitError(const std::string & what, ChartPoint last_valid)
  : Error(what), last_valid_(std::move(last_valid))
  {
  }

  const ChartPoint & last_valid_point() const { return last_valid_; }

private:
  ChartPoint last_valid_;
};

/// Inner product g_x(u, v) of two tangent vectors with a common base point.
double metric_eval(
  const ManifoldDescriptor & m, const TangentCoords & u, const TangentCoords & v);

/// Riemannian norm of a tangent vector.
double metric_norm(const ManifoldDescriptor & m, const TangentCoords & v);

/// Gamma^i_{jk} = 1/2 sum_l g^{il} (g_{jl,k} + g_{kl,j} - g_{jk,l}) with the
/// metric partials taken by central finite differences.
ChristoffelTensor christoffel(const ManifoldDescriptor & m, const ChartPoint & x);

/// Point reached at parameter eta along the geodesic from x with initial
/// velocity v. Warns (does not fail) when eta * |v|_g reaches the
/// injectivity radius.
ChartPoint exp_map(
  const ManifoldDescriptor & m, const ChartPoint & x, const Eigen::VectorXd & velocity,
  double eta);

/// Distance via the manifold's registered closed form.
double riemannian_distance(
  const ManifoldDescriptor & m, const ChartPoint & x, const ChartPoint & y);

/// Result of the dither-amplitude safety check.
struct AmplitudeReport
{
  double bound = 0.0;   // upper bound on the worst-case dither norm
  double radius = 0.0;  // injectivity radius it is compared against
  bool pass = false;
};

/// Checks sqrt(sum_ij a_i a_j sup|g_ij|) < injectivity radius, with the
/// metric supremum taken over the descriptor's sample points.
AmplitudeReport validate_dither_amplitude(
  const ManifoldDescriptor & m, const Eigen::VectorXd & amplitudes);

/// Number of exp_map calls so far whose requested arc length reached the
/// injectivity radius. Monitoring only.
std::uint64_t injectivity_warning_count();
void reset_injectivity_warning_count();

}  // namespace geoseek

#endif  // GEOSEEK_MANIFOLD_HPP_
