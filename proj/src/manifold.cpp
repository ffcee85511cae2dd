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

#include "geoseek/manifold.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>

namespace geoseek
{

namespace
{

constexpr double kTwoPi = 2.0 * M_PI;
// Relative coordinate step for the metric partials in the Christoffel formula.
constexpr double kMetricFdStep = 1e-5;
// Fixed-step geodesic integration: step = kGeodesicStepFraction * eta.
constexpr double kGeodesicStepFraction = 1e-3;

std::atomic<std::uint64_t> g_injectivity_warnings{0};
std::once_flag g_injectivity_note_once;

void warn_injectivity(double arc, double radius, const std::string & name)
{
  g_injectivity_warnings.fetch_add(1, std::memory_order_relaxed);
  std::call_once(g_injectivity_note_once, [&] {
    std::cerr << "geoseek: exp_map arc length " << arc << " reaches the injectivity radius "
              << radius << " on " << name << " (further occurrences are counted, not printed)\n";
  });
}

void check_dimensions(const ManifoldDescriptor & m, const Eigen::VectorXd & v, const char * what)
{
  if (v.size() != m.dim) {
    std::ostringstream os;
    os << what << " has dimension " << v.size() << ", manifold " << m.name << " has dimension "
       << m.dim;
    throw ArgumentError(os.str());
  }
}

void check_in_domain(const ManifoldDescriptor & m, const Eigen::VectorXd & coords)
{
  if (!m.chart_domain.contains(coords)) {
    std::ostringstream os;
    os << "point outside the chart domain of " << m.name;
    throw DomainError(os.str());
  }
}

Eigen::MatrixXd metric_matrix(const ManifoldDescriptor & m, const Eigen::VectorXd & coords)
{
  Eigen::MatrixXd g = m.metric_at(coords);
  if (g.rows() != m.dim || g.cols() != m.dim) {
    throw ArgumentError("metric evaluator returned a matrix of wrong size for " + m.name);
  }
  return g;
}

// Geodesic acceleration: gamma_dd_i = -sum_jk Gamma^i_jk gamma_d_j gamma_d_k.
Eigen::VectorXd geodesic_acceleration(
  const ManifoldDescriptor & m, const Eigen::VectorXd & pos, const Eigen::VectorXd & vel)
{
  const ChristoffelTensor gamma = christoffel(m, ChartPoint{pos});
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(m.dim);
  for (int i = 0; i < m.dim; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.dim; ++j) {
      for (int k = 0; k < m.dim; ++k) {
        s += gamma.at(i, j, k) * vel(j) * vel(k);
      }
    }
    acc(i) = -s;
  }
  return acc;
}

}  // namespace

ChartDomain ChartDomain::unbounded(int dim)
{
  ChartDomain d;
  d.lower = Eigen::VectorXd::Constant(dim, -std::numeric_limits<double>::infinity());
  d.upper = Eigen::VectorXd::Constant(dim, std::numeric_limits<double>::infinity());
  return d;
}

ChartDomain ChartDomain::box(const Eigen::VectorXd & lo, const Eigen::VectorXd & hi)
{
  if (lo.size() != hi.size()) {
    throw ArgumentError("chart domain bounds have mismatched dimensions");
  }
  return ChartDomain{lo, hi};
}

bool ChartDomain::contains(const Eigen::VectorXd & coords) const
{
  if (lower.size() == 0) {
    return true;
  }
  if (coords.size() != lower.size()) {
    return false;
  }
  for (Eigen::Index i = 0; i < coords.size(); ++i) {
    if (!(coords(i) >= lower(i) && coords(i) <= upper(i))) {
      return false;
    }
  }
  return true;
}

ManifoldDescriptor ManifoldDescriptor::euclidean(int n)
{
  if (n <= 0) {
    throw ArgumentError("euclidean manifold needs a positive dimension");
  }
  ManifoldDescriptor m;
  m.name = "R^" + std::to_string(n);
  m.dim = n;
  m.metric_at = [n](const Eigen::VectorXd &) { return Eigen::MatrixXd::Identity(n, n); };
  m.injectivity_radius = std::numeric_limits<double>::infinity();
  m.chart_domain = ChartDomain::unbounded(n);
  m.flat_chart = true;
  m.closed_form_distance = [](const Eigen::VectorXd & a, const Eigen::VectorXd & b) {
    return (a - b).norm();
  };
  m.metric_samples.push_back(Eigen::VectorXd::Zero(n));
  for (int i = 0; i < n; ++i) {
    m.metric_samples.push_back(Eigen::VectorXd::Unit(n, i));
  }
  return m;
}

ManifoldDescriptor ManifoldDescriptor::circle()
{
  ManifoldDescriptor m;
  m.name = "S^1";
  m.dim = 1;
  m.metric_at = [](const Eigen::VectorXd &) {
    return Eigen::MatrixXd::Identity(1, 1);
  };
  m.injectivity_radius = M_PI;
  // The angle chart covers the circle once coordinates are wrapped, so the
  // box is left unbounded and `wrap` canonicalizes into [0, 2*pi).
  m.chart_domain = ChartDomain::unbounded(1);
  m.flat_chart = true;
  m.wrap = [](const Eigen::VectorXd & coords) {
    Eigen::VectorXd out(1);
    double theta = std::fmod(coords(0), kTwoPi);
    if (theta < 0.0) {
      theta += kTwoPi;
    }
    out(0) = theta;
    return out;
  };
  m.closed_form_distance = [](const Eigen::VectorXd & a, const Eigen::VectorXd & b) {
    double delta = std::fmod(std::abs(a(0) - b(0)), kTwoPi);
    return std::min(delta, kTwoPi - delta);
  };
  for (double theta : {0.0, M_PI / 2.0, M_PI, 3.0 * M_PI / 2.0}) {
    m.metric_samples.push_back(Eigen::VectorXd::Constant(1, theta));
  }
  return m;
}

double metric_eval(
  const ManifoldDescriptor & m, const TangentCoords & u, const TangentCoords & v)
{
  check_dimensions(m, u.components, "tangent vector");
  check_dimensions(m, v.components, "tangent vector");
  if (u.base.coords != v.base.coords) {
    throw ArgumentError("metric_eval needs tangent vectors with a common base point");
  }
  check_in_domain(m, u.base.coords);
  const Eigen::MatrixXd g = metric_matrix(m, u.base.coords);
  return u.components.dot(g * v.components);
}

double metric_norm(const ManifoldDescriptor & m, const TangentCoords & v)
{
  return std::sqrt(std::max(0.0, metric_eval(m, v, v)));
}

ChristoffelTensor christoffel(const ManifoldDescriptor & m, const ChartPoint & x)
{
  check_dimensions(m, x.coords, "chart point");
  check_in_domain(m, x.coords);

  const int n = m.dim;
  // partials(k) holds d g / d x_k as a full matrix.
  std::vector<Eigen::MatrixXd> partials(n);
  for (int k = 0; k < n; ++k) {
    const double h = kMetricFdStep * std::max(1.0, std::abs(x.coords(k)));
    Eigen::VectorXd fwd = x.coords;
    Eigen::VectorXd bwd = x.coords;
    fwd(k) += h;
    bwd(k) -= h;
    partials[k] = (metric_matrix(m, fwd) - metric_matrix(m, bwd)) / (2.0 * h);
  }

  const Eigen::MatrixXd g = metric_matrix(m, x.coords);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) {
    throw NumericalError("singular metric matrix at a chart point of " + m.name);
  }
  const Eigen::MatrixXd ginv = lu.inverse();

  ChristoffelTensor gamma(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
          s += ginv(i, l) * (partials[k](j, l) + partials[j](k, l) - partials[l](j, k));
        }
        s *= 0.5;
        gamma.at(i, j, k) = s;
        gamma.at(i, k, j) = s;  // lower-index symmetry holds by construction
      }
    }
  }
  return gamma;
}

ChartPoint exp_map(
  const ManifoldDescriptor & m, const ChartPoint & x, const Eigen::VectorXd & velocity,
  double eta)
{
  check_dimensions(m, x.coords, "chart point");
  check_dimensions(m, velocity, "velocity");
  if (eta < 0.0) {
    throw ArgumentError("exp_map needs eta >= 0");
  }
  check_in_domain(m, x.coords);
  if (eta == 0.0) {
    return x;
  }

  const double speed = metric_norm(m, TangentCoords{x, velocity});
  if (speed * eta >= m.injectivity_radius) {
    warn_injectivity(speed * eta, m.injectivity_radius, m.name);
  }

  if (m.flat_chart) {
    // Constant metric: the geodesic is the straight coordinate line.
    ChartPoint out{x.coords + eta * velocity};
    if (!m.chart_domain.contains(out.coords)) {
      throw ChartExitError("geodesic left the chart domain of " + m.name, x);
    }
    return out;
  }

  const int steps = static_cast<int>(std::lround(1.0 / kGeodesicStepFraction));
  const double h = eta / steps;
  Eigen::VectorXd pos = x.coords;
  Eigen::VectorXd vel = velocity;
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXd k1p = vel;
    const Eigen::VectorXd k1v = geodesic_acceleration(m, pos, vel);
    const Eigen::VectorXd k2p = vel + 0.5 * h * k1v;
    const Eigen::VectorXd k2v = geodesic_acceleration(m, pos + 0.5 * h * k1p, k2p);
    const Eigen::VectorXd k3p = vel + 0.5 * h * k2v;
    const Eigen::VectorXd k3v = geodesic_acceleration(m, pos + 0.5 * h * k2p, k3p);
    const Eigen::VectorXd k4p = vel + h * k3v;
    const Eigen::VectorXd k4v = geodesic_acceleration(m, pos + h * k3p, k4p);

    const Eigen::VectorXd next_pos = pos + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    const Eigen::VectorXd next_vel = vel + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!next_pos.allFinite() || !next_vel.allFinite()) {
      throw NumericalError("geodesic integration produced a non-finite state on " + m.name);
    }
    if (!m.chart_domain.contains(next_pos)) {
      throw ChartExitError("geodesic left the chart domain of " + m.name, ChartPoint{pos});
    }
    pos = next_pos;
    vel = next_vel;
  }
  return ChartPoint{pos};
}

double riemannian_distance(
  const ManifoldDescriptor & m, const ChartPoint & x, const ChartPoint & y)
{
  check_dimensions(m, x.coords, "chart point");
  check_dimensions(m, y.coords, "chart point");
  check_in_domain(m, x.coords);
  check_in_domain(m, y.coords);
  if (!m.closed_form_distance) {
    throw UnsupportedOperationError(
      "no closed-form distance registered for " + m.name +
      " (generic geodesic boundary-value problems are not supported)");
  }
  return m.closed_form_distance(x.coords, y.coords);
}

AmplitudeReport validate_dither_amplitude(
  const ManifoldDescriptor & m, const Eigen::VectorXd & amplitudes)
{
  check_dimensions(m, amplitudes, "amplitude vector");

  // sup over sample points of |g_ij|, entrywise.
  Eigen::MatrixXd sup = Eigen::MatrixXd::Zero(m.dim, m.dim);
  if (m.metric_samples.empty()) {
    sup = metric_matrix(m, Eigen::VectorXd::Zero(m.dim)).cwiseAbs();
  } else {
    for (const auto & s : m.metric_samples) {
      sup = sup.cwiseMax(metric_matrix(m, s).cwiseAbs());
    }
  }

  double bound_sq = 0.0;
  for (int i = 0; i < m.dim; ++i) {
    for (int j = 0; j < m.dim; ++j) {
      bound_sq += std::abs(amplitudes(i)) * std::abs(amplitudes(j)) * sup(i, j);
    }
  }

  AmplitudeReport report;
  report.bound = std::sqrt(bound_sq);
  report.radius = m.injectivity_radius;
  report.pass = report.bound < report.radius;
  return report;
}

std::uint64_t injectivity_warning_count()
{
  return g_injectivity_warnings.load(std::memory_order_relaxed);
}

void reset_injectivity_warning_count()
{
  g_injectivity_warnings.store(0, std::memory_order_relaxed);
}

}  // namespace geoseek
