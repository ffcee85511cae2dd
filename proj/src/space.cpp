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

#include "geoseek/space.hpp"

#include <cmath>

namespace geoseek
{

bool is_chart(const SpaceBinding & binding)
{
  return std::holds_alternative<ChartBinding>(binding);
}

int space_dim(const SpaceBinding & binding)
{
  if (const auto * chart = std::get_if<ChartBinding>(&binding)) {
    return chart->manifold.dim;
  }
  return group_algebra_dim(std::get<GroupBinding>(binding).tag);
}

std::string space_name(const SpaceBinding & binding)
{
  if (const auto * chart = std::get_if<ChartBinding>(&binding)) {
    return chart->manifold.name;
  }
  return group_name(std::get<GroupBinding>(binding).tag);
}

double space_distance(const SpaceBinding & binding, const State & a, const State & b)
{
  if (const auto * chart = std::get_if<ChartBinding>(&binding)) {
    return riemannian_distance(
      chart->manifold, std::get<ChartPoint>(a), std::get<ChartPoint>(b));
  }
  return group_distance(std::get<GroupElement>(a), std::get<GroupElement>(b));
}

bool state_matches(const SpaceBinding & binding, const State & state)
{
  if (const auto * chart = std::get_if<ChartBinding>(&binding)) {
    const auto * point = std::get_if<ChartPoint>(&state);
    return point != nullptr && point->coords.size() == chart->manifold.dim;
  }
  const auto * g = std::get_if<GroupElement>(&state);
  return g != nullptr && g->tag == std::get<GroupBinding>(binding).tag;
}

double space_injectivity_radius(const SpaceBinding & binding)
{
  if (const auto * chart = std::get_if<ChartBinding>(&binding)) {
    return chart->manifold.injectivity_radius;
  }
  return M_PI;
}

AmplitudeReport validate_dither_amplitude(
  const SpaceBinding & binding, const Eigen::VectorXd & amplitudes)
{
  if (const auto * chart = std::get_if<ChartBinding>(&binding)) {
    return geoseek::validate_dither_amplitude(chart->manifold, amplitudes);
  }
  const int n = group_algebra_dim(std::get<GroupBinding>(binding).tag);
  if (amplitudes.size() != n) {
    throw ArgumentError("amplitude vector does not match the group algebra dimension");
  }
  AmplitudeReport report;
  report.bound = amplitudes.norm();
  report.radius = space_injectivity_radius(binding);
  report.pass = report.bound < report.radius;
  return report;
}

}  // namespace geoseek
