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

#ifndef GEOSEEK_SPACE_HPP_
#define GEOSEEK_SPACE_HPP_

#include <string>
#include <variant>

#include "geoseek/lie_group.hpp"
#include "geoseek/manifold.hpp"

namespace geoseek
{

/// A point of the optimization space: chart coordinates or a group element.
using State = std::variant<ChartPoint, GroupElement>;

/// Which space a field or trajectory lives on.
struct ChartBinding
{
  ManifoldDescriptor manifold;
};

struct GroupBinding
{
  GroupTag tag = GroupTag::SO3;
};

using SpaceBinding = std::variant<ChartBinding, GroupBinding>;

bool is_chart(const SpaceBinding & binding);

/// Tangent/algebra dimension of the bound space.
int space_dim(const SpaceBinding & binding);

std::string space_name(const SpaceBinding & binding);

/// Distance between two states: the chart manifold's closed form, or the
/// group distance.
double space_distance(const SpaceBinding & binding, const State & a, const State & b);

/// True when the state matches the binding (chart point on a chart binding
/// with the right dimension, group element with the right tag).
bool state_matches(const SpaceBinding & binding, const State & state);

/// Injectivity radius used for dither-amplitude safety: the chart value, or
/// pi for the matrix groups (the rotation block saturates first).
double space_injectivity_radius(const SpaceBinding & binding);

/// Chart overload of the amplitude check plus a group version that uses the
/// identity metric on the algebra (the basis is orthonormal in the metric
/// normalization used throughout).
AmplitudeReport validate_dither_amplitude(
  const SpaceBinding & binding, const Eigen::VectorXd & amplitudes);

}  // namespace geoseek

#endif  // GEOSEEK_SPACE_HPP_
