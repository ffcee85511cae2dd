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

#include "geoseek/es_law.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace geoseek
{

void DitherSpec::validate() const
{
  if (amplitudes.size() != dim()) {
    throw ArgumentError("dither spec has mismatched amplitude and multiplier counts");
  }
  if (dim() == 0) {
    throw ArgumentError("dither spec is empty");
  }
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    if (!(amplitudes(i) > 0.0)) {
      std::ostringstream os;
      os << "dither amplitude " << i + 1 << " is not positive";
      throw ArgumentError(os.str());
    }
  }
  if (!(base_frequency > 0.0)) {
    throw ArgumentError("dither base frequency is not positive");
  }
  const auto violations = validate_frequencies(multipliers);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "dither frequency conditions violated:";
    for (const auto & v : violations) {
      os << " " << v.describe() << ";";
    }
    throw ArgumentError(os.str());
  }
}

double DitherSpec::period() const
{
  return common_period(multipliers).value / base_frequency;
}

double CostOracle::operator()(const State & state) const
{
  const double value = eval(state);
  if (!(value >= 0.0)) {
    throw OracleContractError("cost oracle returned a negative or non-finite value");
  }
  return value;
}

CostOracle counting_oracle(const CostOracle & inner, std::shared_ptr<long long> counter)
{
  CostOracle out;
  out.target = inner.target;
  out.eval = [inner, counter = std::move(counter)](const State & state) {
    ++*counter;
    return inner.eval(state);
  };
  return out;
}

ESField::ESField(DitherSpec spec_in, CostOracle cost_in, SpaceBinding binding_in)
: spec(std::move(spec_in)), cost(std::move(cost_in)), binding(std::move(binding_in))
{
  spec.validate();
  if (spec.dim() != space_dim(binding)) {
    std::ostringstream os;
    os << "dither spec has " << spec.dim() << " components but " << space_name(binding)
       << " has dimension " << space_dim(binding);
    throw ArgumentError(os.str());
  }
}

double ESField::omega(int i) const
{
  return spec.base_frequency * rational_to_double(spec.multipliers[static_cast<size_t>(i)]);
}

Eigen::VectorXd dither_vector(double t, const DitherSpec & spec)
{
  Eigen::VectorXd out(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) {
    const double omega_i =
      spec.base_frequency * rational_to_double(spec.multipliers[static_cast<size_t>(i)]);
    out(i) = spec.amplitudes(i) * std::sin(omega_i * t);
  }
  return out;
}

namespace
{

State perturb_along(
  const State & state, const Eigen::VectorXd & tangent, const SpaceBinding & binding)
{
  if (const auto * chart = std::get_if<ChartBinding>(&binding)) {
    return exp_map(chart->manifold, std::get<ChartPoint>(state), tangent, 1.0);
  }
  const auto tag = std::get<GroupBinding>(binding).tag;
  const GroupElement & g = std::get<GroupElement>(state);
  const GroupElement step = group_exp(algebra_from_coords(tangent, tag), tag);
  return GroupElement{tag, g.mat * step.mat};
}

}  // namespace

State dithered_point(
  const State & state, double t, const DitherSpec & spec, const SpaceBinding & binding)
{
  return perturb_along(state, dither_vector(t, spec), binding);
}

Eigen::VectorXd es_field_coeffs(const State & state, double t, const ESField & field)
{
  if (!state_matches(field.binding, state)) {
    throw ArgumentError("state does not match the field's space binding");
  }
  // The field coefficients are gain * a_i sin(omega_i t) * J, which is the
  // dither vector rescaled by the measured cost.
  const Eigen::VectorXd d = dither_vector(t, field.spec);
  const double cost_value = field.cost(perturb_along(state, d, field.binding));
  return (ESField::kGain * cost_value) * d;
}

FieldValue es_field_eval(const State & state, double t, const ESField & field)
{
  FieldValue out;
  out.coeffs = es_field_coeffs(state, t, field);
  if (const auto * group = std::get_if<GroupBinding>(&field.binding)) {
    out.group_field = left_translate(
      std::get<GroupElement>(state), algebra_from_coords(out.coeffs, group->tag));
  }
  return out;
}

}  // namespace geoseek
