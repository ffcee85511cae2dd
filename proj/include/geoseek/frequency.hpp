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

#ifndef GEOSEEK_FREQUENCY_HPP_
#define GEOSEEK_FREQUENCY_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "geoseek/errors.hpp"

namespace geoseek
{

/// Exact rational frequency multiplier. The dither frequency conditions are
/// equality constraints, so they are checked in exact arithmetic, never in
/// floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses decimal text ("2", "4.1", "-0.25") or a fraction ("41/10") into an
/// exact rational.
Rational parse_rational(const std::string & text);

std::string rational_to_string(const Rational & r);
double rational_to_double(const Rational & r);

/// One violated dither-frequency condition.
struct FrequencyViolation
{
  enum class Kind {
    Equal,      // multiplier_i == multiplier_j
    DoubleOf,   // 2 * multiplier_i == multiplier_j, j != i
    SumOf,      // multiplier_i == multiplier_j + multiplier_k, i, j, k distinct
  };

  Kind kind = Kind::Equal;
  int i = 0;
  int j = 0;
  int k = -1;  // only for SumOf

  std::string describe() const;  // 1-based indices, e.g. "2*w[1] == w[2]"
};

/// Checks every pair and distinct triple of multipliers against the dither
/// frequency conditions; returns every violation found (empty means ok).
std::vector<FrequencyViolation> validate_frequencies(
  const std::vector<Rational> & multipliers);

/// Least common period of the family sin(multiplier_i * tau), as an exact
/// rational multiple of 2*pi plus its double value.
struct CommonPeriod
{
  Rational multiple_of_two_pi;
  double value = 0.0;
};

CommonPeriod common_period(const std::vector<Rational> & multipliers);

}  // namespace geoseek

#endif  // GEOSEEK_FREQUENCY_HPP_
