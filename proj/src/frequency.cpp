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

#include "geoseek/frequency.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace geoseek
{

namespace
{

BigInt parse_integer(const std::string & digits, const std::string & original)
{
  if (digits.empty()) {
    throw ArgumentError("cannot parse rational from '" + original + "'");
  }
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ArgumentError("cannot parse rational from '" + original + "'");
    }
  }
  return BigInt(digits);
}

Rational parse_decimal(const std::string & text, const std::string & original)
{
  const auto dot = text.find('.');
  const std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
  const std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) {
    throw ArgumentError("cannot parse rational from '" + original + "'");
  }
  BigInt numerator = whole.empty() ? BigInt(0) : parse_integer(whole, original);
  BigInt denominator = 1;
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ArgumentError("cannot parse rational from '" + original + "'");
    }
    numerator = numerator * 10 + (c - '0');
    denominator *= 10;
  }
  return Rational(numerator, denominator);
}

}  // namespace

Rational parse_rational(const std::string & text)
{
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s.push_back(c);
    }
  }
  if (s.empty()) {
    throw ArgumentError("cannot parse rational from empty text");
  }
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.erase(s.begin());
  }

  Rational value;
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const BigInt num = parse_integer(s.substr(0, slash), text);
    const BigInt den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) {
      throw ArgumentError("zero denominator in '" + text + "'");
    }
    value = Rational(num, den);
  } else {
    value = parse_decimal(s, text);
  }
  return negative ? -value : value;
}

std::string rational_to_string(const Rational & r)
{
  std::ostringstream os;
  os << r;
  return os.str();
}

double rational_to_double(const Rational & r)
{
  const double v = r.convert_to<double>();
  if (!std::isfinite(v)) {
    throw ArithmeticError("rational does not fit in a double: " + rational_to_string(r));
  }
  return v;
}

std::string FrequencyViolation::describe() const
{
  std::ostringstream os;
  switch (kind) {
    case Kind::Equal:
      os << "w[" << i + 1 << "] == w[" << j + 1 << "]";
      break;
    case Kind::DoubleOf:
      os << "2*w[" << i + 1 << "] == w[" << j + 1 << "]";
      break;
    case Kind::SumOf:
      os << "w[" << i + 1 << "] == w[" << j + 1 << "] + w[" << k + 1 << "]";
      break;
  }
  return os.str();
}

std::vector<FrequencyViolation> validate_frequencies(
  const std::vector<Rational> & multipliers)
{
  const int n = static_cast<int>(multipliers.size());
  for (int i = 0; i < n; ++i) {
    if (multipliers[i] <= 0) {
      std::ostringstream os;
      os << "frequency multiplier " << i + 1 << " is not positive: "
         << rational_to_string(multipliers[i]);
      throw ArgumentError(os.str());
    }
  }

  std::vector<FrequencyViolation> violations;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (multipliers[i] == multipliers[j]) {
        violations.push_back({FrequencyViolation::Kind::Equal, i, j, -1});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i && 2 * multipliers[i] == multipliers[j]) {
        violations.push_back({FrequencyViolation::Kind::DoubleOf, i, j, -1});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (i == j || i == k) {
          continue;
        }
        if (multipliers[i] == multipliers[j] + multipliers[k]) {
          violations.push_back({FrequencyViolation::Kind::SumOf, i, j, k});
        }
      }
    }
  }
  return violations;
}

CommonPeriod common_period(const std::vector<Rational> & multipliers)
{
  if (multipliers.empty()) {
    throw ArgumentError("common_period needs at least one multiplier");
  }
  for (const auto & m : multipliers) {
    if (m <= 0) {
      throw ArgumentError("common_period needs positive multipliers");
    }
  }

  // With multiplier_i = p_i / q_i in lowest terms, the least T with
  // T * multiplier_i in 2*pi*Z for all i is 2*pi * L / gcd_i(p_i * L / q_i),
  // L = lcm_i(q_i).
  BigInt l = 1;
  for (const auto & m : multipliers) {
    l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(m));
  }
  BigInt g = 0;
  for (const auto & m : multipliers) {
    const BigInt scaled =
      boost::multiprecision::numerator(m) * (l / boost::multiprecision::denominator(m));
    g = boost::multiprecision::gcd(g, scaled);
  }

  CommonPeriod period;
  period.multiple_of_two_pi = Rational(l, g);
  period.value = 2.0 * M_PI * rational_to_double(period.multiple_of_two_pi);
  if (!std::isfinite(period.value) || period.value <= 0.0) {
    throw ArithmeticError("common period does not fit in a double");
  }
  return period;
}

}  // namespace geoseek
