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

#ifndef GEOSEEK_ERRORS_HPP_
#define GEOSEEK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace geoseek
{

/// Base class for all geoseek exceptions.
class Error : public std::runtime_error
{
public:
  explicit Error(const std::string & what) : std::runtime_error(what) {}
};

/// Malformed call arguments (dimension mismatch, bad enum, ...).
class ArgumentError : public Error
{
public:
  using Error::Error;
};

/// A chart point lies outside the manifold's chart domain.
class DomainError : public Error
{
public:
  using Error::Error;
};

/// Requested an operation the bound space does not support.
class UnsupportedOperationError : public Error
{
public:
  using Error::Error;
};

/// A numerical routine failed to converge or produced a singular system.
class NumericalError : public Error
{
public:
  using Error::Error;
};

/// Exact integer arithmetic left the representable range.
class ArithmeticError : public Error
{
public:
  using Error::Error;
};

/// A cost oracle broke its contract (e.g. returned a negative value).
class OracleContractError : public Error
{
public:
  using Error::Error;
};

/// A least-squares slope fit was requested on data at the rounding floor.
class DegenerateFitError : public Error
{
public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace geoseek

#endif  // GEOSEEK_ERRORS_HPP_
