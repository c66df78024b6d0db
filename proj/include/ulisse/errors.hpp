/*
 * Copyright 2026 The ULISSE Authors
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

#ifndef ULISSE_ERRORS_HPP
#define ULISSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ulisse
{
/// Root of every error thrown by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error
{
 public:
  using Error::Error;
};

/// Malformed file header or structure.
class FormatError : public Error
{
 public:
  using Error::Error;
};

/// Non-finite values or other content problems in otherwise well-formed input.
class DataError : public Error
{
 public:
  using Error::Error;
};

class IoError : public Error
{
 public:
  using Error::Error;
};

class DegenerateDataError : public Error
{
 public:
  using Error::Error;
};

class QueryLengthError : public Error
{
 public:
  using Error::Error;
};

/// Query options incompatible with the index (measure, normalization).
class ConfigError : public Error
{
 public:
  using Error::Error;
};

/// A bound was requested for an envelope that represents no subsequence of the query length.
class DomainError : public Error
{
 public:
  using Error::Error;
};

class VersionError : public Error
{
 public:
  using Error::Error;
};

/// The dataset referenced by an index file is missing or has changed.
class FingerprintError : public Error
{
 public:
  using Error::Error;
};

}  // namespace ulisse

#endif  // ULISSE_ERRORS_HPP
