// Copyright 2026 The Datum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DATUM_ERRORS_HPP
#define DATUM_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace datum {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON syntax, bad decimal strings, wrong shapes).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An instance failed validation; carries the full violation list.
class InvalidInstance : public Error {
 public:
  explicit InvalidInstance(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class UnsatisfiableDemand : public Error {
 public:
  using Error::Error;
};

class InfeasiblePlan : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The single data center path needs execution costs that do not vary by level.
class LevelDependentExecCost : public Error {
 public:
  using Error::Error;
};

/// Bulk geo placement needs both operation and execution costs level independent.
class LevelDependentCosts : public Error {
 public:
  using Error::Error;
};

/// Raised when the reduced interval program returns a fractional vertex.
/// That cannot happen for a correct implementation; it signals a bug.
class InternalNonBinary : public Error {
 public:
  using Error::Error;
};

class NoBreakpoint : public Error {
 public:
  using Error::Error;
};

class MissingBulkFees : public Error {
 public:
  using Error::Error;
};

class CatalogTooLarge : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search would exceed the configured enumeration budget.
class OversizeInstance : public Error {
 public:
  OversizeInstance(const std::string& what, std::uint64_t required_budget)
      : Error(what), required_budget_(required_budget) {}
  std::uint64_t required_budget() const noexcept { return required_budget_; }

 private:
  std::uint64_t required_budget_;
};

class InvalidRatioTargets : public Error {
 public:
  using Error::Error;
};

}  // namespace datum

#endif  // DATUM_ERRORS_HPP
