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

#ifndef DATUM_LP_HPP
#define DATUM_LP_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "datum/rational.hpp"

namespace datum::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

/// minimize objective . x  subject to constraints, 0 <= x <= upper (when set).
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  /// Empty, or one optional bound per variable.
  std::vector<std::optional<Rational>> upper_bounds;

  std::size_t num_variables() const { return objective.size(); }

  void add_constraint(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
    constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
  }
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  Status status = Status::kInfeasible;
  std::vector<Rational> values;
  Rational objective_value;
  /// True when the values are a basic feasible solution of the program.
  bool is_extreme_point = false;
  std::size_t pivots = 0;
};

struct SolveOptions {
  /// When set, every tableau is printed here before each pivot.
  std::ostream* trace = nullptr;
};

/// Exact two-phase primal simplex with Bland's rule. Returns an optimal
/// basic feasible solution, or reports infeasibility/unboundedness.
/// Throws DimensionMismatch when a row length differs from the objective's.
LpSolution solve(const LinearProgram& program, const SolveOptions& options = {});

/// Zero-tolerance feasibility check of `values` against every row and bound.
bool is_feasible(const LinearProgram& program, const std::vector<Rational>& values);

const char* to_string(Status status);

}  // namespace datum::lp

#endif  // DATUM_LP_HPP
