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

#ifndef DATUM_SINGLE_DC_HPP
#define DATUM_SINGLE_DC_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "datum/lp.hpp"
#include "datum/model.hpp"
#include "datum/rational.hpp"

namespace datum {

/// counts[i] = number of clients whose minimum level index is i.
struct CategoryProfile {
  std::vector<std::size_t> counts;

  std::size_t num_levels() const { return counts.size(); }
  std::size_t num_clients() const;
};

/// One data center, level-independent execution cost: the execution term is a
/// constant and drops out, leaving opening costs, fees and category sizes.
struct SingleDcProblem {
  std::vector<Rational> oper;  // beta(l)
  std::vector<Rational> fees;  // f(l), strictly increasing
  CategoryProfile categories;

  std::size_t num_levels() const { return fees.size(); }
};

enum class SolvePath {
  kNoClients,
  kRelaxationBinary,  // the first relaxation already had a binary vertex
  kReducedProgram,    // fractional vertex, resolved through breakpoints
  kBulk,
};

struct SingleDcPlan {
  std::vector<bool> open;
  /// Level chosen by each category; nullopt for empty categories.
  std::vector<std::optional<std::size_t>> category_choice;
  /// sum beta(l) y(l) + sum_i S_i f(choice(i)) for per-query plans,
  /// sum (beta(l) + bulk_fee(l)) y(l) for bulk plans.
  Rational objective;
  SolvePath path = SolvePath::kNoClients;
};

/// Throws LevelDependentExecCost unless the subproblem declares level-independent
/// execution costs.
CategoryProfile categorize(const ProviderSubproblem& sub);

/// Builds the single-DC problem of a one-data-center subproblem.
SingleDcProblem single_dc_problem(const ProviderSubproblem& sub);

/// Exact optimum with a binary support.
SingleDcPlan solve_single_dc(const SingleDcProblem& problem, const lp::SolveOptions& options = {});
/// Requires exactly one data center (DimensionMismatch otherwise).
SingleDcPlan solve_single_dc(const ProviderSubproblem& sub);

/// Smallest m >= i with y(i) + ... + y(m) >= 1. Throws NoBreakpoint if none.
std::size_t breakpoint(const std::vector<Rational>& y, std::size_t i);
/// Breakpoints of every category. Throws NoBreakpoint unless y(L) = 1.
std::vector<std::size_t> breakpoints(const std::vector<Rational>& y);

/// chi_i as a function of y for breakpoint m: y(l) for i <= l < m, the
/// remainder at m, zero elsewhere (including below i).
std::vector<Rational> reconstruct_assignment(const std::vector<Rational>& y, std::size_t i,
                                             std::size_t m);

/// LP relaxation over y(0..L-1) followed by chi_i(l), l >= i, for each
/// nonempty category i in increasing order.
lp::LinearProgram relaxation_program(const SingleDcProblem& problem);

struct ReducedProgram {
  lp::LinearProgram program;  // over y only
  Rational constant;          // objective = program objective + constant
};

/// The program in y alone once chi is fixed by the breakpoints.
/// `breaks[i]` is read only for nonempty categories.
ReducedProgram reduced_program(const SingleDcProblem& problem, const std::vector<std::size_t>& breaks);

/// Cheapest open level >= i for each nonempty category, with unused levels closed.
/// Returns nullopt if some nonempty category has no open level above it.
std::optional<SingleDcPlan> plan_from_support(const SingleDcProblem& problem,
                                              const std::vector<bool>& open);

/// Bulk contracting: one purchase serves everyone, so a single level at or
/// above the highest demanded category is opened, the one minimizing
/// beta(l) + bulk_fee(l) (ties toward the higher level). With the top
/// category nonempty this is always level L.
SingleDcPlan solve_single_dc_bulk(const SingleDcProblem& problem, const std::vector<Rational>& bulk_fees);
/// Throws MissingBulkFees, LevelDependentExecCost, DimensionMismatch.
SingleDcPlan solve_single_dc_bulk(const ProviderSubproblem& sub);

/// Expresses a single-DC plan on subproblem indices, at `data_center`.
SubproblemPlan to_subproblem_plan(const ProviderSubproblem& sub, const SingleDcPlan& plan,
                                  std::size_t data_center = 0);

}  // namespace datum

#endif  // DATUM_SINGLE_DC_HPP
