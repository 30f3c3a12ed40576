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

#include "datum/single_dc.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "datum/errors.hpp"

namespace datum {
namespace {

std::vector<std::size_t> nonempty_categories(const CategoryProfile& profile) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    if (profile.counts[i] > 0) out.push_back(i);
  }
  return out;
}

void check_problem(const SingleDcProblem& problem) {
  const std::size_t L = problem.num_levels();
  if (problem.oper.size() != L || problem.categories.num_levels() != L) {
    throw DimensionMismatch("single-DC problem needs one cost, fee and category count per level");
  }
}

bool all_binary(const std::vector<Rational>& values) {
  return std::all_of(values.begin(), values.end(), [](const Rational& v) { return is_binary(v); });
}

}  // namespace

std::size_t CategoryProfile::num_clients() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

CategoryProfile categorize(const ProviderSubproblem& sub) {
  if (!sub.exec_level_independent) {
    throw LevelDependentExecCost("provider '" + sub.provider_id +
                                 "': the single-DC solver needs level-independent execution costs");
  }
  CategoryProfile profile;
  profile.counts.assign(sub.num_levels(), 0);
  for (const std::size_t level : sub.min_level) ++profile.counts[level];
  return profile;
}

SingleDcProblem single_dc_problem(const ProviderSubproblem& sub) {
  if (sub.num_data_centers() != 1) {
    throw DimensionMismatch("provider '" + sub.provider_id + "': single-DC solver needs exactly one data center, got " +
                            std::to_string(sub.num_data_centers()));
  }
  SingleDcProblem problem;
  problem.categories = categorize(sub);
  problem.oper = sub.oper.front();
  problem.fees = sub.fees;
  return problem;
}

std::size_t breakpoint(const std::vector<Rational>& y, std::size_t i) {
  Rational sum;
  for (std::size_t m = i; m < y.size(); ++m) {
    sum += y[m];
    if (sum >= 1) return m;
  }
  throw NoBreakpoint("openings from level " + std::to_string(i + 1) + " upward sum to less than one");
}

std::vector<std::size_t> breakpoints(const std::vector<Rational>& y) {
  if (y.empty() || y.back() != 1) throw NoBreakpoint("the top level is not fully open");
  std::vector<std::size_t> out;
  out.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out.push_back(breakpoint(y, i));
  return out;
}

std::vector<Rational> reconstruct_assignment(const std::vector<Rational>& y, std::size_t i,
                                             std::size_t m) {
  std::vector<Rational> chi(y.size());
  Rational below;
  for (std::size_t l = i; l < m; ++l) {
    chi[l] = y[l];
    below += y[l];
  }
  chi[m] = 1 - below;
  return chi;
}

lp::LinearProgram relaxation_program(const SingleDcProblem& problem) {
  check_problem(problem);
  const std::size_t L = problem.num_levels();
  const auto cats = nonempty_categories(problem.categories);
  std::size_t n = L;
  for (const std::size_t i : cats) n += L - i;

  lp::LinearProgram program;
  program.objective.assign(n, Rational(0));
  program.upper_bounds.assign(n, std::nullopt);
  for (std::size_t l = 0; l < L; ++l) {
    program.objective[l] = problem.oper[l];
    program.upper_bounds[l] = Rational(1);
  }
  std::size_t column = L;
  for (const std::size_t i : cats) {
    const Rational size(static_cast<unsigned long>(problem.categories.counts[i]));
    std::vector<Rational> total(n);
    for (std::size_t l = i; l < L; ++l, ++column) {
      program.objective[column] = size * problem.fees[l];
      std::vector<Rational> link(n);
      link[column] = 1;
      link[l] = -1;
      program.add_constraint(std::move(link), lp::Relation::kLessEqual, 0);
      total[column] = 1;
    }
    program.add_constraint(std::move(total), lp::Relation::kEqual, 1);
  }
  return program;
}

ReducedProgram reduced_program(const SingleDcProblem& problem, const std::vector<std::size_t>& breaks) {
  check_problem(problem);
  const std::size_t L = problem.num_levels();
  if (breaks.size() != L) throw DimensionMismatch("one breakpoint per level is required");

  ReducedProgram out;
  auto& program = out.program;
  program.objective = problem.oper;
  program.upper_bounds.assign(L, Rational(1));
  for (const std::size_t i : nonempty_categories(problem.categories)) {
    const std::size_t m = breaks[i];
    if (m < i || m >= L) throw DimensionMismatch("breakpoint outside [i, L]");
    const Rational size(static_cast<unsigned long>(problem.categories.counts[i]));
    out.constant += size * problem.fees[m];
    std::vector<Rational> below(L);
    for (std::size_t k = i; k < m; ++k) {
      program.objective[k] += size * (problem.fees[k] - problem.fees[m]);
      below[k] = 1;
    }
    std::vector<Rational> through = below;
    through[m] = 1;
    if (m > i) program.add_constraint(std::move(below), lp::Relation::kLessEqual, 1);
    program.add_constraint(std::move(through), lp::Relation::kGreaterEqual, 1);
  }
  return out;
}

std::optional<SingleDcPlan> plan_from_support(const SingleDcProblem& problem,
                                              const std::vector<bool>& open) {
  check_problem(problem);
  const std::size_t L = problem.num_levels();
  SingleDcPlan plan;
  plan.open.assign(L, false);
  plan.category_choice.assign(L, std::nullopt);
  for (const std::size_t i : nonempty_categories(problem.categories)) {
    std::size_t l = i;
    while (l < L && !open[l]) ++l;
    if (l == L) return std::nullopt;
    plan.category_choice[i] = l;
    plan.open[l] = true;
    plan.objective += Rational(static_cast<unsigned long>(problem.categories.counts[i])) * problem.fees[l];
  }
  for (std::size_t l = 0; l < L; ++l) {
    if (plan.open[l]) plan.objective += problem.oper[l];
  }
  return plan;
}

SingleDcPlan solve_single_dc(const SingleDcProblem& problem, const lp::SolveOptions& options) {
  check_problem(problem);
  const std::size_t L = problem.num_levels();
  const auto cats = nonempty_categories(problem.categories);
  if (cats.empty()) {
    SingleDcPlan plan;
    plan.open.assign(L, false);
    plan.category_choice.assign(L, std::nullopt);
    return plan;
  }

  const auto relaxed = lp::solve(relaxation_program(problem), options);
  if (relaxed.status != lp::Status::kOptimal) {
    throw InternalNonBinary(std::string("single-DC relaxation is ") + lp::to_string(relaxed.status));
  }
  std::vector<Rational> y(relaxed.values.begin(), relaxed.values.begin() + static_cast<std::ptrdiff_t>(L));

  SolvePath path = SolvePath::kRelaxationBinary;
  if (!all_binary(relaxed.values)) {
    std::vector<std::size_t> breaks(L, L - 1);
    for (const std::size_t i : cats) breaks[i] = breakpoint(y, i);
    const auto reduced = reduced_program(problem, breaks);
    const auto vertex = lp::solve(reduced.program, options);
    if (vertex.status != lp::Status::kOptimal || !all_binary(vertex.values)) {
      throw InternalNonBinary("reduced single-DC program returned a fractional vertex");
    }
    y = vertex.values;
    path = SolvePath::kReducedProgram;
  }

  std::vector<bool> open(L);
  for (std::size_t l = 0; l < L; ++l) open[l] = y[l] == 1;
  auto plan = plan_from_support(problem, open);
  if (!plan) throw InternalNonBinary("binary vertex leaves a category without an open level");
  plan->path = path;
  return *plan;
}

SingleDcPlan solve_single_dc(const ProviderSubproblem& sub) {
  return solve_single_dc(single_dc_problem(sub));
}

SingleDcPlan solve_single_dc_bulk(const SingleDcProblem& problem, const std::vector<Rational>& bulk_fees) {
  check_problem(problem);
  const std::size_t L = problem.num_levels();
  if (bulk_fees.size() != L) throw DimensionMismatch("one bulk fee per level is required");
  SingleDcPlan plan;
  plan.open.assign(L, false);
  plan.category_choice.assign(L, std::nullopt);
  plan.path = SolvePath::kBulk;
  const auto cats = nonempty_categories(problem.categories);
  if (cats.empty()) return plan;

  std::size_t best = L - 1;
  Rational best_cost = problem.oper[best] + bulk_fees[best];
  for (std::size_t l = L - 1; l-- > cats.back();) {
    Rational cost = problem.oper[l] + bulk_fees[l];
    if (cost < best_cost) {
      best = l;
      best_cost = std::move(cost);
    }
  }
  plan.open[best] = true;
  for (const std::size_t i : cats) plan.category_choice[i] = best;
  plan.objective = best_cost;
  return plan;
}

SingleDcPlan solve_single_dc_bulk(const ProviderSubproblem& sub) {
  if (!sub.bulk_fees) throw MissingBulkFees("provider '" + sub.provider_id + "' has no bulk fees");
  return solve_single_dc_bulk(single_dc_problem(sub), *sub.bulk_fees);
}

SubproblemPlan to_subproblem_plan(const ProviderSubproblem& sub, const SingleDcPlan& plan,
                                  std::size_t data_center) {
  SubproblemPlan out = SubproblemPlan::empty_for(sub);
  for (std::size_t l = 0; l < sub.num_levels(); ++l) {
    out.placed[data_center][l] = plan.open[l];
    out.purchased[l] = plan.open[l];
  }
  for (std::size_t k = 0; k < sub.num_clients(); ++k) {
    out.serve[k] = {data_center, *plan.category_choice[sub.min_level[k]]};
  }
  return out;
}

}  // namespace datum
