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

#include "datum/datum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "datum/errors.hpp"
#include "datum/single_dc.hpp"

namespace datum {
namespace {

void append_combinations(std::size_t n, std::size_t k, std::vector<std::size_t>& current,
                         std::size_t start, std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == k) {
    out.push_back(current);
    return;
  }
  for (std::size_t d = start; d + (k - current.size()) <= n; ++d) {
    current.push_back(d);
    append_combinations(n, k, current, d + 1, out);
    current.pop_back();
  }
}

// exp(-mu2 * gap), rounded to the decimal grid before entering exact arithmetic.
Rational decay_weight(const Rational& mu2, std::size_t gap) {
  if (gap == 0 || sgn(mu2) == 0) return 1;
  return from_double(std::exp(-to_double(mu2) * static_cast<double>(gap)));
}

SubproblemPlan solve_provider(const ProviderSubproblem& sub, const DatumConfig& config) {
  if (sub.num_clients() == 0) return SubproblemPlan::empty_for(sub);
  const auto catalog = build_subset_catalog(sub, config.max_replicas, config.catalog_ceiling);
  const auto tc = transformed_costs(catalog, sub, config.mu1, config.mu2);
  const auto s1 = datum_step1(sub, tc);
  return datum_step2(sub, catalog, s1).lower(sub, catalog);
}

SubproblemPlan solve_provider_bulk(const ProviderSubproblem& sub, const DatumConfig& config) {
  if (!sub.exec_level_independent || !sub.oper_level_independent()) {
    throw LevelDependentCosts("provider '" + sub.provider_id +
                              "': bulk placement needs level-independent operation and execution costs");
  }
  if (!sub.bulk_fees) throw MissingBulkFees("provider '" + sub.provider_id + "' has no bulk fees");
  if (sub.num_clients() == 0) return SubproblemPlan::empty_for(sub);
  const auto catalog = build_subset_catalog(sub, config.max_replicas, config.catalog_ceiling);
  const auto tc = transformed_costs(catalog, sub);

  // beta* is flat across levels, so only the bulk fee separates the candidates.
  SingleDcProblem problem{tc.beta_star, sub.fees, categorize(sub)};
  const auto bought = solve_single_dc_bulk(problem, *sub.bulk_fees);
  StepOneResult s1;
  s1.open = bought.open;
  s1.objective = bought.objective;
  for (const std::size_t level : sub.min_level) s1.client_level.push_back(*bought.category_choice[level]);
  return datum_step2(sub, catalog, s1).lower(sub, catalog);
}

}  // namespace

std::size_t catalog_size(std::size_t num_data_centers, std::size_t max_replicas) {
  std::size_t total = 0;
  std::size_t choose = 1;  // C(n, k)
  for (std::size_t k = 1; k <= std::min(max_replicas, num_data_centers); ++k) {
    choose = choose * (num_data_centers - k + 1) / k;
    total += choose;
  }
  return total;
}

SubsetCatalog build_subset_catalog(const ProviderSubproblem& sub, std::size_t max_replicas,
                                   std::size_t ceiling) {
  const std::size_t D = sub.num_data_centers();
  const std::size_t L = sub.num_levels();
  if (max_replicas == 0) throw std::invalid_argument("max_replicas must be positive");
  max_replicas = std::min(max_replicas, D);
  const std::size_t count = catalog_size(D, max_replicas);
  if (count > ceiling) {
    throw CatalogTooLarge(std::to_string(count) + " replica sets exceed the ceiling of " +
                          std::to_string(ceiling));
  }

  SubsetCatalog catalog;
  catalog.subsets.reserve(count);
  std::vector<std::size_t> current;
  for (std::size_t k = 1; k <= max_replicas; ++k) append_combinations(D, k, current, 0, catalog.subsets);

  const std::size_t C = sub.num_clients();
  for (const auto& members : catalog.subsets) {
    std::vector<Rational> oper(L);
    for (const std::size_t d : members) {
      for (std::size_t l = 0; l < L; ++l) oper[l] += sub.oper[d][l];
    }
    std::vector<std::vector<Rational>> exec(C, std::vector<Rational>(L));
    std::vector<std::vector<std::size_t>> nearest(C, std::vector<std::size_t>(L, members.front()));
    for (std::size_t k = 0; k < C; ++k) {
      for (std::size_t l = 0; l < L; ++l) {
        exec[k][l] = sub.exec[k][members.front()][l];
        for (const std::size_t d : members) {
          if (sub.exec[k][d][l] < exec[k][l]) {
            exec[k][l] = sub.exec[k][d][l];
            nearest[k][l] = d;
          }
        }
      }
    }
    catalog.oper.push_back(std::move(oper));
    catalog.exec.push_back(std::move(exec));
    catalog.nearest.push_back(std::move(nearest));
  }
  return catalog;
}

TransformedCosts transformed_costs(const SubsetCatalog& catalog, const ProviderSubproblem& sub,
                                   const Rational& mu1, const Rational& mu2) {
  if (sgn(mu1) < 0 || sgn(mu2) < 0) throw std::invalid_argument("mu1 and mu2 must be nonnegative");
  const std::size_t L = sub.num_levels();
  TransformedCosts tc{std::vector<Rational>(L), mu1, mu2};
  std::vector<Rational> weights(L);
  for (std::size_t gap = 0; gap < L; ++gap) weights[gap] = decay_weight(mu2, gap);

  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t v = 0; v < catalog.size(); ++v) {
      Rational value = catalog.oper[v][l];
      if (sgn(mu1) != 0) {
        Rational exec;
        for (std::size_t k = 0; k < sub.num_clients(); ++k) {
          const std::size_t own = sub.min_level[k];
          if (own <= l) exec += catalog.exec[v][k][own] * weights[l - own];
        }
        value += mu1 * exec;
      }
      if (v == 0 || value < tc.beta_star[l]) tc.beta_star[l] = std::move(value);
    }
  }
  return tc;
}

std::vector<std::size_t> StepOneResult::group(std::size_t level) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < client_level.size(); ++k) {
    if (client_level[k] == level) out.push_back(k);
  }
  return out;
}

StepOneResult datum_step1(const ProviderSubproblem& sub, const TransformedCosts& tc) {
  SingleDcProblem problem{tc.beta_star, sub.fees, categorize(sub)};
  const auto plan = solve_single_dc(problem);
  StepOneResult result;
  result.open = plan.open;
  result.objective = plan.objective;
  result.client_level.reserve(sub.num_clients());
  for (const std::size_t level : sub.min_level) result.client_level.push_back(*plan.category_choice[level]);
  return result;
}

JointPlan datum_step2(const ProviderSubproblem& sub, const SubsetCatalog& catalog, const StepOneResult& s1) {
  const std::size_t L = sub.num_levels();
  JointPlan plan;
  plan.subset.assign(L, std::nullopt);
  plan.client_level = s1.client_level;
  for (std::size_t l = 0; l < L; ++l) {
    if (!s1.open[l]) continue;
    const auto members = s1.group(l);
    Rational best;
    for (std::size_t v = 0; v < catalog.size(); ++v) {
      Rational score = catalog.oper[v][l];
      for (const std::size_t k : members) score += catalog.exec[v][k][l];
      if (!plan.subset[l] || score < best) {
        plan.subset[l] = v;
        best = std::move(score);
      }
    }
  }
  return plan;
}

SubproblemPlan JointPlan::lower(const ProviderSubproblem& sub, const SubsetCatalog& catalog) const {
  SubproblemPlan out = SubproblemPlan::empty_for(sub);
  for (std::size_t l = 0; l < subset.size(); ++l) {
    if (!subset[l]) continue;
    out.purchased[l] = true;
    for (const std::size_t d : catalog.subsets[*subset[l]]) out.placed[d][l] = true;
  }
  for (std::size_t k = 0; k < client_level.size(); ++k) {
    const std::size_t l = client_level[k];
    out.serve[k] = {catalog.nearest[*subset[l]][k][l], l};
  }
  return out;
}

Solution datum_solve(const MarketInstance& instance, const DatumConfig& config) {
  if (instance.contracting == Contracting::kBulk) return datum_solve_bulk(instance, config);
  const auto subs = split_by_provider(instance);
  std::vector<SubproblemPlan> parts;
  parts.reserve(subs.size());
  for (const auto& sub : subs) parts.push_back(solve_provider(sub, config));
  Solution solution{assemble_plan(instance, subs, parts), {}};
  solution.cost = evaluate_cost(instance, solution.plan);
  return solution;
}

Solution datum_solve_bulk(const MarketInstance& instance, const DatumConfig& config) {
  const auto subs = split_by_provider(instance);
  std::vector<SubproblemPlan> parts;
  parts.reserve(subs.size());
  for (const auto& sub : subs) parts.push_back(solve_provider_bulk(sub, config));
  Solution solution{assemble_plan(instance, subs, parts), {}};
  solution.cost = evaluate_cost(instance, solution.plan);
  return solution;
}

}  // namespace datum
