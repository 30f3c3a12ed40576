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

#ifndef DATUM_BASELINES_HPP
#define DATUM_BASELINES_HPP

#include <cstdint>

#include "datum/model.hpp"

namespace datum {

/// Cap on the number of candidate placements (2^(D*L)) searched per provider.
struct ExhaustiveBudget {
  std::uint64_t max_supports = std::uint64_t{1} << 20;

  /// Default budget, overridden by the DATUM_BUDGET environment variable.
  static ExhaustiveBudget from_env();
};

/// 2^(D*L) for the subproblem, saturating at UINT64_MAX.
std::uint64_t required_budget(const ProviderSubproblem& sub);

/// Exact optimum of the full cost by branch and bound over placements.
/// Throws OversizeInstance when a provider exceeds the budget.
Solution opt_cost(const MarketInstance& instance, const ExhaustiveBudget& budget = {});

/// Exact minimum of operation plus execution cost; ties are broken toward
/// lower purchasing cost. The reported cost includes purchasing.
Solution opt_band(const MarketInstance& instance, const ExhaustiveBudget& budget = {});

/// Places every demanded level at the data center with the cheapest operation
/// cost for it and serves each client exactly its minimum level.
Solution nearest_dc(const MarketInstance& instance);

/// Per-provider entry points, exposed for tests and benchmarks.
SubproblemPlan opt_cost_subproblem(const ProviderSubproblem& sub, const ExhaustiveBudget& budget = {});
SubproblemPlan opt_band_subproblem(const ProviderSubproblem& sub, const ExhaustiveBudget& budget = {});
SubproblemPlan nearest_dc_subproblem(const ProviderSubproblem& sub);

}  // namespace datum

#endif  // DATUM_BASELINES_HPP
