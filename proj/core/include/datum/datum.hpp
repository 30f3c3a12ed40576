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

#ifndef DATUM_DATUM_HPP
#define DATUM_DATUM_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "datum/model.hpp"
#include "datum/rational.hpp"

namespace datum {

struct DatumConfig {
  /// Largest replica set considered for one level; clamped to the data-center count.
  std::size_t max_replicas = 2;
  std::size_t catalog_ceiling = 4096;
  /// Weights of the execution-cost term in the transformed operation cost.
  /// Zero gives the conservative choice min_v beta_v(l).
  Rational mu1 = 0;
  Rational mu2 = 0;
};

/// Candidate replica sets ordered by size, then lexicographically.
struct SubsetCatalog {
  std::vector<std::vector<std::size_t>> subsets;
  /// oper[v][l] = sum over d in v of beta_d(l)
  std::vector<std::vector<Rational>> oper;
  /// exec[v][k][l] = min over d in v of alpha_{d,k}(l)
  std::vector<std::vector<std::vector<Rational>>> exec;
  /// nearest[v][k][l]: the member attaining exec[v][k][l] (lowest id on ties)
  std::vector<std::vector<std::vector<std::size_t>>> nearest;

  std::size_t size() const { return subsets.size(); }
};

/// Number of nonempty subsets of at most `max_replicas` out of `num_data_centers`.
std::size_t catalog_size(std::size_t num_data_centers, std::size_t max_replicas);

/// Throws CatalogTooLarge above `ceiling` subsets.
SubsetCatalog build_subset_catalog(const ProviderSubproblem& sub, std::size_t max_replicas,
                                   std::size_t ceiling = 4096);

struct TransformedCosts {
  std::vector<Rational> beta_star;
  Rational mu1;
  Rational mu2;
};

TransformedCosts transformed_costs(const SubsetCatalog& catalog, const ProviderSubproblem& sub,
                                   const Rational& mu1 = 0, const Rational& mu2 = 0);

struct StepOneResult {
  /// Y(l)
  std::vector<bool> open;
  /// Level bought for each local client; X_c(l) = 1 iff client_level[c] == l.
  std::vector<std::size_t> client_level;
  /// Transformed operation cost plus purchasing cost of the single-DC optimum.
  Rational objective;

  /// C(l): local clients served at level l.
  std::vector<std::size_t> group(std::size_t level) const;
};

/// Solves the problem as if all data centers were one, at operation cost beta*.
StepOneResult datum_step1(const ProviderSubproblem& sub, const TransformedCosts& tc);

struct JointPlan {
  /// Catalog index placed at each level, nullopt when the level is closed.
  std::vector<std::optional<std::size_t>> subset;
  std::vector<std::size_t> client_level;

  /// Expands subsets to member data centers; each client reads from the
  /// member with the lowest execution cost.
  SubproblemPlan lower(const ProviderSubproblem& sub, const SubsetCatalog& catalog) const;
};

/// For each open level, the subset minimizing beta_v(l) + sum_{c in C(l)} alpha_{v,c}(l);
/// ties go to the earliest subset in catalog order.
JointPlan datum_step2(const ProviderSubproblem& sub, const SubsetCatalog& catalog, const StepOneResult& s1);

/// Both steps on every provider. Bulk instances are routed to datum_solve_bulk.
Solution datum_solve(const MarketInstance& instance, const DatumConfig& config = {});

/// Bulk contracting with level-independent costs: one level is bought per
/// provider, then placed by Step 2. Throws LevelDependentCosts, MissingBulkFees.
Solution datum_solve_bulk(const MarketInstance& instance, const DatumConfig& config = {});

}  // namespace datum

#endif  // DATUM_DATUM_HPP
