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

#ifndef DATUM_MODEL_HPP
#define DATUM_MODEL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "datum/geo.hpp"
#include "datum/rational.hpp"

namespace datum {

// Level, data center, client and provider indices are 0-based in memory.
// Files and user-facing text use the ids and 1-based level ordinals.

struct QualityLevel {
  Rational quality;
  Rational per_query_fee;
  std::optional<Rational> bulk_fee;
};

struct Provider {
  std::string id;
  std::vector<QualityLevel> levels;
  /// oper_cost[d][l] is the cost of moving level l of this provider's data to data center d.
  std::vector<std::vector<Rational>> oper_cost;
  std::optional<GeoPoint> location;

  std::size_t num_levels() const { return levels.size(); }
};

struct DataCenter {
  std::string id;
  std::optional<GeoPoint> location;
};

struct Client {
  std::string id;
  /// provider id -> minimum acceptable quality value.
  std::map<std::string, Rational> demands;
  std::optional<GeoPoint> location;
};

/// One block of explicit execution costs. Without a provider id it applies to
/// every provider the client demands; a provider-specific entry wins.
/// costs[d] holds either one value (constant across levels) or one per level.
struct ExecCostEntry {
  std::string client;
  std::optional<std::string> provider;
  std::vector<std::vector<Rational>> costs;
};

struct ExecCostModel {
  enum class Kind { kExplicit, kDistance };

  Kind kind = Kind::kExplicit;
  /// Asserts that execution cost does not depend on the quality level.
  bool level_independent = false;
  std::vector<ExecCostEntry> entries;
  Rational rate_per_gigameter = 1;
};

enum class Contracting { kPerQuery, kBulk };

struct MarketInstance {
  std::vector<Provider> providers;
  std::vector<DataCenter> data_centers;
  std::vector<Client> clients;
  ExecCostModel exec_cost;
  Contracting contracting = Contracting::kPerQuery;
  /// Free-form annotations (generator seed, provenance). Ignored by solvers.
  std::map<std::string, std::string> metadata;

  std::size_t num_data_centers() const { return data_centers.size(); }
  std::optional<std::size_t> provider_index(const std::string& id) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every structural invariant and returns all violations found.
ValidationReport validate_instance(const MarketInstance& instance);

/// Throws InvalidInstance when validate_instance reports violations.
void require_valid(const MarketInstance& instance);

/// Execution cost alpha_{d,c}(l, p) resolved from the instance's cost model.
Rational exec_cost(const MarketInstance& instance, std::size_t provider, std::size_t data_center,
                   std::size_t client, std::size_t level);

/// The decoupled view of one provider: only the clients demanding it, with
/// quality demands resolved to minimum level indices and dense cost tables.
struct ProviderSubproblem {
  std::size_t provider = 0;
  std::string provider_id;
  std::vector<Rational> fees;
  std::optional<std::vector<Rational>> bulk_fees;
  /// oper[d][l]
  std::vector<std::vector<Rational>> oper;
  /// Instance-level client index of each local client.
  std::vector<std::size_t> clients;
  /// Minimum acceptable level (0-based) of each local client.
  std::vector<std::size_t> min_level;
  /// exec[k][d][l] for local client k.
  std::vector<std::vector<std::vector<Rational>>> exec;
  bool exec_level_independent = false;
  Contracting contracting = Contracting::kPerQuery;

  std::size_t num_levels() const { return fees.size(); }
  std::size_t num_data_centers() const { return oper.size(); }
  std::size_t num_clients() const { return clients.size(); }
  /// True when every row of oper is constant across levels.
  bool oper_level_independent() const;
};

/// Smallest level index whose quality meets `required`, or nullopt.
std::optional<std::size_t> minimum_level(const Provider& provider, const Rational& required);

/// One subproblem per provider, in provider order. Throws UnsatisfiableDemand.
std::vector<ProviderSubproblem> split_by_provider(const MarketInstance& instance);

struct ProviderPlan {
  /// z(l)
  std::vector<bool> purchased;
  /// y(d, l), indexed placed[d][l].
  std::vector<std::vector<bool>> placed;
};

/// x_{d,c}(l, p) = 1 entries. The assignment list is authoritative.
struct Assignment {
  std::size_t client = 0;
  std::size_t provider = 0;
  std::size_t data_center = 0;
  std::size_t level = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

struct Plan {
  std::vector<ProviderPlan> providers;
  std::vector<Assignment> assignments;

  /// All-zero plan shaped for the instance.
  static Plan empty_for(const MarketInstance& instance);

  /// Derived from the assignment list: (data center, level) serving (client, provider).
  std::optional<std::pair<std::size_t, std::size_t>> served_level(std::size_t client,
                                                                  std::size_t provider) const;
};

/// First violated plan constraint, or nullopt if the plan is feasible.
std::optional<std::string> check_plan(const MarketInstance& instance, const Plan& plan);

struct CostBreakdown {
  Rational oper;
  Rational exec;
  Rational purch;
  Rational total;

  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

/// Exact cost of a feasible plan. Throws InfeasiblePlan otherwise.
CostBreakdown evaluate_cost(const MarketInstance& instance, const Plan& plan);

/// A plan and its cost, the common result of every solver.
struct Solution {
  Plan plan;
  CostBreakdown cost;
};

/// Per-provider decisions expressed on subproblem indices.
struct SubproblemPlan {
  std::vector<std::vector<bool>> placed;  // [d][l]
  std::vector<bool> purchased;            // [l]
  /// (data center, level) serving each local client.
  std::vector<std::pair<std::size_t, std::size_t>> serve;

  static SubproblemPlan empty_for(const ProviderSubproblem& sub);
};

/// Cost of a subproblem plan under the subproblem's contracting mode.
CostBreakdown subproblem_cost(const ProviderSubproblem& sub, const SubproblemPlan& plan);

/// Merges per-provider plans (one per subproblem, same order) into an instance plan.
Plan assemble_plan(const MarketInstance& instance, const std::vector<ProviderSubproblem>& subs,
                   const std::vector<SubproblemPlan>& parts);

}  // namespace datum

#endif  // DATUM_MODEL_HPP
