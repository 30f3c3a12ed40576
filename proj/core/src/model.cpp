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

#include "datum/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "datum/errors.hpp"

namespace datum {

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) {
    if (!out.empty()) out += "; ";
    out += line;
  }
  return out;
}

std::string level_name(std::size_t level) { return "level " + std::to_string(level + 1); }

// Index of explicit execution-cost entries by (client id, provider id or "").
class ExecIndex {
 public:
  explicit ExecIndex(const ExecCostModel& model) {
    for (std::size_t i = 0; i < model.entries.size(); ++i) {
      const auto& e = model.entries[i];
      index_.emplace(key(e.client, e.provider ? *e.provider : std::string()), i);
    }
  }

  const ExecCostEntry* find(const ExecCostModel& model, const std::string& client,
                            const std::string& provider) const {
    auto it = index_.find(key(client, provider));
    if (it == index_.end()) it = index_.find(key(client, std::string()));
    return it == index_.end() ? nullptr : &model.entries[it->second];
  }

 private:
  static std::string key(const std::string& client, const std::string& provider) {
    return client + '\x1f' + provider;
  }

  std::unordered_map<std::string, std::size_t> index_;
};

Rational entry_cost(const ExecCostEntry& entry, std::size_t data_center, std::size_t level) {
  const auto& row = entry.costs.at(data_center);
  return row.size() == 1 ? row.front() : row.at(level);
}

Rational resolve_exec(const MarketInstance& instance, const ExecIndex& index, std::size_t provider,
                      std::size_t data_center, std::size_t client, std::size_t level) {
  const auto& model = instance.exec_cost;
  if (model.kind == ExecCostModel::Kind::kDistance) {
    return distance_cost(*instance.data_centers[data_center].location,
                         *instance.clients[client].location, model.rate_per_gigameter);
  }
  const auto* entry =
      index.find(model, instance.clients[client].id, instance.providers[provider].id);
  if (entry == nullptr) {
    throw DimensionMismatch("no execution cost for client '" + instance.clients[client].id +
                            "' and provider '" + instance.providers[provider].id + "'");
  }
  return entry_cost(*entry, data_center, level);
}

template <typename Range, typename Proj>
void check_unique(const Range& items, Proj proj, const std::string& what,
                  std::vector<std::string>& out) {
  std::set<std::string> seen;
  for (const auto& item : items) {
    const std::string& id = proj(item);
    if (!seen.insert(id).second) out.push_back("duplicate " + what + " id '" + id + "'");
  }
}

}  // namespace

InvalidInstance::InvalidInstance(std::vector<std::string> violations)
    : Error("invalid instance: " + join_lines(violations)), violations_(std::move(violations)) {}

std::optional<std::size_t> MarketInstance::provider_index(const std::string& id) const {
  for (std::size_t p = 0; p < providers.size(); ++p) {
    if (providers[p].id == id) return p;
  }
  return std::nullopt;
}

ValidationReport validate_instance(const MarketInstance& instance) {
  ValidationReport report;
  auto& out = report.violations;
  const std::size_t num_dcs = instance.data_centers.size();

  check_unique(instance.providers, [](const Provider& p) -> const std::string& { return p.id; },
               "provider", out);
  check_unique(instance.data_centers,
               [](const DataCenter& d) -> const std::string& { return d.id; }, "data center", out);
  check_unique(instance.clients, [](const Client& c) -> const std::string& { return c.id; },
               "client", out);

  for (const auto& provider : instance.providers) {
    const std::string where = "provider '" + provider.id + "'";
    if (provider.levels.empty()) {
      out.push_back(where + ": no quality levels");
      continue;
    }
    bool any_bulk = false;
    bool all_bulk = true;
    for (std::size_t l = 0; l < provider.levels.size(); ++l) {
      const auto& level = provider.levels[l];
      if (sgn(level.quality) <= 0) out.push_back(where + ": quality of " + level_name(l) + " not positive");
      if (sgn(level.per_query_fee) < 0) out.push_back(where + ": negative cost in fee of " + level_name(l));
      if (level.bulk_fee) {
        any_bulk = true;
        if (sgn(*level.bulk_fee) < 0) out.push_back(where + ": negative cost in bulk fee of " + level_name(l));
      } else {
        all_bulk = false;
      }
      if (l > 0) {
        const auto& prev = provider.levels[l - 1];
        if (!(prev.quality < level.quality)) out.push_back(where + ": qualities not strictly increasing");
        if (!(prev.per_query_fee < level.per_query_fee)) out.push_back(where + ": fees not strictly increasing");
      }
    }
    if (any_bulk && !all_bulk) out.push_back(where + ": bulk fees given for some levels only");
    if (instance.contracting == Contracting::kBulk && !all_bulk) {
      out.push_back(where + ": missing bulk fees under bulk contracting");
    }
    if (provider.oper_cost.size() != num_dcs) {
      out.push_back(where + ": dimension mismatch, oper_cost has " +
                    std::to_string(provider.oper_cost.size()) + " rows for " +
                    std::to_string(num_dcs) + " data centers");
    }
    for (std::size_t d = 0; d < provider.oper_cost.size(); ++d) {
      const auto& row = provider.oper_cost[d];
      if (row.size() != provider.levels.size()) {
        out.push_back(where + ": dimension mismatch, oper_cost row " + std::to_string(d + 1) +
                      " has " + std::to_string(row.size()) + " columns for " +
                      std::to_string(provider.levels.size()) + " levels");
      }
      if (std::any_of(row.begin(), row.end(), [](const Rational& v) { return sgn(v) < 0; })) {
        out.push_back(where + ": negative cost in oper_cost row " + std::to_string(d + 1));
      }
    }
  }

  bool any_demand = false;
  for (const auto& client : instance.clients) {
    const std::string where = "client '" + client.id + "'";
    for (const auto& [provider_id, required] : client.demands) {
      any_demand = true;
      const auto p = instance.provider_index(provider_id);
      if (!p) {
        out.push_back(where + ": demands unknown provider '" + provider_id + "'");
        continue;
      }
      const auto& provider = instance.providers[*p];
      if (!provider.levels.empty() && provider.levels.back().quality < required) {
        out.push_back(where + ": unsatisfiable demand for provider '" + provider_id + "'");
      }
    }
  }
  if (any_demand && num_dcs == 0) out.push_back("dimension mismatch: demands exist but no data centers");

  const auto& model = instance.exec_cost;
  if (model.kind == ExecCostModel::Kind::kDistance) {
    if (sgn(model.rate_per_gigameter) < 0) out.push_back("exec_cost: negative cost in rate");
    for (const auto& dc : instance.data_centers) {
      if (!dc.location) out.push_back("exec_cost: data center '" + dc.id + "' has no location");
    }
    for (const auto& client : instance.clients) {
      if (!client.demands.empty() && !client.location) {
        out.push_back("exec_cost: client '" + client.id + "' has no location");
      }
    }
  } else {
    std::set<std::string> client_ids;
    for (const auto& c : instance.clients) client_ids.insert(c.id);
    for (const auto& entry : model.entries) {
      const std::string where = "exec_cost entry for client '" + entry.client + "'";
      if (!client_ids.count(entry.client)) out.push_back(where + ": unknown client");
      std::optional<std::size_t> p;
      if (entry.provider) {
        p = instance.provider_index(*entry.provider);
        if (!p) out.push_back(where + ": unknown provider '" + *entry.provider + "'");
      }
      if (entry.costs.size() != num_dcs) {
        out.push_back(where + ": dimension mismatch, " + std::to_string(entry.costs.size()) +
                      " rows for " + std::to_string(num_dcs) + " data centers");
      }
      for (const auto& row : entry.costs) {
        if (row.empty()) {
          out.push_back(where + ": dimension mismatch, empty cost row");
          continue;
        }
        if (row.size() > 1) {
          if (!entry.provider) {
            out.push_back(where + ": per-level costs need a provider");
          } else if (p && row.size() != instance.providers[*p].levels.size()) {
            out.push_back(where + ": dimension mismatch, " + std::to_string(row.size()) +
                          " level costs for " +
                          std::to_string(instance.providers[*p].levels.size()) + " levels");
          }
          if (model.level_independent &&
              std::any_of(row.begin(), row.end(), [&](const Rational& v) { return v != row.front(); })) {
            out.push_back(where + ": level_independent is set but costs vary by level");
          }
        }
        if (std::any_of(row.begin(), row.end(), [](const Rational& v) { return sgn(v) < 0; })) {
          out.push_back(where + ": negative cost");
        }
      }
    }
    if (out.empty()) {
      const ExecIndex index(model);
      for (const auto& client : instance.clients) {
        for (const auto& [provider_id, required] : client.demands) {
          (void)required;
          if (index.find(model, client.id, provider_id) == nullptr) {
            out.push_back("exec_cost: no costs for client '" + client.id + "' and provider '" +
                          provider_id + "'");
          }
        }
      }
    }
  }
  return report;
}

void require_valid(const MarketInstance& instance) {
  auto report = validate_instance(instance);
  if (!report.ok()) throw InvalidInstance(std::move(report.violations));
}

Rational exec_cost(const MarketInstance& instance, std::size_t provider, std::size_t data_center,
                   std::size_t client, std::size_t level) {
  const ExecIndex index(instance.exec_cost);
  return resolve_exec(instance, index, provider, data_center, client, level);
}

bool ProviderSubproblem::oper_level_independent() const {
  return std::all_of(oper.begin(), oper.end(), [](const std::vector<Rational>& row) {
    return std::all_of(row.begin(), row.end(), [&](const Rational& v) { return v == row.front(); });
  });
}

std::optional<std::size_t> minimum_level(const Provider& provider, const Rational& required) {
  for (std::size_t l = 0; l < provider.levels.size(); ++l) {
    if (provider.levels[l].quality >= required) return l;
  }
  return std::nullopt;
}

std::vector<ProviderSubproblem> split_by_provider(const MarketInstance& instance) {
  const ExecIndex index(instance.exec_cost);
  const std::size_t num_dcs = instance.num_data_centers();
  const bool distance_model = instance.exec_cost.kind == ExecCostModel::Kind::kDistance;

  // Distance costs do not depend on provider or level; compute them once.
  std::vector<std::vector<Rational>> distance_table;
  if (distance_model) {
    distance_table.assign(instance.clients.size(), std::vector<Rational>(num_dcs));
    for (std::size_t c = 0; c < instance.clients.size(); ++c) {
      if (instance.clients[c].demands.empty()) continue;
      for (std::size_t d = 0; d < num_dcs; ++d) {
        distance_table[c][d] = resolve_exec(instance, index, 0, d, c, 0);
      }
    }
  }

  std::vector<ProviderSubproblem> subs;
  subs.reserve(instance.providers.size());
  for (std::size_t p = 0; p < instance.providers.size(); ++p) {
    const auto& provider = instance.providers[p];
    ProviderSubproblem sub;
    sub.provider = p;
    sub.provider_id = provider.id;
    sub.contracting = instance.contracting;
    sub.exec_level_independent = distance_model || instance.exec_cost.level_independent;
    sub.oper = provider.oper_cost;
    const std::size_t num_levels = provider.levels.size();
    bool have_bulk = num_levels > 0;
    for (const auto& level : provider.levels) {
      sub.fees.push_back(level.per_query_fee);
      have_bulk = have_bulk && level.bulk_fee.has_value();
    }
    if (have_bulk) {
      std::vector<Rational> bulk;
      for (const auto& level : provider.levels) bulk.push_back(*level.bulk_fee);
      sub.bulk_fees = std::move(bulk);
    }
    for (std::size_t c = 0; c < instance.clients.size(); ++c) {
      const auto& client = instance.clients[c];
      const auto it = client.demands.find(provider.id);
      if (it == client.demands.end()) continue;
      const auto min_level = minimum_level(provider, it->second);
      if (!min_level) {
        throw UnsatisfiableDemand("client '" + client.id + "' demands quality " +
                                  format_decimal(it->second) + " from provider '" + provider.id +
                                  "', above its highest level");
      }
      sub.clients.push_back(c);
      sub.min_level.push_back(*min_level);
      std::vector<std::vector<Rational>> costs(num_dcs, std::vector<Rational>(num_levels));
      for (std::size_t d = 0; d < num_dcs; ++d) {
        if (distance_model) {
          std::fill(costs[d].begin(), costs[d].end(), distance_table[c][d]);
          continue;
        }
        const auto* entry = index.find(instance.exec_cost, client.id, provider.id);
        if (entry == nullptr) {
          throw DimensionMismatch("no execution cost for client '" + client.id +
                                  "' and provider '" + provider.id + "'");
        }
        for (std::size_t l = 0; l < num_levels; ++l) costs[d][l] = entry_cost(*entry, d, l);
      }
      sub.exec.push_back(std::move(costs));
    }
    subs.push_back(std::move(sub));
  }
  return subs;
}

Plan Plan::empty_for(const MarketInstance& instance) {
  Plan plan;
  for (const auto& provider : instance.providers) {
    ProviderPlan pp;
    pp.purchased.assign(provider.levels.size(), false);
    pp.placed.assign(instance.num_data_centers(), std::vector<bool>(provider.levels.size(), false));
    plan.providers.push_back(std::move(pp));
  }
  return plan;
}

std::optional<std::pair<std::size_t, std::size_t>> Plan::served_level(std::size_t client,
                                                                      std::size_t provider) const {
  for (const auto& a : assignments) {
    if (a.client == client && a.provider == provider) return std::make_pair(a.data_center, a.level);
  }
  return std::nullopt;
}

std::optional<std::string> check_plan(const MarketInstance& instance, const Plan& plan) {
  const std::size_t num_dcs = instance.num_data_centers();
  if (plan.providers.size() != instance.providers.size()) {
    return "plan covers " + std::to_string(plan.providers.size()) + " providers, instance has " +
           std::to_string(instance.providers.size());
  }
  for (std::size_t p = 0; p < instance.providers.size(); ++p) {
    const auto& pp = plan.providers[p];
    const std::size_t num_levels = instance.providers[p].levels.size();
    const std::string where = "provider '" + instance.providers[p].id + "'";
    if (pp.purchased.size() != num_levels || pp.placed.size() != num_dcs) {
      return where + ": plan dimensions do not match the instance";
    }
    for (std::size_t d = 0; d < num_dcs; ++d) {
      if (pp.placed[d].size() != num_levels) return where + ": plan dimensions do not match the instance";
      for (std::size_t l = 0; l < num_levels; ++l) {
        if (pp.placed[d][l] && !pp.purchased[l]) {
          return where + ": " + level_name(l) + " placed at data center '" +
                 instance.data_centers[d].id + "' without being purchased";
        }
      }
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> count;
  for (const auto& a : plan.assignments) {
    if (a.client >= instance.clients.size() || a.provider >= instance.providers.size() ||
        a.data_center >= num_dcs || a.level >= instance.providers[a.provider].levels.size()) {
      return std::string("assignment refers to an index outside the instance");
    }
    const auto& client = instance.clients[a.client];
    const auto& provider = instance.providers[a.provider];
    const std::string where = "client '" + client.id + "', provider '" + provider.id + "'";
    const auto demand = client.demands.find(provider.id);
    if (demand == client.demands.end()) return where + ": assignment without a demand";
    if (!plan.providers[a.provider].placed[a.data_center][a.level]) {
      return where + ": served " + level_name(a.level) + " from data center '" +
             instance.data_centers[a.data_center].id + "' where it is not placed";
    }
    if (provider.levels[a.level].quality < demand->second) {
      return where + ": served " + level_name(a.level) + " below the required quality";
    }
    if (++count[{a.client, a.provider}] > 1) return where + ": served more than once";
  }
  for (std::size_t c = 0; c < instance.clients.size(); ++c) {
    for (const auto& [provider_id, required] : instance.clients[c].demands) {
      (void)required;
      const auto p = instance.provider_index(provider_id);
      if (!p) return "client '" + instance.clients[c].id + "' demands unknown provider '" + provider_id + "'";
      if (!count.count({c, *p})) {
        return "client '" + instance.clients[c].id + "', provider '" + provider_id + "': not served";
      }
    }
  }
  return std::nullopt;
}

CostBreakdown evaluate_cost(const MarketInstance& instance, const Plan& plan) {
  if (auto violation = check_plan(instance, plan)) throw InfeasiblePlan(*violation);
  const ExecIndex index(instance.exec_cost);
  CostBreakdown cost;
  for (std::size_t p = 0; p < instance.providers.size(); ++p) {
    const auto& provider = instance.providers[p];
    const auto& pp = plan.providers[p];
    for (std::size_t d = 0; d < instance.num_data_centers(); ++d) {
      for (std::size_t l = 0; l < provider.levels.size(); ++l) {
        if (pp.placed[d][l]) cost.oper += provider.oper_cost[d][l];
      }
    }
    if (instance.contracting == Contracting::kBulk) {
      for (std::size_t l = 0; l < provider.levels.size(); ++l) {
        if (pp.purchased[l]) cost.purch += *provider.levels[l].bulk_fee;
      }
    }
  }
  for (const auto& a : plan.assignments) {
    cost.exec += resolve_exec(instance, index, a.provider, a.data_center, a.client, a.level);
    if (instance.contracting == Contracting::kPerQuery) {
      cost.purch += instance.providers[a.provider].levels[a.level].per_query_fee;
    }
  }
  cost.total = cost.oper + cost.exec + cost.purch;
  return cost;
}

SubproblemPlan SubproblemPlan::empty_for(const ProviderSubproblem& sub) {
  SubproblemPlan plan;
  plan.placed.assign(sub.num_data_centers(), std::vector<bool>(sub.num_levels(), false));
  plan.purchased.assign(sub.num_levels(), false);
  plan.serve.assign(sub.num_clients(), {0, 0});
  return plan;
}

CostBreakdown subproblem_cost(const ProviderSubproblem& sub, const SubproblemPlan& plan) {
  CostBreakdown cost;
  for (std::size_t d = 0; d < sub.num_data_centers(); ++d) {
    for (std::size_t l = 0; l < sub.num_levels(); ++l) {
      if (plan.placed[d][l]) cost.oper += sub.oper[d][l];
    }
  }
  for (std::size_t k = 0; k < sub.num_clients(); ++k) {
    const auto [d, l] = plan.serve[k];
    cost.exec += sub.exec[k][d][l];
    if (sub.contracting == Contracting::kPerQuery) cost.purch += sub.fees[l];
  }
  if (sub.contracting == Contracting::kBulk) {
    for (std::size_t l = 0; l < sub.num_levels(); ++l) {
      if (plan.purchased[l]) cost.purch += (*sub.bulk_fees)[l];
    }
  }
  cost.total = cost.oper + cost.exec + cost.purch;
  return cost;
}

Plan assemble_plan(const MarketInstance& instance, const std::vector<ProviderSubproblem>& subs,
                   const std::vector<SubproblemPlan>& parts) {
  if (subs.size() != parts.size() || subs.size() != instance.providers.size()) {
    throw DimensionMismatch("one subproblem plan per provider is required");
  }
  Plan plan = Plan::empty_for(instance);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& sub = subs[i];
    const auto& part = parts[i];
    auto& pp = plan.providers[sub.provider];
    pp.placed = part.placed;
    pp.purchased = part.purchased;
    for (std::size_t l = 0; l < sub.num_levels(); ++l) {
      for (std::size_t d = 0; d < sub.num_data_centers(); ++d) {
        if (part.placed[d][l]) pp.purchased[l] = true;
      }
    }
    for (std::size_t k = 0; k < sub.num_clients(); ++k) {
      plan.assignments.push_back(
          {sub.clients[k], sub.provider, part.serve[k].first, part.serve[k].second});
    }
  }
  std::sort(plan.assignments.begin(), plan.assignments.end(),
            [](const Assignment& a, const Assignment& b) {
              return std::tie(a.client, a.provider) < std::tie(b.client, b.provider);
            });
  return plan;
}

}  // namespace datum
