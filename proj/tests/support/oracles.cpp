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

#include "oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace datum::testing {
namespace {

struct Facility {
  std::size_t provider;
  std::size_t data_center;
  std::size_t level;
};

std::vector<Facility> all_facilities(const MarketInstance& instance) {
  std::vector<Facility> out;
  for (std::size_t p = 0; p < instance.providers.size(); ++p) {
    for (std::size_t d = 0; d < instance.num_data_centers(); ++d) {
      for (std::size_t l = 0; l < instance.providers[p].num_levels(); ++l) out.push_back({p, d, l});
    }
  }
  if (out.size() > 24) throw std::invalid_argument("joint enumeration limited to 24 facilities");
  return out;
}

}  // namespace

std::optional<Rational> brute_force_single_dc(const std::vector<Rational>& oper, const std::vector<Rational>& fees,
                                              const std::vector<std::size_t>& counts) {
  const std::size_t L = fees.size();
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << L); ++mask) {
    Rational total;
    bool feasible = true;
    for (std::size_t l = 0; l < L; ++l) {
      if (mask >> l & 1) total += oper[l];
    }
    for (std::size_t i = 0; i < L && feasible; ++i) {
      if (counts[i] == 0) continue;
      std::optional<Rational> cheapest;
      for (std::size_t l = i; l < L; ++l) {
        if ((mask >> l & 1) && (!cheapest || fees[l] < *cheapest)) cheapest = fees[l];
      }
      if (!cheapest) {
        feasible = false;
      } else {
        total += Rational(static_cast<unsigned long>(counts[i])) * *cheapest;
      }
    }
    if (feasible && (!best || total < *best)) best = total;
  }
  return best;
}

Rational enumerate_uflp(const UflpInstance& uflp) {
  const std::size_t J = uflp.num_facilities();
  if (J > 24) throw std::invalid_argument("UFLP enumeration limited to 24 facilities");
  std::optional<Rational> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << J); ++mask) {
    Rational total;
    for (std::size_t j = 0; j < J; ++j) {
      if (mask >> j & 1) total += uflp.opening[j];
    }
    bool feasible = true;
    for (const auto& row : uflp.connection) {
      std::optional<Rational> cheapest;
      for (std::size_t j = 0; j < J; ++j) {
        if ((mask >> j & 1) && row[j] && (!cheapest || *row[j] < *cheapest)) cheapest = *row[j];
      }
      if (!cheapest) {
        feasible = false;
        break;
      }
      total += *cheapest;
    }
    if (feasible && (!best || total < *best)) best = total;
  }
  if (!best) throw std::logic_error("UFLP without a feasible solution");
  return *best;
}

JointOptimum enumerate_joint(const MarketInstance& instance) {
  const auto facilities = all_facilities(instance);
  const std::size_t P = instance.providers.size();
  const bool bulk = instance.contracting == Contracting::kBulk;
  std::optional<JointOptimum> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << facilities.size()); ++mask) {
    std::vector<Rational> oper(P);
    std::vector<Rational> purch(P);
    Rational exec;
    std::vector<std::vector<bool>> bought(P);
    for (std::size_t p = 0; p < P; ++p) bought[p].assign(instance.providers[p].num_levels(), false);
    for (std::size_t j = 0; j < facilities.size(); ++j) {
      if (!(mask >> j & 1)) continue;
      const auto& f = facilities[j];
      oper[f.provider] += instance.providers[f.provider].oper_cost[f.data_center][f.level];
      bought[f.provider][f.level] = true;
    }
    if (bulk) {
      for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t l = 0; l < bought[p].size(); ++l) {
          if (bought[p][l]) purch[p] += *instance.providers[p].levels[l].bulk_fee;
        }
      }
    }
    bool feasible = true;
    for (std::size_t c = 0; c < instance.clients.size() && feasible; ++c) {
      for (const auto& [provider_id, required] : instance.clients[c].demands) {
        const std::size_t p = *instance.provider_index(provider_id);
        const auto& provider = instance.providers[p];
        std::optional<Rational> cheapest;
        Rational cheapest_fee;
        Rational cheapest_exec;
        for (std::size_t j = 0; j < facilities.size(); ++j) {
          const auto& f = facilities[j];
          if (!(mask >> j & 1) || f.provider != p || provider.levels[f.level].quality < required) continue;
          const Rational a = exec_cost(instance, p, f.data_center, c, f.level);
          const Rational fee = bulk ? Rational(0) : provider.levels[f.level].per_query_fee;
          if (!cheapest || a + fee < *cheapest) {
            cheapest = a + fee;
            cheapest_fee = fee;
            cheapest_exec = a;
          }
        }
        if (!cheapest) {
          feasible = false;
          break;
        }
        exec += cheapest_exec;
        purch[p] += cheapest_fee;
      }
    }
    if (!feasible) continue;
    Rational total = exec;
    for (std::size_t p = 0; p < P; ++p) total += oper[p] + purch[p];
    if (!best || total < best->total) {
      JointOptimum candidate{total, {}};
      for (std::size_t p = 0; p < P; ++p) candidate.oper_plus_purch.push_back(oper[p] + purch[p]);
      best = std::move(candidate);
    }
  }
  if (!best) throw std::logic_error("market without a feasible plan");
  return *best;
}

Rational enumerate_bandwidth(const MarketInstance& instance) {
  const auto facilities = all_facilities(instance);
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << facilities.size()); ++mask) {
    Rational total;
    for (std::size_t j = 0; j < facilities.size(); ++j) {
      if (mask >> j & 1) {
        const auto& f = facilities[j];
        total += instance.providers[f.provider].oper_cost[f.data_center][f.level];
      }
    }
    bool feasible = true;
    for (std::size_t c = 0; c < instance.clients.size() && feasible; ++c) {
      for (const auto& [provider_id, required] : instance.clients[c].demands) {
        const std::size_t p = *instance.provider_index(provider_id);
        std::optional<Rational> cheapest;
        for (std::size_t j = 0; j < facilities.size(); ++j) {
          const auto& f = facilities[j];
          if (!(mask >> j & 1) || f.provider != p || instance.providers[p].levels[f.level].quality < required) {
            continue;
          }
          const Rational a = exec_cost(instance, p, f.data_center, c, f.level);
          if (!cheapest || a < *cheapest) cheapest = a;
        }
        if (!cheapest) {
          feasible = false;
          break;
        }
        total += *cheapest;
      }
    }
    if (feasible && (!best || total < *best)) best = total;
  }
  if (!best) throw std::logic_error("market without a feasible plan");
  return *best;
}

std::pair<double, double> solve_calibration(double A, double B, double F, double r1, double r2) {
  // | A   B     | |a|   |r1 F|
  // | A  -r2 B  | |b| = |r2 F|
  const double det = A * (-r2 * B) - B * A;
  const double a = ((r1 * F) * (-r2 * B) - B * (r2 * F)) / det;
  const double b = (A * (r2 * F) - A * (r1 * F)) / det;
  return {a, b};
}

MarketInstance random_market(std::mt19937_64& rng, const RandomMarketOptions& o) {
  auto cents = [&](long lo, long hi) { return rat(std::uniform_int_distribution<long>(lo, hi)(rng), 100); };
  std::bernoulli_distribution demand(o.demand_probability);
  std::uniform_int_distribution<std::size_t> pick_level(1, o.levels);

  MarketInstance instance;
  instance.contracting = o.contracting;
  for (std::size_t d = 0; d < o.data_centers; ++d) instance.data_centers.push_back({"d" + std::to_string(d + 1), {}});
  for (std::size_t p = 0; p < o.providers; ++p) {
    Provider provider;
    provider.id = "p" + std::to_string(p + 1);
    Rational fee;
    for (std::size_t l = 0; l < o.levels; ++l) {
      fee += cents(1, 500);
      provider.levels.push_back({rat(static_cast<long>(l + 1)), fee, cents(0, 2000)});
    }
    for (std::size_t d = 0; d < o.data_centers; ++d) {
      std::vector<Rational> row;
      const Rational flat = cents(0, 2000);
      for (std::size_t l = 0; l < o.levels; ++l) row.push_back(o.level_independent_oper ? flat : cents(0, 2000));
      provider.oper_cost.push_back(std::move(row));
    }
    instance.providers.push_back(std::move(provider));
  }
  instance.exec_cost.kind = ExecCostModel::Kind::kExplicit;
  instance.exec_cost.level_independent = o.level_independent_exec;
  for (std::size_t c = 0; c < o.clients; ++c) {
    Client client;
    client.id = "c" + std::to_string(c + 1);
    for (std::size_t p = 0; p < o.providers; ++p) {
      if (o.force_top_category && c == 0) {
        client.demands[instance.providers[p].id] = rat(static_cast<long>(o.levels));
      } else if (demand(rng)) {
        client.demands[instance.providers[p].id] = rat(static_cast<long>(pick_level(rng)));
      }
    }
    if (client.demands.empty()) {
      const std::size_t p = std::uniform_int_distribution<std::size_t>(0, o.providers - 1)(rng);
      client.demands[instance.providers[p].id] = rat(static_cast<long>(pick_level(rng)));
    }
    // Level-dependent costs are keyed by provider; flat ones by client alone.
    std::vector<std::optional<std::string>> keys;
    if (o.level_independent_exec) {
      keys.push_back(std::nullopt);
    } else {
      for (const auto& [provider_id, required] : client.demands) keys.push_back(provider_id);
    }
    for (const auto& key : keys) {
      ExecCostEntry entry;
      entry.client = client.id;
      entry.provider = key;
      for (std::size_t d = 0; d < o.data_centers; ++d) {
        std::vector<Rational> costs;
        if (o.level_independent_exec) {
          costs.push_back(cents(0, 1000));
        } else {
          for (std::size_t l = 0; l < o.levels; ++l) costs.push_back(cents(0, 1000));
        }
        entry.costs.push_back(std::move(costs));
      }
      instance.exec_cost.entries.push_back(std::move(entry));
    }
    instance.clients.push_back(std::move(client));
  }
  require_valid(instance);
  return instance;
}

MarketInstance instance_g() {
  MarketInstance instance;
  instance.data_centers = {{"dc1", {}}, {"dc2", {}}};
  Provider provider;
  provider.id = "p1";
  provider.levels = {{rat(1), rat(2), rat(2)}};
  provider.oper_cost = {{rat(5)}, {rat(7)}};
  instance.providers.push_back(provider);
  Client client;
  client.id = "c1";
  client.demands["p1"] = rat(1);
  instance.clients.push_back(client);
  instance.exec_cost.kind = ExecCostModel::Kind::kExplicit;
  instance.exec_cost.level_independent = true;
  instance.exec_cost.entries.push_back({"c1", std::nullopt, {{rat(4)}, {rat(1)}}});
  require_valid(instance);
  return instance;
}

MarketInstance single_dc_instance(long beta1, long beta2, Contracting contracting) {
  MarketInstance instance;
  instance.contracting = contracting;
  instance.data_centers = {{"dc1", {}}};
  Provider provider;
  provider.id = "p1";
  provider.levels = {{rat(1), rat(1), rat(1)}, {rat(2), rat(3), rat(3)}};
  provider.oper_cost = {{rat(beta1), rat(beta2)}};
  instance.providers.push_back(provider);
  instance.exec_cost.kind = ExecCostModel::Kind::kExplicit;
  instance.exec_cost.level_independent = true;
  for (int c = 0; c < 4; ++c) {
    Client client;
    client.id = "c" + std::to_string(c + 1);
    client.demands["p1"] = rat(c < 3 ? 1 : 2);
    instance.clients.push_back(client);
    instance.exec_cost.entries.push_back({client.id, std::nullopt, {{rat(0)}}});
  }
  require_valid(instance);
  return instance;
}

}  // namespace datum::testing
