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

#include "datum/uflp.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "datum/errors.hpp"
#include "json.hpp"

namespace datum {

using nlohmann::json;

namespace {

constexpr const char* kProviderId = "p1";

Rational decimal(const json& value, const std::string& what) {
  if (!value.is_string()) throw ParseError(what + ": expected a decimal string");
  return parse_decimal(value.get<std::string>());
}

std::string text(const json& object, const char* key, const std::string& what) {
  const auto it = object.find(key);
  if (it == object.end() || !it->is_string()) throw ParseError(what + ": '" + key + "' must be a string");
  return it->get<std::string>();
}

UflpInstance build(const ProviderSubproblem& sub, std::vector<std::string> dc_names,
                   std::vector<std::string> client_names) {
  if (sub.contracting != Contracting::kPerQuery) {
    throw InvalidInstance({"provider '" + sub.provider_id + "': facility-location export needs per-query contracting"});
  }
  const std::size_t D = sub.num_data_centers();
  const std::size_t L = sub.num_levels();
  UflpInstance out;
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t l = 0; l < L; ++l) {
      out.facility_ids.push_back(dc_names[d] + ":l" + std::to_string(l + 1));
      out.opening.push_back(sub.oper[d][l]);
    }
  }
  out.client_ids = std::move(client_names);
  for (std::size_t k = 0; k < sub.num_clients(); ++k) {
    auto& row = out.connection.emplace_back(D * L);
    for (std::size_t d = 0; d < D; ++d) {
      for (std::size_t l = sub.min_level[k]; l < L; ++l) row[d * L + l] = sub.fees[l] + sub.exec[k][d][l];
    }
  }
  return out;
}

}  // namespace

Rational UflpInstance::big_m() const {
  Rational m = 1;
  for (const auto& cost : opening) m += cost;
  for (const auto& row : connection) {
    Rational worst;
    for (const auto& cost : row) {
      if (cost && *cost > worst) worst = *cost;
    }
    m += worst;
  }
  return m;
}

void validate_uflp(const UflpInstance& uflp) {
  std::vector<std::string> violations;
  if (uflp.facility_ids.size() != uflp.opening.size()) violations.push_back("one id per facility is required");
  if (uflp.client_ids.size() != uflp.connection.size()) violations.push_back("one id per client is required");
  if (std::set<std::string>(uflp.facility_ids.begin(), uflp.facility_ids.end()).size() != uflp.facility_ids.size()) {
    violations.push_back("duplicate facility id");
  }
  if (std::set<std::string>(uflp.client_ids.begin(), uflp.client_ids.end()).size() != uflp.client_ids.size()) {
    violations.push_back("duplicate client id");
  }
  for (std::size_t j = 0; j < uflp.opening.size(); ++j) {
    if (sgn(uflp.opening[j]) < 0) violations.push_back("facility " + std::to_string(j + 1) + ": negative cost");
  }
  for (std::size_t i = 0; i < uflp.connection.size(); ++i) {
    const auto& row = uflp.connection[i];
    const std::string where = "client " + std::to_string(i + 1);
    if (row.size() != uflp.opening.size()) {
      violations.push_back(where + ": dimension mismatch");
      continue;
    }
    bool any = false;
    for (const auto& cost : row) {
      if (!cost) continue;
      any = true;
      if (sgn(*cost) < 0) violations.push_back(where + ": negative cost");
    }
    if (!any) violations.push_back(where + ": no allowed facility");
  }
  if (!violations.empty()) throw InvalidInstance(std::move(violations));
}

UflpInstance to_uflp(const ProviderSubproblem& sub) {
  std::vector<std::string> dcs;
  for (std::size_t d = 0; d < sub.num_data_centers(); ++d) dcs.push_back("d" + std::to_string(d + 1));
  std::vector<std::string> clients;
  for (std::size_t k = 0; k < sub.num_clients(); ++k) clients.push_back("c" + std::to_string(k + 1));
  return build(sub, std::move(dcs), std::move(clients));
}

UflpInstance to_uflp(const MarketInstance& instance, const ProviderSubproblem& sub) {
  std::vector<std::string> dcs;
  for (const auto& dc : instance.data_centers) dcs.push_back(dc.id);
  std::vector<std::string> clients;
  for (const std::size_t c : sub.clients) clients.push_back(instance.clients[c].id);
  return build(sub, std::move(dcs), std::move(clients));
}

MarketInstance from_uflp(const UflpInstance& uflp) {
  validate_uflp(uflp);
  const Rational m = uflp.big_m();
  MarketInstance instance;
  Provider provider;
  provider.id = kProviderId;
  provider.levels.push_back({Rational(1), Rational(0), std::nullopt});
  for (std::size_t j = 0; j < uflp.num_facilities(); ++j) {
    instance.data_centers.push_back({uflp.facility_ids[j], std::nullopt});
    provider.oper_cost.push_back({uflp.opening[j]});
  }
  instance.providers.push_back(std::move(provider));
  instance.exec_cost.kind = ExecCostModel::Kind::kExplicit;
  instance.exec_cost.level_independent = true;
  for (std::size_t i = 0; i < uflp.num_clients(); ++i) {
    Client client;
    client.id = uflp.client_ids[i];
    client.demands[kProviderId] = 0;
    instance.clients.push_back(std::move(client));
    ExecCostEntry entry;
    entry.client = uflp.client_ids[i];
    for (const auto& cost : uflp.connection[i]) entry.costs.push_back({cost ? *cost : m});
    instance.exec_cost.entries.push_back(std::move(entry));
  }
  instance.metadata["source"] = "uflp";
  require_valid(instance);
  return instance;
}

std::string dump_uflp(const UflpInstance& uflp, bool dense) {
  json root = json::object();
  json facilities = json::array();
  for (std::size_t j = 0; j < uflp.num_facilities(); ++j) {
    facilities.push_back({{"id", uflp.facility_ids[j]}, {"opening_cost", format_decimal(uflp.opening[j])}});
  }
  root["facilities"] = std::move(facilities);
  const Rational m = uflp.big_m();
  if (dense) root["big_m"] = format_decimal(m);
  json clients = json::array();
  for (std::size_t i = 0; i < uflp.num_clients(); ++i) {
    json costs = dense ? json::array() : json::object();
    for (std::size_t j = 0; j < uflp.num_facilities(); ++j) {
      const auto& cost = uflp.connection[i][j];
      if (dense) {
        costs.push_back(format_decimal(cost ? *cost : m));
      } else if (cost) {
        costs[uflp.facility_ids[j]] = format_decimal(*cost);
      }
    }
    clients.push_back({{"id", uflp.client_ids[i]}, {"costs", std::move(costs)}});
  }
  root["clients"] = std::move(clients);
  return root.dump(2) + "\n";
}

UflpInstance parse_uflp(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("facility-location document must be an object");
  const auto facilities = root.find("facilities");
  const auto clients = root.find("clients");
  if (facilities == root.end() || !facilities->is_array()) throw ParseError("'facilities' must be an array");
  if (clients == root.end() || !clients->is_array()) throw ParseError("'clients' must be an array");

  UflpInstance uflp;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& f : *facilities) {
    const std::string where = "facility " + std::to_string(uflp.num_facilities() + 1);
    if (!f.is_object()) throw ParseError(where + ": expected an object");
    uflp.facility_ids.push_back(text(f, "id", where));
    const auto cost = f.find("opening_cost");
    if (cost == f.end()) throw ParseError(where + ": missing 'opening_cost'");
    uflp.opening.push_back(decimal(*cost, where));
    index.emplace(uflp.facility_ids.back(), uflp.opening.size() - 1);
  }
  for (const auto& c : *clients) {
    const std::string where = "client " + std::to_string(uflp.num_clients() + 1);
    if (!c.is_object()) throw ParseError(where + ": expected an object");
    uflp.client_ids.push_back(text(c, "id", where));
    const auto costs = c.find("costs");
    if (costs == c.end()) throw ParseError(where + ": missing 'costs'");
    auto& row = uflp.connection.emplace_back(uflp.num_facilities());
    if (costs->is_array()) {
      if (costs->size() != uflp.num_facilities()) throw ParseError(where + ": one cost per facility expected");
      for (std::size_t j = 0; j < costs->size(); ++j) row[j] = decimal((*costs)[j], where);
    } else if (costs->is_object()) {
      for (const auto& [id, value] : costs->items()) {
        const auto it = index.find(id);
        if (it == index.end()) throw ParseError(where + ": unknown facility '" + id + "'");
        row[it->second] = decimal(value, where);
      }
    } else {
      throw ParseError(where + ": 'costs' must be an array or an object");
    }
  }
  validate_uflp(uflp);
  return uflp;
}

}  // namespace datum
