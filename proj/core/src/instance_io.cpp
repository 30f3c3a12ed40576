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

#include "datum/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "datum/errors.hpp"
#include "json.hpp"

namespace datum {

using nlohmann::json;

namespace {

Rational decimal_field(const json& value, const std::string& what) {
  if (!value.is_string()) throw ParseError(what + ": expected a decimal string");
  return parse_decimal(value.get<std::string>());
}

const json& require(const json& object, const char* key, const std::string& what) {
  if (!object.is_object()) throw ParseError(what + ": expected an object");
  const auto it = object.find(key);
  if (it == object.end()) throw ParseError(what + ": missing key '" + key + "'");
  return *it;
}

std::string string_field(const json& object, const char* key, const std::string& what) {
  const auto& value = require(object, key, what);
  if (!value.is_string()) throw ParseError(what + ": '" + key + "' must be a string");
  return value.get<std::string>();
}

const json& array_field(const json& object, const char* key, const std::string& what) {
  const auto& value = require(object, key, what);
  if (!value.is_array()) throw ParseError(what + ": '" + key + "' must be an array");
  return value;
}

std::optional<GeoPoint> location_field(const json& object, const std::string& what) {
  const auto it = object.find("location");
  if (it == object.end() || it->is_null()) return std::nullopt;
  const auto& lat = require(*it, "lat", what + " location");
  const auto& lon = require(*it, "lon", what + " location");
  if (!lat.is_number() || !lon.is_number()) throw ParseError(what + ": location must be numeric");
  GeoPoint point{lat.get<double>(), lon.get<double>()};
  if (point.lat < -90.0 || point.lat > 90.0 || point.lon < -180.0 || point.lon > 180.0) {
    throw ParseError(what + ": location outside valid degree ranges");
  }
  return point;
}

json location_json(const GeoPoint& point) { return json{{"lat", point.lat}, {"lon", point.lon}}; }

std::vector<Rational> cost_row(const json& value, const std::string& what) {
  std::vector<Rational> row;
  if (value.is_string()) {
    row.push_back(decimal_field(value, what));
  } else if (value.is_array()) {
    for (const auto& item : value) row.push_back(decimal_field(item, what));
  } else {
    throw ParseError(what + ": cost row must be a decimal string or an array of them");
  }
  return row;
}

std::size_t level_field(const json& object, const std::string& what) {
  const auto& value = require(object, "level", what);
  if (!value.is_number_integer() || value.get<long long>() < 1) {
    throw ParseError(what + ": 'level' must be a positive integer");
  }
  return static_cast<std::size_t>(value.get<long long>() - 1);
}

template <typename Items>
std::size_t index_of(const Items& items, const std::string& id, const std::string& what) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id == id) return i;
  }
  throw ParseError("unknown " + what + " id '" + id + "'");
}

}  // namespace

MarketInstance parse_instance(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("instance: top level must be an object");

  MarketInstance instance;
  for (const auto& dc : array_field(root, "data_centers", "instance")) {
    const std::string what = "data center";
    instance.data_centers.push_back({string_field(dc, "id", what), location_field(dc, what)});
  }
  for (const auto& p : array_field(root, "providers", "instance")) {
    Provider provider;
    provider.id = string_field(p, "id", "provider");
    const std::string what = "provider '" + provider.id + "'";
    provider.location = location_field(p, what);
    for (const auto& level : array_field(p, "levels", what)) {
      QualityLevel q;
      q.quality = decimal_field(require(level, "quality", what), what + " quality");
      q.per_query_fee = decimal_field(require(level, "fee", what), what + " fee");
      if (const auto it = level.find("bulk_fee"); it != level.end() && !it->is_null()) {
        q.bulk_fee = decimal_field(*it, what + " bulk_fee");
      }
      provider.levels.push_back(std::move(q));
    }
    for (const auto& row : array_field(p, "oper_cost", what)) {
      if (!row.is_array()) throw ParseError(what + ": oper_cost rows must be arrays");
      std::vector<Rational> values;
      for (const auto& v : row) values.push_back(decimal_field(v, what + " oper_cost"));
      provider.oper_cost.push_back(std::move(values));
    }
    instance.providers.push_back(std::move(provider));
  }
  for (const auto& c : array_field(root, "clients", "instance")) {
    Client client;
    client.id = string_field(c, "id", "client");
    const std::string what = "client '" + client.id + "'";
    client.location = location_field(c, what);
    const auto& demands = require(c, "demands", what);
    if (!demands.is_object()) throw ParseError(what + ": demands must be an object");
    for (const auto& [provider_id, w] : demands.items()) {
      client.demands.emplace(provider_id, decimal_field(w, what + " demand"));
    }
    instance.clients.push_back(std::move(client));
  }

  const auto& exec = require(root, "exec_cost", "instance");
  const std::string kind = string_field(exec, "kind", "exec_cost");
  if (kind == "distance") {
    instance.exec_cost.kind = ExecCostModel::Kind::kDistance;
    instance.exec_cost.level_independent = true;
    instance.exec_cost.rate_per_gigameter =
        decimal_field(require(exec, "rate_per_gigameter", "exec_cost"), "exec_cost rate");
  } else if (kind == "explicit") {
    instance.exec_cost.kind = ExecCostModel::Kind::kExplicit;
    if (const auto it = exec.find("level_independent"); it != exec.end()) {
      if (!it->is_boolean()) throw ParseError("exec_cost: level_independent must be a boolean");
      instance.exec_cost.level_independent = it->get<bool>();
    }
    for (const auto& e : array_field(exec, "entries", "exec_cost")) {
      ExecCostEntry entry;
      entry.client = string_field(e, "client", "exec_cost entry");
      if (const auto it = e.find("provider"); it != e.end() && !it->is_null()) {
        entry.provider = string_field(e, "provider", "exec_cost entry");
      }
      for (const auto& row : array_field(e, "costs", "exec_cost entry")) {
        entry.costs.push_back(cost_row(row, "exec_cost entry for '" + entry.client + "'"));
      }
      instance.exec_cost.entries.push_back(std::move(entry));
    }
  } else {
    throw ParseError("exec_cost: unknown kind '" + kind + "'");
  }

  const std::string contracting = string_field(root, "contracting", "instance");
  if (contracting == "per_query") {
    instance.contracting = Contracting::kPerQuery;
  } else if (contracting == "bulk") {
    instance.contracting = Contracting::kBulk;
  } else {
    throw ParseError("instance: contracting must be 'per_query' or 'bulk'");
  }

  if (const auto it = root.find("metadata"); it != root.end() && it->is_object()) {
    for (const auto& [key, value] : it->items()) {
      instance.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }

  require_valid(instance);
  return instance;
}

MarketInstance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_text_file(path));
}

std::string dump_instance(const MarketInstance& instance, bool with_metadata, int indent) {
  json root = json::object();
  root["contracting"] = instance.contracting == Contracting::kBulk ? "bulk" : "per_query";

  json dcs = json::array();
  for (const auto& dc : instance.data_centers) {
    json item{{"id", dc.id}};
    if (dc.location) item["location"] = location_json(*dc.location);
    dcs.push_back(std::move(item));
  }
  root["data_centers"] = std::move(dcs);

  json providers = json::array();
  for (const auto& provider : instance.providers) {
    json item{{"id", provider.id}};
    if (provider.location) item["location"] = location_json(*provider.location);
    json levels = json::array();
    for (const auto& level : provider.levels) {
      json l{{"quality", format_decimal(level.quality)}, {"fee", format_decimal(level.per_query_fee)}};
      if (level.bulk_fee) l["bulk_fee"] = format_decimal(*level.bulk_fee);
      levels.push_back(std::move(l));
    }
    item["levels"] = std::move(levels);
    json oper = json::array();
    for (const auto& row : provider.oper_cost) {
      json r = json::array();
      for (const auto& v : row) r.push_back(format_decimal(v));
      oper.push_back(std::move(r));
    }
    item["oper_cost"] = std::move(oper);
    providers.push_back(std::move(item));
  }
  root["providers"] = std::move(providers);

  json clients = json::array();
  for (const auto& client : instance.clients) {
    json item{{"id", client.id}};
    if (client.location) item["location"] = location_json(*client.location);
    json demands = json::object();
    for (const auto& [provider_id, w] : client.demands) demands[provider_id] = format_decimal(w);
    item["demands"] = std::move(demands);
    clients.push_back(std::move(item));
  }
  root["clients"] = std::move(clients);

  json exec = json::object();
  if (instance.exec_cost.kind == ExecCostModel::Kind::kDistance) {
    exec["kind"] = "distance";
    exec["rate_per_gigameter"] = format_decimal(instance.exec_cost.rate_per_gigameter);
  } else {
    exec["kind"] = "explicit";
    exec["level_independent"] = instance.exec_cost.level_independent;
    json entries = json::array();
    for (const auto& entry : instance.exec_cost.entries) {
      json e{{"client", entry.client}};
      if (entry.provider) e["provider"] = *entry.provider;
      json costs = json::array();
      for (const auto& row : entry.costs) {
        if (row.size() == 1) {
          costs.push_back(format_decimal(row.front()));
        } else {
          json r = json::array();
          for (const auto& v : row) r.push_back(format_decimal(v));
          costs.push_back(std::move(r));
        }
      }
      e["costs"] = std::move(costs);
      entries.push_back(std::move(e));
    }
    exec["entries"] = std::move(entries);
  }
  root["exec_cost"] = std::move(exec);

  if (with_metadata && !instance.metadata.empty()) {
    json meta = json::object();
    for (const auto& [key, value] : instance.metadata) meta[key] = value;
    root["metadata"] = std::move(meta);
  }
  return root.dump(indent) + (indent >= 0 ? "\n" : "");
}

void save_instance(const std::filesystem::path& path, const MarketInstance& instance) {
  write_text_file(path, dump_instance(instance));
}

PlanFile parse_plan(const MarketInstance& instance, std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed plan JSON: ") + e.what());
  }
  PlanFile file;
  file.plan = Plan::empty_for(instance);
  for (const auto& p : array_field(root, "providers", "plan")) {
    const std::string id = string_field(p, "id", "plan provider");
    const std::size_t pi = index_of(instance.providers, id, "provider");
    auto& pp = file.plan.providers[pi];
    const std::size_t num_levels = instance.providers[pi].levels.size();
    for (const auto& level : array_field(p, "purchased", "plan provider")) {
      if (!level.is_number_integer() || level.get<long long>() < 1 ||
          static_cast<std::size_t>(level.get<long long>()) > num_levels) {
        throw ParseError("plan provider '" + id + "': purchased level out of range");
      }
      pp.purchased[static_cast<std::size_t>(level.get<long long>() - 1)] = true;
    }
    for (const auto& placement : array_field(p, "placements", "plan provider")) {
      const std::size_t d = index_of(instance.data_centers,
                                     string_field(placement, "data_center", "placement"), "data center");
      const std::size_t l = level_field(placement, "placement");
      if (l >= num_levels) throw ParseError("plan provider '" + id + "': placement level out of range");
      pp.placed[d][l] = true;
    }
  }
  for (const auto& a : array_field(root, "assignments", "plan")) {
    Assignment assignment;
    assignment.client = index_of(instance.clients, string_field(a, "client", "assignment"), "client");
    assignment.provider =
        index_of(instance.providers, string_field(a, "provider", "assignment"), "provider");
    assignment.data_center =
        index_of(instance.data_centers, string_field(a, "data_center", "assignment"), "data center");
    assignment.level = level_field(a, "assignment");
    file.plan.assignments.push_back(assignment);
  }
  if (const auto it = root.find("cost"); it != root.end() && it->is_object()) {
    CostBreakdown cost;
    cost.oper = decimal_field(require(*it, "oper", "plan cost"), "plan cost");
    cost.exec = decimal_field(require(*it, "exec", "plan cost"), "plan cost");
    cost.purch = decimal_field(require(*it, "purch", "plan cost"), "plan cost");
    cost.total = decimal_field(require(*it, "total", "plan cost"), "plan cost");
    file.recorded_cost = cost;
  }
  return file;
}

PlanFile load_plan(const MarketInstance& instance, const std::filesystem::path& path) {
  return parse_plan(instance, read_text_file(path));
}

std::string dump_plan(const MarketInstance& instance, const Plan& plan,
                      const std::optional<CostBreakdown>& cost) {
  json root = json::object();
  json providers = json::array();
  for (std::size_t p = 0; p < plan.providers.size(); ++p) {
    const auto& pp = plan.providers[p];
    json item{{"id", instance.providers[p].id}};
    json purchased = json::array();
    for (std::size_t l = 0; l < pp.purchased.size(); ++l) {
      if (pp.purchased[l]) purchased.push_back(l + 1);
    }
    item["purchased"] = std::move(purchased);
    json placements = json::array();
    for (std::size_t l = 0; l < pp.purchased.size(); ++l) {
      for (std::size_t d = 0; d < pp.placed.size(); ++d) {
        if (pp.placed[d][l]) {
          placements.push_back({{"data_center", instance.data_centers[d].id}, {"level", l + 1}});
        }
      }
    }
    item["placements"] = std::move(placements);
    providers.push_back(std::move(item));
  }
  root["providers"] = std::move(providers);
  json assignments = json::array();
  for (const auto& a : plan.assignments) {
    assignments.push_back({{"client", instance.clients[a.client].id},
                           {"provider", instance.providers[a.provider].id},
                           {"data_center", instance.data_centers[a.data_center].id},
                           {"level", a.level + 1}});
  }
  root["assignments"] = std::move(assignments);
  if (cost) root["cost"] = json::parse(dump_cost(*cost));
  return root.dump(2) + "\n";
}

void save_plan(const std::filesystem::path& path, const MarketInstance& instance, const Plan& plan,
               const std::optional<CostBreakdown>& cost) {
  write_text_file(path, dump_plan(instance, plan, cost));
}

std::string dump_cost(const CostBreakdown& cost) {
  json out{{"oper", format_decimal(cost.oper)},
           {"exec", format_decimal(cost.exec)},
           {"purch", format_decimal(cost.purch)},
           {"total", format_decimal(cost.total)}};
  return out.dump();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace datum
