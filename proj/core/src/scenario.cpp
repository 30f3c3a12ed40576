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

#include "datum/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

#include "datum/errors.hpp"
#include "datum/geo.hpp"

namespace datum {
namespace {

__extension__ typedef unsigned __int128 uint128;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string fixed6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

std::string numbered(char prefix, std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%c%03zu", prefix, index + 1);
  return buffer;
}

// Distance cost at a calibrated scale, rounded to the decimal grid.
Rational scaled_cost(double scale, double gigameters, const Rational& rate) {
  return quantize(from_double(scale * gigameters, 12) * rate);
}

}  // namespace

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream)
    : state_(mix(seed) ^ mix(stream + 0x9E3779B97F4A7C15ULL)) {}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  const uint128 product = static_cast<uint128>(next()) * bound;
  return static_cast<std::uint64_t>(product >> 64);
}

std::size_t SplitMix64::weighted(std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double target = uniform() * total;
  double running = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    running += weights[i];
    last = i;
    if (target < running) return i;
  }
  return last;
}

void validate_params(const ScenarioParams& params) {
  if (params.num_data_centers == 0 || params.num_data_centers > kDataCenterStates.size()) {
    throw std::invalid_argument("num_data_centers must be between 1 and " +
                                std::to_string(kDataCenterStates.size()));
  }
  if (params.num_providers == 0) throw std::invalid_argument("num_providers must be positive");
  if (params.num_clients == 0) throw std::invalid_argument("num_clients must be positive");
  if (params.levels_per_provider == 0) throw std::invalid_argument("levels_per_provider must be positive");
  const double avg = params.avg_providers_per_client.value_or(params.num_providers / 2.0);
  if (!(avg > 0) || avg > static_cast<double>(params.num_providers)) {
    throw std::invalid_argument("avg_providers_per_client must be in (0, num_providers]");
  }
  if (!(params.zipf_shape >= 0)) throw std::invalid_argument("zipf_shape must be nonnegative");
  if (!(params.pareto_shape > 1)) throw std::invalid_argument("pareto_shape must exceed 1 for a finite mean");
  if (!(params.pareto_mean > 0)) throw std::invalid_argument("pareto_mean must be positive");
  if (sgn(params.rate_per_gigameter) <= 0) throw std::invalid_argument("rate_per_gigameter must be positive");
  if (params.max_replicas == 0) throw std::invalid_argument("max_replicas must be positive");
}

std::vector<double> zipf_level_weights(std::size_t levels, double shape) {
  const long center = std::clamp<long>(std::lround(levels / 2.0), 1, static_cast<long>(levels));
  std::vector<long> order(levels);
  std::iota(order.begin(), order.end(), 1L);
  std::stable_sort(order.begin(), order.end(),
                   [&](long a, long b) { return std::labs(a - center) < std::labs(b - center); });
  std::vector<double> weights(levels);
  double total = 0;
  for (std::size_t r = 0; r < levels; ++r) {
    const double w = std::pow(static_cast<double>(r + 1), -shape);
    weights[static_cast<std::size_t>(order[r] - 1)] = w;
    total += w;
  }
  for (auto& w : weights) w /= total;
  return weights;
}

double pareto_scale(double mean, double shape) {
  if (!(shape > 1)) throw std::invalid_argument("Pareto mean is infinite for shape <= 1");
  return mean * (shape - 1) / shape;
}

CalibrationSums calibration_sums(const MarketInstance& instance) {
  CalibrationSums sums;
  for (const auto& sub : split_by_provider(instance)) {
    const double D = static_cast<double>(sub.num_data_centers());
    const double L = static_cast<double>(sub.num_levels());
    double oper = 0;
    for (const auto& row : sub.oper) {
      for (const auto& v : row) oper += to_double(v);
    }
    sums.oper += oper / (D * L);
    for (std::size_t k = 0; k < sub.num_clients(); ++k) {
      const std::size_t own = sub.min_level[k];
      double exec = 0;
      for (std::size_t d = 0; d < sub.num_data_centers(); ++d) exec += to_double(sub.exec[k][d][own]);
      sums.exec += exec / D;
      sums.fees += to_double(sub.fees[own]);
    }
  }
  return sums;
}

CalibrationScales calibration_scales(const CalibrationSums& raw, double band_to_fee, double internal_to_external) {
  const double r1 = std::pow(10.0, band_to_fee);
  const double r2 = std::pow(10.0, internal_to_external);
  if (!(raw.exec > 0) || !(raw.oper > 0) || !(raw.fees > 0)) {
    throw InvalidRatioTargets("calibration needs positive execution, operation and fee totals");
  }
  CalibrationScales scales;
  scales.oper = raw.fees * (r1 - r2) / (raw.oper * (1 + r2));
  scales.exec = r2 * (scales.oper * raw.oper + raw.fees) / raw.exec;
  if (!(scales.oper > 0) || !(scales.exec > 0) || !std::isfinite(scales.oper) || !std::isfinite(scales.exec)) {
    throw InvalidRatioTargets("ratio targets band_to_fee=" + fixed6(band_to_fee) + ", internal_to_external=" +
                              fixed6(internal_to_external) +
                              " have no positive solution (band_to_fee must exceed internal_to_external)");
  }
  return scales;
}

MarketInstance generate(const ScenarioParams& params) {
  validate_params(params);
  const std::size_t D = params.num_data_centers;
  const std::size_t P = params.num_providers;
  const std::size_t C = params.num_clients;
  const std::size_t L = params.levels_per_provider;

  SplitMix64 client_rng(params.seed, static_cast<std::uint64_t>(ScenarioPhase::kClients));
  SplitMix64 demand_rng(params.seed, static_cast<std::uint64_t>(ScenarioPhase::kDemands));
  SplitMix64 level_rng(params.seed, static_cast<std::uint64_t>(ScenarioPhase::kLevels));
  SplitMix64 fee_rng(params.seed, static_cast<std::uint64_t>(ScenarioPhase::kFees));

  MarketInstance instance;
  std::vector<GeoPoint> provider_sites;
  for (std::size_t d = 0; d < D; ++d) {
    const City& city = city_by_rank(kDataCenterStates[d], 0);
    instance.data_centers.push_back({numbered('d', d), GeoPoint{city.lat, city.lon}});
  }
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t rank = 1; rank <= 2; ++rank) {
      const City& city = city_by_rank(kDataCenterStates[d], rank);
      provider_sites.push_back({city.lat, city.lon});
    }
  }

  // Clients: cities drawn proportionally to population.
  const auto cities = city_table();
  std::uint64_t total_population = 0;
  for (const auto& city : cities) total_population += city.population;
  for (std::size_t c = 0; c < C; ++c) {
    std::uint64_t ticket = client_rng.below(total_population);
    std::size_t pick = 0;
    while (ticket >= cities[pick].population) ticket -= cities[pick++].population;
    instance.clients.push_back({numbered('c', c), {}, GeoPoint{cities[pick].lat, cities[pick].lon}});
  }

  // Demands: each provider independently, redrawn until the client has one.
  const double avg = params.avg_providers_per_client.value_or(P / 2.0);
  const double include = avg / static_cast<double>(P);
  std::vector<std::vector<std::size_t>> wanted(C);
  for (std::size_t c = 0; c < C; ++c) {
    while (wanted[c].empty()) {
      for (std::size_t p = 0; p < P; ++p) {
        if (demand_rng.uniform() < include) wanted[c].push_back(p);
      }
    }
  }

  // Fees: sorted Pareto draws, nudged to stay strictly increasing on the grid.
  const double scale = pareto_scale(params.pareto_mean, params.pareto_shape);
  const Rational step(1, 1000000);
  std::vector<std::vector<Rational>> fees(P);
  for (std::size_t p = 0; p < P; ++p) {
    std::vector<double> draws(L);
    for (auto& x : draws) x = scale / std::pow(1.0 - fee_rng.uniform(), 1.0 / params.pareto_shape);
    std::sort(draws.begin(), draws.end());
    for (std::size_t l = 0; l < L; ++l) {
      Rational fee = from_double(draws[l]);
      if (l > 0 && fee <= fees[p].back()) fee = fees[p].back() + step;
      fees[p].push_back(std::move(fee));
    }
  }

  // Requested levels, client-major then provider order.
  const auto level_weights = zipf_level_weights(L, params.zipf_shape);
  std::vector<std::vector<std::size_t>> requested(C);
  for (std::size_t c = 0; c < C; ++c) {
    for (std::size_t i = 0; i < wanted[c].size(); ++i) requested[c].push_back(level_rng.weighted(level_weights));
  }

  // Raw distance costs, then calibration over the aggregates.
  const double rate = to_double(params.rate_per_gigameter);
  std::vector<std::vector<double>> oper_raw(P, std::vector<double>(D));
  std::vector<std::vector<double>> exec_raw(C, std::vector<double>(D));
  for (std::size_t p = 0; p < P; ++p) {
    const GeoPoint& site = provider_sites[p % provider_sites.size()];
    for (std::size_t d = 0; d < D; ++d) {
      oper_raw[p][d] = haversine_gigameters(site, *instance.data_centers[d].location);
    }
  }
  for (std::size_t c = 0; c < C; ++c) {
    for (std::size_t d = 0; d < D; ++d) {
      exec_raw[c][d] = haversine_gigameters(*instance.data_centers[d].location, *instance.clients[c].location);
    }
  }
  CalibrationSums raw;
  for (std::size_t p = 0; p < P; ++p) {
    raw.oper += rate * std::accumulate(oper_raw[p].begin(), oper_raw[p].end(), 0.0) / static_cast<double>(D);
  }
  for (std::size_t c = 0; c < C; ++c) {
    const double mean_exec = rate * std::accumulate(exec_raw[c].begin(), exec_raw[c].end(), 0.0) / static_cast<double>(D);
    for (std::size_t i = 0; i < wanted[c].size(); ++i) {
      raw.exec += mean_exec;
      raw.fees += to_double(fees[wanted[c][i]][requested[c][i]]);
    }
  }
  const auto scales = calibration_scales(raw, params.ratio_band_to_fee, params.ratio_internal_to_external);

  for (std::size_t p = 0; p < P; ++p) {
    Provider provider;
    provider.id = numbered('p', p);
    const GeoPoint& site = provider_sites[p % provider_sites.size()];
    provider.location = site;
    for (std::size_t l = 0; l < L; ++l) {
      provider.levels.push_back({Rational(static_cast<unsigned long>(l + 1)), fees[p][l], std::nullopt});
    }
    for (std::size_t d = 0; d < D; ++d) {
      provider.oper_cost.emplace_back(L, scaled_cost(scales.oper, oper_raw[p][d], params.rate_per_gigameter));
    }
    instance.providers.push_back(std::move(provider));
  }

  instance.exec_cost.kind = ExecCostModel::Kind::kExplicit;
  instance.exec_cost.level_independent = true;
  for (std::size_t c = 0; c < C; ++c) {
    auto& client = instance.clients[c];
    for (std::size_t i = 0; i < wanted[c].size(); ++i) {
      client.demands[instance.providers[wanted[c][i]].id] = Rational(static_cast<unsigned long>(requested[c][i] + 1));
    }
    ExecCostEntry entry;
    entry.client = client.id;
    for (std::size_t d = 0; d < D; ++d) {
      entry.costs.push_back({scaled_cost(scales.exec, exec_raw[c][d], params.rate_per_gigameter)});
    }
    instance.exec_cost.entries.push_back(std::move(entry));
  }

  auto& meta = instance.metadata;
  meta["generator"] = "datum scenario";
  meta["seed"] = std::to_string(params.seed);
  meta["num_data_centers"] = std::to_string(D);
  meta["num_providers"] = std::to_string(P);
  meta["num_clients"] = std::to_string(C);
  meta["levels_per_provider"] = std::to_string(L);
  meta["avg_providers_per_client"] = fixed6(avg);
  meta["zipf_shape"] = fixed6(params.zipf_shape);
  meta["pareto_mean"] = fixed6(params.pareto_mean);
  meta["pareto_shape"] = fixed6(params.pareto_shape);
  meta["rate_per_gigameter"] = format_decimal(params.rate_per_gigameter);
  meta["ratio_band_to_fee"] = fixed6(params.ratio_band_to_fee);
  meta["ratio_internal_to_external"] = fixed6(params.ratio_internal_to_external);
  meta["max_replicas"] = std::to_string(params.max_replicas);

  require_valid(instance);
  return instance;
}

std::vector<ScenarioParams> sweep_params(const ScenarioParams& base, RatioKnob knob, double from, double to,
                                         std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("a sweep needs at least two steps");
  std::vector<ScenarioParams> out;
  for (std::size_t i = 0; i < steps; ++i) {
    const double target = i + 1 == steps ? to : from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    ScenarioParams params = base;
    (knob == RatioKnob::kBandToFee ? params.ratio_band_to_fee : params.ratio_internal_to_external) = target;
    if (!(params.ratio_band_to_fee > params.ratio_internal_to_external)) {
      throw InvalidRatioTargets("sweep point band_to_fee=" + fixed6(params.ratio_band_to_fee) +
                                " does not exceed internal_to_external=" +
                                fixed6(params.ratio_internal_to_external));
    }
    out.push_back(std::move(params));
  }
  return out;
}

const char* to_string(RatioKnob knob) {
  return knob == RatioKnob::kBandToFee ? "band_to_fee" : "internal_to_external";
}

std::optional<RatioKnob> parse_ratio_knob(std::string_view name) {
  if (name == "band_to_fee") return RatioKnob::kBandToFee;
  if (name == "internal_to_external") return RatioKnob::kInternalToExternal;
  return std::nullopt;
}

}  // namespace datum
