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

#ifndef DATUM_SCENARIO_HPP
#define DATUM_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "datum/model.hpp"
#include "datum/rational.hpp"

namespace datum {

struct City {
  std::string_view name;
  std::string_view state;  // two-letter postal code
  double lat;
  double lon;
  std::uint32_t population;
};

/// Embedded US city records, ordered by descending population.
std::span<const City> city_table();

/// The `rank`-th most populous city of a state in the table (0 = largest).
const City& city_by_rank(std::string_view state, std::size_t rank);

/// States hosting data centers, in the order data centers are created.
inline constexpr std::array<std::string_view, 10> kDataCenterStates = {
    "CA", "WA", "OR", "IL", "GA", "VA", "TX", "FL", "NC", "SC"};

/// SplitMix64. Each generation phase draws from its own stream, derived from
/// (seed, phase), so adding draws to one phase never shifts another.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [0, bound) by 128-bit multiply-shift.
  std::uint64_t below(std::uint64_t bound);
  /// Index drawn with probability proportional to `weights`.
  std::size_t weighted(std::span<const double> weights);

 private:
  std::uint64_t state_;
};

enum class ScenarioPhase : std::uint64_t { kClients = 1, kDemands = 2, kLevels = 3, kFees = 4 };

struct ScenarioParams {
  std::uint64_t seed = 1;
  std::size_t num_data_centers = 10;
  std::size_t num_providers = 20;
  std::size_t num_clients = 100;
  std::size_t levels_per_provider = 8;
  /// Expected number of providers per client; defaults to half the providers.
  std::optional<double> avg_providers_per_client;
  double zipf_shape = 30;
  double pareto_mean = 10;
  double pareto_shape = 2;
  Rational rate_per_gigameter = 1;
  /// log10((alpha + beta) / f)
  double ratio_band_to_fee = -0.5;
  /// log10(alpha / (beta + f))
  double ratio_internal_to_external = -1;
  /// Recorded in the metadata for solvers; does not affect generation.
  std::size_t max_replicas = 2;
};

/// Throws std::invalid_argument for out-of-range counts or distribution parameters.
void validate_params(const ScenarioParams& params);

/// Probability of each level (0-based) being requested: levels are ranked by
/// distance from round(L/2) (ties toward the lower level) and rank r has
/// weight r^-shape.
std::vector<double> zipf_level_weights(std::size_t levels, double shape);

/// Pareto scale giving the requested mean: mean * (shape - 1) / shape.
double pareto_scale(double mean, double shape);

/// Aggregates the calibration targets are expressed in:
/// exec = sum over demands of the mean execution cost across data centers,
/// oper = sum over providers of the mean operation cost across (d, l),
/// fees = sum over demands of the fee of the requested level.
struct CalibrationSums {
  double exec = 0;
  double oper = 0;
  double fees = 0;
};

CalibrationSums calibration_sums(const MarketInstance& instance);

struct CalibrationScales {
  double oper = 0;
  double exec = 0;
};

/// Scales s_oper, s_exec with (s_exec A + s_oper B) / F = 10^band_to_fee and
/// s_exec A / (s_oper B + F) = 10^internal_to_external.
/// Throws InvalidRatioTargets unless both are positive.
CalibrationScales calibration_scales(const CalibrationSums& raw, double band_to_fee, double internal_to_external);

/// Deterministic synthetic market. Throws InvalidRatioTargets.
MarketInstance generate(const ScenarioParams& params);

enum class RatioKnob { kBandToFee, kInternalToExternal };

/// `steps` evenly spaced targets from `from` to `to` for one ratio, all other
/// parameters (including the seed) unchanged.
std::vector<ScenarioParams> sweep_params(const ScenarioParams& base, RatioKnob knob, double from, double to,
                                         std::size_t steps);

const char* to_string(RatioKnob knob);
std::optional<RatioKnob> parse_ratio_knob(std::string_view name);

}  // namespace datum

#endif  // DATUM_SCENARIO_HPP
