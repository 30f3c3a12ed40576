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

#ifndef DATUM_TOOLS_CLI_HPP
#define DATUM_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "datum/baselines.hpp"
#include "datum/datum.hpp"
#include "datum/model.hpp"
#include "datum/scenario.hpp"

namespace datum::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalidInstance = 2,
  kOversize = 3,
  kUnknownAlgorithm = 4,
};

class UnknownAlgorithm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AlgorithmOptions {
  DatumConfig datum;
  ExhaustiveBudget budget;
};

/// Sorted names accepted by run_algorithm.
const std::vector<std::string>& algorithm_names();

/// Throws UnknownAlgorithm for names outside algorithm_names().
Solution run_algorithm(std::string_view name, const MarketInstance& instance, const AlgorithmOptions& options);

/// SHA-256 of the canonical instance JSON (sorted keys, compact, metadata excluded).
std::string fingerprint(const MarketInstance& instance);

/// "1-3,7" -> {1, 2, 3, 7}.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// Comma-separated names, validated and sorted. Throws UnknownAlgorithm.
std::vector<std::string> parse_algorithm_list(std::string_view text);

struct ExperimentOptions {
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> algorithms;
  AlgorithmOptions solver;
  /// Wall-clock times make output nondeterministic, so they are opt-in.
  bool timing = false;
};

/// One row per (seed, algorithm), ordered by seed then algorithm name.
/// Per-algorithm means are written to `summary` when given.
std::string compare_csv(const ScenarioParams& base, const ExperimentOptions& options,
                        std::ostream* summary = nullptr);

/// One row per (target, seed, algorithm).
std::string sweep_csv(const ScenarioParams& base, RatioKnob knob, double from, double to, std::size_t steps,
                      const ExperimentOptions& options, std::ostream* summary = nullptr);

/// Full command line; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace datum::cli

#endif  // DATUM_TOOLS_CLI_HPP
