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

#ifndef DATUM_INSTANCE_IO_HPP
#define DATUM_INSTANCE_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "datum/model.hpp"

namespace datum {

// JSON readers throw ParseError on malformed text and InvalidInstance when
// the decoded instance fails validate_instance.

MarketInstance parse_instance(std::string_view json_text);
MarketInstance load_instance(const std::filesystem::path& path);

/// Canonical JSON: sorted keys, decimal strings with six places, no metadata
/// unless `with_metadata` is set. Equal instances produce identical text.
std::string dump_instance(const MarketInstance& instance, bool with_metadata = true, int indent = 2);
void save_instance(const std::filesystem::path& path, const MarketInstance& instance);

struct PlanFile {
  Plan plan;
  /// Totals recorded next to the plan when it was written.
  std::optional<CostBreakdown> recorded_cost;
};

PlanFile parse_plan(const MarketInstance& instance, std::string_view json_text);
PlanFile load_plan(const MarketInstance& instance, const std::filesystem::path& path);
std::string dump_plan(const MarketInstance& instance, const Plan& plan,
                      const std::optional<CostBreakdown>& cost = std::nullopt);
void save_plan(const std::filesystem::path& path, const MarketInstance& instance, const Plan& plan,
               const std::optional<CostBreakdown>& cost = std::nullopt);

/// {"exec": ..., "oper": ..., "purch": ..., "total": ...} with decimal strings.
std::string dump_cost(const CostBreakdown& cost);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace datum

#endif  // DATUM_INSTANCE_IO_HPP
