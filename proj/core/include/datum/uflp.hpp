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

#ifndef DATUM_UFLP_HPP
#define DATUM_UFLP_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "datum/model.hpp"

namespace datum {

/// Uncapacitated facility location. A missing connection is a forbidden edge;
/// big-M values exist only in dense exports.
struct UflpInstance {
  std::vector<std::string> facility_ids;
  std::vector<Rational> opening;
  std::vector<std::string> client_ids;
  /// connection[i][j]: cost of serving client i from facility j.
  std::vector<std::vector<std::optional<Rational>>> connection;

  std::size_t num_facilities() const { return opening.size(); }
  std::size_t num_clients() const { return connection.size(); }

  /// 1 + total opening cost + sum over clients of their largest allowed cost.
  /// Any solution using a forbidden edge priced at M is worse than every
  /// solution that avoids them.
  Rational big_m() const;
};

/// Throws InvalidInstance on negative costs, ragged rows, duplicate ids or a
/// client without an allowed facility.
void validate_uflp(const UflpInstance& uflp);

/// Facilities are (data center, level) pairs named "d<k>:l<m>"; clients "c<k>".
/// Requires per-query contracting.
UflpInstance to_uflp(const ProviderSubproblem& sub);
/// Same, named after the instance's data-center and client ids.
UflpInstance to_uflp(const MarketInstance& instance, const ProviderSubproblem& sub);

/// One provider with a single free level; facilities become data centers.
/// Forbidden edges are priced at big_m().
MarketInstance from_uflp(const UflpInstance& uflp);

/// Sparse: each client maps allowed facility ids to costs. Dense: each client
/// lists one cost per facility, forbidden edges replaced by big_m().
std::string dump_uflp(const UflpInstance& uflp, bool dense = false);
/// Accepts both layouts. Throws ParseError, InvalidInstance.
UflpInstance parse_uflp(std::string_view json_text);

}  // namespace datum

#endif  // DATUM_UFLP_HPP
