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

#ifndef DATUM_TESTS_ORACLES_HPP
#define DATUM_TESTS_ORACLES_HPP

// Independent reference computations. Nothing here calls the solvers under
// test; everything is plain enumeration straight from the definitions.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "datum/model.hpp"
#include "datum/uflp.hpp"

namespace datum::testing {

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// min over every binary y of sum beta y + sum_i S_i f(lowest open level >= i).
/// Returns nullopt when no support serves every nonempty category (only
/// possible with no levels).
std::optional<Rational> brute_force_single_dc(const std::vector<Rational>& oper, const std::vector<Rational>& fees,
                                              const std::vector<std::size_t>& counts);

/// min over nonempty facility subsets of opening plus cheapest allowed connections.
Rational enumerate_uflp(const UflpInstance& uflp);

struct JointOptimum {
  Rational total;
  /// Operation plus purchasing cost of one optimal plan, per provider.
  std::vector<Rational> oper_plus_purch;
};

/// Exact optimum of the whole market by enumerating every placement of every
/// provider at once (2^(sum D*L) supports; keep instances tiny).
JointOptimum enumerate_joint(const MarketInstance& instance);

/// min over every plan of operation plus execution cost (bandwidth only).
Rational enumerate_bandwidth(const MarketInstance& instance);

/// Cramer's rule on the 2x2 calibration system
///   a*A + b*B = r1*F
///   a*A - r2*b*B = r2*F
/// returning (a, b) = (exec scale, oper scale).
std::pair<double, double> solve_calibration(double A, double B, double F, double r1, double r2);

struct RandomMarketOptions {
  std::size_t providers = 1;
  std::size_t data_centers = 2;
  std::size_t levels = 2;
  std::size_t clients = 3;
  bool level_independent_exec = true;
  bool level_independent_oper = false;
  Contracting contracting = Contracting::kPerQuery;
  /// Probability that a client demands a given provider (at least one is forced).
  double demand_probability = 0.7;
  /// When set, some client demands the top level of every provider.
  bool force_top_category = false;
};

/// Small random market with explicit costs on a 1/100 grid.
MarketInstance random_market(std::mt19937_64& rng, const RandomMarketOptions& options);

/// The two-data-center, one-level example used throughout the tests:
/// beta = (5, 7), alpha = (4, 1), fee 2 (bulk fee 2).
MarketInstance instance_g();

/// One data center, two levels, beta given, fees (1, 3), three clients at
/// level 1 and one at level 2, zero execution cost.
MarketInstance single_dc_instance(long beta1, long beta2, Contracting contracting = Contracting::kPerQuery);

}  // namespace datum::testing

#endif  // DATUM_TESTS_ORACLES_HPP
