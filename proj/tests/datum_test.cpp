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

#include "datum/datum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "datum/baselines.hpp"
#include "datum/errors.hpp"
#include "datum/single_dc.hpp"
#include "oracles.hpp"

namespace datum {
namespace {

using testing::instance_g;
using testing::rat;

ProviderSubproblem sub_g() { return split_by_provider(instance_g())[0]; }

TEST(Catalog, TwoDataCenters) {
  const auto catalog = build_subset_catalog(sub_g(), 2);
  ASSERT_EQ(catalog.size(), 3u);
  EXPECT_EQ(catalog.subsets, (std::vector<std::vector<std::size_t>>{{0}, {1}, {0, 1}}));
  EXPECT_EQ(catalog.oper[0][0], rat(5));
  EXPECT_EQ(catalog.oper[1][0], rat(7));
  EXPECT_EQ(catalog.oper[2][0], rat(12));
  EXPECT_EQ(catalog.exec[0][0][0], rat(4));
  EXPECT_EQ(catalog.exec[1][0][0], rat(1));
  EXPECT_EQ(catalog.exec[2][0][0], rat(1));
  EXPECT_EQ(catalog.nearest[2][0][0], 1u);
}

TEST(Catalog, Sizes) {
  EXPECT_EQ(catalog_size(3, 1), 3u);
  EXPECT_EQ(catalog_size(10, 2), 55u);
  EXPECT_EQ(catalog_size(4, 4), 15u);
  EXPECT_EQ(catalog_size(2, 5), 3u);
}

TEST(Catalog, OrderedBySizeThenMembers) {
  std::mt19937_64 rng(3);
  testing::RandomMarketOptions options;
  options.data_centers = 4;
  const auto sub = split_by_provider(testing::random_market(rng, options))[0];
  const auto catalog = build_subset_catalog(sub, 3);
  ASSERT_EQ(catalog.size(), 14u);
  for (std::size_t v = 1; v < catalog.size(); ++v) {
    const auto& a = catalog.subsets[v - 1];
    const auto& b = catalog.subsets[v];
    EXPECT_TRUE(a.size() < b.size() || (a.size() == b.size() && a < b));
  }
}

TEST(Catalog, AggregatesMatchDefinitions) {
  std::mt19937_64 rng(4);
  testing::RandomMarketOptions options;
  options.data_centers = 3;
  options.levels = 3;
  options.clients = 5;
  options.level_independent_exec = false;
  const auto sub = split_by_provider(testing::random_market(rng, options))[0];
  const auto catalog = build_subset_catalog(sub, 3);
  for (std::size_t v = 0; v < catalog.size(); ++v) {
    for (std::size_t l = 0; l < sub.num_levels(); ++l) {
      Rational oper;
      for (const std::size_t d : catalog.subsets[v]) oper += sub.oper[d][l];
      EXPECT_EQ(catalog.oper[v][l], oper);
      for (std::size_t k = 0; k < sub.num_clients(); ++k) {
        const std::size_t near = catalog.nearest[v][k][l];
        for (const std::size_t d : catalog.subsets[v]) {
          EXPECT_LE(sub.exec[k][near][l], sub.exec[k][d][l]);
          if (sub.exec[k][d][l] == sub.exec[k][near][l]) {
            EXPECT_LE(near, d);
          }
        }
        EXPECT_EQ(catalog.exec[v][k][l], sub.exec[k][near][l]);
      }
    }
  }
}

TEST(Catalog, Limits) {
  EXPECT_THROW(build_subset_catalog(sub_g(), 0), std::invalid_argument);
  EXPECT_THROW(build_subset_catalog(sub_g(), 2, 2), CatalogTooLarge);
  EXPECT_EQ(build_subset_catalog(sub_g(), 9).size(), 3u);
}

TEST(TransformedCosts, ConservativeChoice) {
  const auto sub = sub_g();
  const auto catalog = build_subset_catalog(sub, 2);
  EXPECT_EQ(transformed_costs(catalog, sub).beta_star, std::vector<Rational>{rat(5)});
}

TEST(TransformedCosts, ExecutionWeighted) {
  const auto sub = sub_g();
  const auto catalog = build_subset_catalog(sub, 2);
  // min(5 + 4, 7 + 1, 12 + 1)
  EXPECT_EQ(transformed_costs(catalog, sub, rat(1), rat(0)).beta_star, std::vector<Rational>{rat(8)});
}

TEST(TransformedCosts, DecayAcrossLevels) {
  // One client at level 1, two levels, one data center: beta*(2) = beta(2) + mu1 alpha e^{-mu2}.
  MarketInstance m = testing::single_dc_instance(10, 12);
  m.clients.resize(1);
  m.exec_cost.entries.resize(1);
  m.exec_cost.entries[0].costs = {{rat(2)}};
  const auto sub = split_by_provider(m)[0];
  const auto catalog = build_subset_catalog(sub, 1);
  const auto tc = transformed_costs(catalog, sub, rat(1), rat(1));
  EXPECT_EQ(tc.beta_star[0], rat(12));
  EXPECT_EQ(tc.beta_star[1], rat(12) + 2 * from_double(std::exp(-1.0)));
}

TEST(TransformedCosts, ZeroWeightIsMinimumSingleton) {
  std::mt19937_64 rng(5);
  testing::RandomMarketOptions options;
  options.data_centers = 3;
  options.levels = 3;
  for (int trial = 0; trial < 20; ++trial) {
    const auto sub = split_by_provider(testing::random_market(rng, options))[0];
    const auto tc = transformed_costs(build_subset_catalog(sub, 2), sub);
    for (std::size_t l = 0; l < sub.num_levels(); ++l) {
      Rational best = sub.oper[0][l];
      for (const auto& row : sub.oper) best = std::min(best, row[l]);
      EXPECT_EQ(tc.beta_star[l], best);
    }
  }
}

TEST(DatumSteps, InstanceG) {
  const auto sub = sub_g();
  const auto catalog = build_subset_catalog(sub, 2);
  const auto s1 = datum_step1(sub, transformed_costs(catalog, sub));
  EXPECT_EQ(s1.open, std::vector<bool>{true});
  EXPECT_EQ(s1.client_level, std::vector<std::size_t>{0});
  EXPECT_EQ(s1.group(0), std::vector<std::size_t>{0});
  EXPECT_EQ(s1.objective, rat(5 + 2));

  // Scores {1}: 9, {2}: 8, {1,2}: 13.
  const auto joint = datum_step2(sub, catalog, s1);
  EXPECT_EQ(joint.subset[0], 1u);
  EXPECT_EQ(subproblem_cost(sub, joint.lower(sub, catalog)).total, rat(10));
}

TEST(DatumSteps, StepOneMatchesSingleDcOnOneDataCenter) {
  for (const long beta1 : {10L, 1L}) {
    const auto sub = split_by_provider(testing::single_dc_instance(beta1, 12))[0];
    const auto catalog = build_subset_catalog(sub, 2);
    const auto s1 = datum_step1(sub, transformed_costs(catalog, sub));
    const auto direct = solve_single_dc(sub);
    EXPECT_EQ(s1.open, direct.open);
    EXPECT_EQ(s1.objective, direct.objective);
  }
}

TEST(DatumSteps, EmptyGroupPicksCheapestSubset) {
  const auto sub = sub_g();
  const auto catalog = build_subset_catalog(sub, 2);
  StepOneResult s1;
  s1.open = {true};
  const auto joint = datum_step2(sub, catalog, s1);
  EXPECT_EQ(joint.subset[0], 0u);
}

TEST(DatumSteps, StepTwoIsOptimalGivenStepOne) {
  std::mt19937_64 rng(6);
  testing::RandomMarketOptions options;
  options.data_centers = 3;
  options.levels = 3;
  options.clients = 6;
  for (int trial = 0; trial < 50; ++trial) {
    const auto sub = split_by_provider(testing::random_market(rng, options))[0];
    const auto catalog = build_subset_catalog(sub, 3);
    const auto s1 = datum_step1(sub, transformed_costs(catalog, sub));
    const auto joint = datum_step2(sub, catalog, s1);
    const Rational chosen = subproblem_cost(sub, joint.lower(sub, catalog)).total;
    // Enumerate every per-level subset choice for the open levels.
    std::vector<std::size_t> open;
    for (std::size_t l = 0; l < sub.num_levels(); ++l) {
      if (s1.open[l]) open.push_back(l);
    }
    std::vector<std::size_t> pick(open.size(), 0);
    std::optional<Rational> best;
    while (true) {
      JointPlan candidate;
      candidate.subset.assign(sub.num_levels(), std::nullopt);
      candidate.client_level = s1.client_level;
      for (std::size_t i = 0; i < open.size(); ++i) candidate.subset[open[i]] = pick[i];
      const Rational cost = subproblem_cost(sub, candidate.lower(sub, catalog)).total;
      if (!best || cost < *best) best = cost;
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == catalog.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    EXPECT_EQ(chosen, *best);
  }
}

TEST(DatumSolve, InstanceG) {
  const auto solution = datum_solve(instance_g());
  EXPECT_EQ(solution.cost.total, rat(10));
  EXPECT_EQ(solution.cost, opt_cost(instance_g()).cost);
}

TEST(DatumSolve, ExactOnOneDataCenter) {
  std::mt19937_64 rng(8);
  testing::RandomMarketOptions options;
  options.data_centers = 1;
  options.providers = 2;
  options.levels = 4;
  options.clients = 8;
  for (int trial = 0; trial < 50; ++trial) {
    const MarketInstance m = testing::random_market(rng, options);
    Rational expected;
    for (const auto& sub : split_by_provider(m)) {
      expected += solve_single_dc(sub).objective;
      for (const auto& row : sub.exec) expected += row[0][0];
    }
    EXPECT_EQ(datum_solve(m).cost.total, expected);
  }
}

TEST(DatumSolve, NeverBeatsTheOptimum) {
  std::mt19937_64 rng(9);
  testing::RandomMarketOptions options;
  options.providers = 2;
  options.data_centers = 3;
  options.levels = 2;
  options.clients = 5;
  for (int trial = 0; trial < 50; ++trial) {
    const MarketInstance m = testing::random_market(rng, options);
    const auto datum = datum_solve(m);
    EXPECT_FALSE(check_plan(m, datum.plan).has_value());
    EXPECT_GE(datum.cost.total, testing::enumerate_joint(m).total);
  }
}

TEST(DatumBulk, InstanceG) {
  MarketInstance g = instance_g();
  g.contracting = Contracting::kBulk;
  const auto solution = datum_solve_bulk(g);
  EXPECT_EQ(solution.cost.total, rat(10));
  EXPECT_TRUE(solution.plan.providers[0].placed[1][0]);
  EXPECT_EQ(datum_solve(g).cost, solution.cost);
}

TEST(DatumBulk, BuysOnlyTheTopLevel) {
  MarketInstance m = testing::single_dc_instance(10, 10, Contracting::kBulk);
  m.data_centers.push_back({"dc2", {}});
  m.providers[0].oper_cost.push_back({rat(4), rat(4)});
  for (auto& e : m.exec_cost.entries) e.costs.push_back({rat(1)});
  const auto solution = datum_solve_bulk(m);
  EXPECT_EQ(solution.plan.providers[0].purchased, (std::vector<bool>{false, true}));
  EXPECT_EQ(solution.cost.total, rat(4 + 4 + 3));
}

TEST(DatumBulk, ZeroClients) {
  MarketInstance g = instance_g();
  g.contracting = Contracting::kBulk;
  g.clients.clear();
  g.exec_cost.entries.clear();
  const auto solution = datum_solve_bulk(g);
  EXPECT_EQ(solution.cost.total, rat(0));
  EXPECT_EQ(solution.plan.providers[0].purchased, std::vector<bool>{false});
}

TEST(DatumBulk, RejectsLevelDependentCosts) {
  MarketInstance m = testing::single_dc_instance(10, 12, Contracting::kBulk);
  EXPECT_THROW(datum_solve_bulk(m), LevelDependentCosts);
}

}  // namespace
}  // namespace datum
