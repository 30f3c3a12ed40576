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

#include <gtest/gtest.h>

#include <random>

#include "datum/baselines.hpp"
#include "datum/errors.hpp"
#include "oracles.hpp"

namespace datum {
namespace {

using testing::rat;

UflpInstance two_facilities() {
  UflpInstance u;
  u.facility_ids = {"f1", "f2"};
  u.opening = {rat(5), rat(7)};
  u.client_ids = {"c1"};
  u.connection = {{rat(4), rat(1)}};
  return u;
}

UflpInstance random_uflp(std::mt19937_64& rng) {
  auto cents = [&](long lo, long hi) { return rat(std::uniform_int_distribution<long>(lo, hi)(rng), 100); };
  UflpInstance u;
  const std::size_t J = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
  const std::size_t I = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
  for (std::size_t j = 0; j < J; ++j) {
    u.facility_ids.push_back("f" + std::to_string(j + 1));
    u.opening.push_back(cents(0, 3000));
  }
  std::bernoulli_distribution forbid(0.3);
  for (std::size_t i = 0; i < I; ++i) {
    u.client_ids.push_back("c" + std::to_string(i + 1));
    auto& row = u.connection.emplace_back(J);
    for (std::size_t j = 0; j < J; ++j) {
      if (!forbid(rng)) row[j] = cents(0, 1000);
    }
    if (std::none_of(row.begin(), row.end(), [](const auto& c) { return c.has_value(); })) row[0] = cents(0, 1000);
  }
  return u;
}

TEST(ToUflp, InstanceAAtOneDataCenter) {
  const auto sub = split_by_provider(testing::single_dc_instance(10, 12))[0];
  const auto u = to_uflp(sub);
  ASSERT_EQ(u.num_facilities(), 2u);
  EXPECT_EQ(u.opening, (std::vector<Rational>{rat(10), rat(12)}));
  EXPECT_EQ(u.facility_ids, (std::vector<std::string>{"d1:l1", "d1:l2"}));
  ASSERT_EQ(u.num_clients(), 4u);
  EXPECT_EQ(u.connection[0][0], rat(1));
  EXPECT_EQ(u.connection[0][1], rat(3));
  EXPECT_FALSE(u.connection[3][0].has_value());
  EXPECT_EQ(u.connection[3][1], rat(3));
  EXPECT_EQ(testing::enumerate_uflp(u), rat(24));
}

TEST(ToUflp, InstanceG) {
  const MarketInstance g = testing::instance_g();
  const auto u = to_uflp(g, split_by_provider(g)[0]);
  EXPECT_EQ(u.facility_ids, (std::vector<std::string>{"dc1:l1", "dc2:l1"}));
  EXPECT_EQ(u.client_ids, std::vector<std::string>{"c1"});
  EXPECT_EQ(testing::enumerate_uflp(u), rat(10));
}

TEST(ToUflp, OneFacility) {
  const MarketInstance m = testing::single_dc_instance(10, 12);
  MarketInstance one = m;
  one.providers[0].levels.resize(1);
  one.providers[0].oper_cost = {{rat(10)}};
  for (auto& c : one.clients) c.demands["p1"] = rat(1);
  const auto u = to_uflp(split_by_provider(one)[0]);
  ASSERT_EQ(u.num_facilities(), 1u);
  EXPECT_EQ(testing::enumerate_uflp(u), rat(10 + 4 * (1 + 0)));
}

TEST(ToUflp, RejectsBulkContracting) {
  MarketInstance g = testing::instance_g();
  g.contracting = Contracting::kBulk;
  EXPECT_THROW(to_uflp(split_by_provider(g)[0]), InvalidInstance);
}

TEST(ToUflp, PreservesOptimaOnRandomMarkets) {
  std::mt19937_64 rng(31);
  testing::RandomMarketOptions options;
  options.data_centers = 3;
  options.levels = 3;
  options.clients = 5;
  options.level_independent_exec = false;
  for (int trial = 0; trial < 30; ++trial) {
    const MarketInstance m = testing::random_market(rng, options);
    const auto sub = split_by_provider(m)[0];
    EXPECT_EQ(testing::enumerate_uflp(to_uflp(sub)), subproblem_cost(sub, opt_cost_subproblem(sub)).total);
  }
}

TEST(FromUflp, TwoFacilities) {
  const MarketInstance m = from_uflp(two_facilities());
  EXPECT_EQ(m.num_data_centers(), 2u);
  ASSERT_EQ(m.providers.size(), 1u);
  EXPECT_EQ(m.providers[0].levels[0].per_query_fee, rat(0));
  EXPECT_EQ(m.metadata.at("source"), "uflp");
  EXPECT_EQ(opt_cost(m).cost.total, rat(8));
}

TEST(FromUflp, OneFacility) {
  UflpInstance u;
  u.facility_ids = {"only"};
  u.opening = {rat(3)};
  u.client_ids = {"a", "b"};
  u.connection = {{rat(1)}, {rat(2)}};
  EXPECT_EQ(opt_cost(from_uflp(u)).cost.total, rat(6));
}

TEST(FromUflp, RandomRoundTrips) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const auto u = random_uflp(rng);
    const Rational optimum = testing::enumerate_uflp(u);
    const MarketInstance m = from_uflp(u);
    EXPECT_EQ(opt_cost(m).cost.total, optimum);
    EXPECT_EQ(testing::enumerate_uflp(to_uflp(split_by_provider(m)[0])), optimum);
  }
}

TEST(UflpIo, BigM) {
  // 1 + (5 + 7) + max(4, 1)
  EXPECT_EQ(two_facilities().big_m(), rat(17));
}

TEST(UflpIo, SparseRoundTrip) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_uflp(rng);
    const auto back = parse_uflp(dump_uflp(u));
    EXPECT_EQ(back.facility_ids, u.facility_ids);
    EXPECT_EQ(back.opening, u.opening);
    EXPECT_EQ(back.client_ids, u.client_ids);
    EXPECT_EQ(back.connection, u.connection);
  }
}

TEST(UflpIo, DenseExportMaterializesBigM) {
  UflpInstance u = two_facilities();
  u.connection[0][0].reset();
  const auto back = parse_uflp(dump_uflp(u, true));
  EXPECT_EQ(back.connection[0][0], u.big_m());
  EXPECT_EQ(testing::enumerate_uflp(back), testing::enumerate_uflp(u));
}

TEST(UflpIo, Validation) {
  UflpInstance u = two_facilities();
  u.connection[0] = {std::nullopt, std::nullopt};
  EXPECT_THROW(validate_uflp(u), InvalidInstance);
  UflpInstance negative = two_facilities();
  negative.opening[0] = rat(-1);
  EXPECT_THROW(validate_uflp(negative), InvalidInstance);
  EXPECT_THROW(parse_uflp("{\"facilities\": 1}"), ParseError);
  EXPECT_THROW(parse_uflp(R"({"facilities": [], "clients": [{"id": "c", "costs": {"zz": "1"}}]})"), ParseError);
}

}  // namespace
}  // namespace datum
