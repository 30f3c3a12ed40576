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

#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "datum/instance_io.hpp"
#include "datum/uflp.hpp"
#include "oracles.hpp"

namespace datum::cli {
namespace {

namespace fs = std::filesystem;

const std::string kInstanceG = DATUM_TEST_DATA "/instance_g.json";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "datum");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("datum-cli-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

ScenarioParams tiny(std::uint64_t seed = 1) {
  ScenarioParams p;
  p.seed = seed;
  p.num_data_centers = 3;
  p.num_providers = 3;
  p.num_clients = 10;
  p.levels_per_provider = 3;
  return p;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(std::move(fields));
  }
  return rows;
}

TEST(Cli, SolveInstanceG) {
  const auto datum = invoke({"solve", kInstanceG, "--algorithm", "datum"});
  ASSERT_EQ(datum.code, kOk) << datum.err;
  EXPECT_NE(datum.out.find("\"total\":\"10.000000\""), std::string::npos);
  const auto nearest = invoke({"solve", kInstanceG, "-a", "nearestdc"});
  ASSERT_EQ(nearest.code, kOk);
  EXPECT_NE(nearest.out.find("\"total\":\"11.000000\""), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"solve", kInstanceG, "--algorithm", "simplex"}).code, kUnknownAlgorithm);
  EXPECT_EQ(invoke({"solve", DATUM_TEST_DATA "/malformed.json"}).code, kInvalidInstance);
  EXPECT_EQ(invoke({"solve", DATUM_TEST_DATA "/missing.json"}).code, kInvalidInstance);
  EXPECT_EQ(invoke({"solve", kInstanceG, "--algorithm", "single-dc"}).code, kInvalidInstance);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
  ::setenv("DATUM_BUDGET", "1", 1);
  const auto oversize = invoke({"solve", kInstanceG, "--algorithm", "optcost"});
  ::unsetenv("DATUM_BUDGET");
  EXPECT_EQ(oversize.code, kOversize);
  EXPECT_NE(oversize.err.find("at least 4"), std::string::npos);
}

TEST(Cli, FingerprintIgnoresMetadataAndAlgorithm) {
  MarketInstance g = testing::instance_g();
  const std::string print = fingerprint(g);
  EXPECT_EQ(print.size(), 64u);
  EXPECT_EQ(print.find_first_not_of("0123456789abcdef"), std::string::npos);
  g.metadata["note"] = "anything";
  EXPECT_EQ(fingerprint(g), print);
  g.providers[0].oper_cost[0][0] += 1;
  EXPECT_NE(fingerprint(g), print);

  std::string seen;
  for (const auto& name : algorithm_names()) {
    if (name == "single-dc") continue;
    const auto r = invoke({"solve", kInstanceG, "--algorithm", name});
    const auto at = r.out.find("\"fingerprint\":\"");
    ASSERT_NE(at, std::string::npos);
    const std::string value = r.out.substr(at + 15, 64);
    if (seen.empty()) seen = value;
    EXPECT_EQ(value, seen);
  }
}

TEST(Cli, SeedAndAlgorithmLists) {
  EXPECT_EQ(parse_seed_list("1-3,7"), (std::vector<std::uint64_t>{1, 2, 3, 7}));
  EXPECT_EQ(parse_seed_list("5"), std::vector<std::uint64_t>{5});
  EXPECT_THROW(parse_seed_list("3-1"), std::invalid_argument);
  EXPECT_THROW(parse_seed_list("x"), std::invalid_argument);
  EXPECT_EQ(parse_algorithm_list("optcost,datum"), (std::vector<std::string>{"datum", "optcost"}));
  EXPECT_THROW(parse_algorithm_list("datum,magic"), UnknownAlgorithm);
}

TEST(Cli, CompareCsv) {
  ExperimentOptions options;
  options.seeds = {2, 1};
  options.algorithms = {"datum", "nearestdc", "optcost"};
  std::ostringstream summary;
  const auto rows = parse_csv(compare_csv(tiny(), options, &summary));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"seed", "algorithm", "oper", "exec", "purch", "total", "runtime_ms",
                                                "fingerprint", "error"}));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    ASSERT_EQ(rows[r].size(), 9u);
    EXPECT_EQ(rows[r][0], r <= 3 ? "1" : "2");
    EXPECT_EQ(rows[r][1], options.algorithms[(r - 1) % 3]);
    EXPECT_EQ(rows[r][6], "");
    EXPECT_EQ(rows[r][7], rows[r <= 3 ? 1 : 4][7]);
    EXPECT_EQ(rows[r][8], "");
  }
  for (const std::size_t first : {1u, 4u}) {
    EXPECT_GE(parse_decimal(rows[first][5]), parse_decimal(rows[first + 2][5]));  // datum vs optcost
  }
  EXPECT_NE(summary.str().find("datum"), std::string::npos);
}

TEST(Cli, CompareRecordsOversizeRowsWithoutFailing) {
  ExperimentOptions options;
  options.seeds = {1};
  options.algorithms = {"datum", "optcost"};
  options.solver.budget.max_supports = 2;
  const auto rows = parse_csv(compare_csv(tiny(), options));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][8], "");
  EXPECT_FALSE(rows[2][8].empty());
  EXPECT_EQ(rows[2][5], "");
}

TEST(Cli, SweepCsv) {
  ExperimentOptions options;
  options.seeds = {1, 2};
  options.algorithms = {"datum", "optband"};
  ScenarioParams base = tiny();
  base.ratio_internal_to_external = -3;
  const auto rows = parse_csv(sweep_csv(base, RatioKnob::kBandToFee, -2, 2, 5, options));
  ASSERT_EQ(rows.size(), 1u + 5 * 2 * 2);
  EXPECT_EQ(rows[0][0], "knob");
  EXPECT_EQ(rows[1][0], "band_to_fee");
  EXPECT_EQ(rows[1][1], "-2.000000");
  EXPECT_EQ(rows.back()[1], "2.000000");
}

TEST_F(CliFiles, GenerateSolveAndReloadPlan) {
  ASSERT_EQ(invoke({"generate", "--seed", "3", "--data-centers", "2", "--providers", "2", "--clients", "6",
                    "--levels", "2", "--out", path("m.json")})
                .code,
            kOk);
  const auto solved = invoke({"solve", path("m.json"), "--plan-out", path("plan.json")});
  ASSERT_EQ(solved.code, kOk) << solved.err;
  EXPECT_NE(solved.out.find("\"seed\":3"), std::string::npos);
  const auto instance = load_instance(path("m.json"));
  const auto plan = load_plan(instance, path("plan.json"));
  ASSERT_TRUE(plan.recorded_cost.has_value());
  EXPECT_EQ(evaluate_cost(instance, plan.plan), *plan.recorded_cost);
}

TEST_F(CliFiles, ConvertRoundTrip) {
  ASSERT_EQ(invoke({"convert", kInstanceG, "--to-uflp", path("g.uflp.json")}).code, kOk);
  const auto uflp = parse_uflp(read_text_file(path("g.uflp.json")));
  EXPECT_EQ(testing::enumerate_uflp(uflp), testing::rat(10));
  ASSERT_EQ(invoke({"convert", "--from-uflp", path("g.uflp.json"), "--out", path("back.json")}).code, kOk);
  const auto back = invoke({"solve", path("back.json"), "--algorithm", "optcost"});
  EXPECT_NE(back.out.find("\"total\":\"10.000000\""), std::string::npos);
  EXPECT_EQ(invoke({"convert", kInstanceG}).code, kUsage);
  EXPECT_EQ(invoke({"convert", kInstanceG, "--to-uflp", path("x.json"), "--provider", "nope"}).code,
            kInvalidInstance);
}

TEST_F(CliFiles, CompareIsByteDeterministic) {
  const std::vector<std::string> args = {"compare", "--seeds", "1-2", "--data-centers", "2", "--providers", "2",
                                         "--clients", "8", "--levels", "2"};
  auto first = args;
  first.insert(first.end(), {"--out", path("a.csv")});
  auto second = args;
  second.insert(second.end(), {"--out", path("b.csv")});
  ASSERT_EQ(invoke(first).code, kOk);
  ASSERT_EQ(invoke(second).code, kOk);
  EXPECT_EQ(read_text_file(path("a.csv")), read_text_file(path("b.csv")));
}

}  // namespace
}  // namespace datum::cli
