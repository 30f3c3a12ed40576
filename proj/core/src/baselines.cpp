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

#include "datum/baselines.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "datum/errors.hpp"

namespace datum {
namespace {

// Costs compared lexicographically. OptCost keeps everything in `primary`;
// OptBand puts purchasing fees in `secondary` so they only break ties.
template <typename V>
struct Score {
  V primary{};
  V secondary{};

  Score& operator+=(const Score& other) {
    primary += other.primary;
    secondary += other.secondary;
    return *this;
  }
  friend Score operator+(Score a, const Score& b) { return a += b; }
  friend bool operator<(const Score& a, const Score& b) {
    return a.primary < b.primary || (a.primary == b.primary && a.secondary < b.secondary);
  }
};

// Facility j = l * D + d, so lower j means lower level, then lower data center.
template <typename V>
struct Search {
  std::size_t num_dcs = 0;
  std::size_t num_levels = 0;
  std::vector<Score<V>> open_cost;                      // [j]
  std::vector<Score<V>> level_fee;                      // [l], bulk only
  std::vector<std::vector<std::optional<Score<V>>>> conn;  // [k][j]

  std::size_t num_facilities() const { return open_cost.size(); }
  std::size_t level_of(std::size_t j) const { return j / num_dcs; }
};

enum class Objective { kFullCost, kBandwidth };

Search<Rational> build_search(const ProviderSubproblem& sub, Objective objective) {
  const bool bulk = sub.contracting == Contracting::kBulk;
  const bool band = objective == Objective::kBandwidth;
  Search<Rational> s;
  s.num_dcs = sub.num_data_centers();
  s.num_levels = sub.num_levels();
  const std::size_t J = s.num_dcs * s.num_levels;
  s.open_cost.resize(J);
  for (std::size_t j = 0; j < J; ++j) s.open_cost[j].primary = sub.oper[j % s.num_dcs][s.level_of(j)];
  s.level_fee.resize(s.num_levels);
  if (bulk) {
    for (std::size_t l = 0; l < s.num_levels; ++l) {
      (band ? s.level_fee[l].secondary : s.level_fee[l].primary) = (*sub.bulk_fees)[l];
    }
  }
  s.conn.assign(sub.num_clients(), std::vector<std::optional<Score<Rational>>>(J));
  for (std::size_t k = 0; k < sub.num_clients(); ++k) {
    for (std::size_t j = 0; j < J; ++j) {
      const std::size_t l = s.level_of(j);
      if (l < sub.min_level[k]) continue;
      Score<Rational> score{sub.exec[k][j % s.num_dcs][l], Rational(0)};
      if (!bulk) (band ? score.secondary : score.primary) += sub.fees[l];
      s.conn[k][j] = score;
    }
  }
  return s;
}

// Scales every cost by the common denominator when the largest possible total
// fits comfortably in 64 bits.
std::optional<Search<std::int64_t>> to_integer(const Search<Rational>& s) {
  mpz_class scale = 1;
  auto visit = [&](const Score<Rational>& score) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), score.primary.get_den_mpz_t());
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), score.secondary.get_den_mpz_t());
  };
  Rational bound;
  for (const auto& c : s.open_cost) {
    visit(c);
    bound += c.primary + c.secondary;
  }
  for (const auto& c : s.level_fee) {
    visit(c);
    bound += c.primary + c.secondary;
  }
  for (const auto& row : s.conn) {
    Rational worst;
    for (const auto& c : row) {
      if (!c) continue;
      visit(*c);
      worst = std::max(worst, Rational(c->primary + c->secondary));
    }
    bound += worst;
  }
  const mpz_class limit = mpz_class(1) << 62;
  if (Rational(bound * scale) >= Rational(limit)) return std::nullopt;

  auto convert = [&](const Score<Rational>& c) {
    const Rational p = c.primary * scale;
    const Rational q = c.secondary * scale;
    return Score<std::int64_t>{static_cast<std::int64_t>(p.get_num().get_si()),
                               static_cast<std::int64_t>(q.get_num().get_si())};
  };
  Search<std::int64_t> out;
  out.num_dcs = s.num_dcs;
  out.num_levels = s.num_levels;
  for (const auto& c : s.open_cost) out.open_cost.push_back(convert(c));
  for (const auto& c : s.level_fee) out.level_fee.push_back(convert(c));
  for (const auto& row : s.conn) {
    auto& dst = out.conn.emplace_back();
    for (const auto& c : row) dst.push_back(c ? std::optional(convert(*c)) : std::nullopt);
  }
  return out;
}

template <typename V>
class BranchAndBound {
 public:
  explicit BranchAndBound(const Search<V>& s) : s_(s) {
    const std::size_t J = s.num_facilities();
    suffix_.assign(s.conn.size(), std::vector<std::optional<Score<V>>>(J + 1));
    for (std::size_t k = 0; k < s.conn.size(); ++k) {
      for (std::size_t j = J; j-- > 0;) {
        suffix_[k][j] = better(suffix_[k][j + 1], s.conn[k][j]);
      }
    }
    chosen_.assign(J, false);
    level_count_.assign(s.num_levels, 0);
  }

  std::vector<bool> run() {
    std::vector<std::optional<Score<V>>> best(s_.conn.size());
    visit(0, Score<V>{}, best);
    return support_;
  }

 private:
  static std::optional<Score<V>> better(const std::optional<Score<V>>& a, const std::optional<Score<V>>& b) {
    if (!a) return b;
    if (!b) return a;
    return *b < *a ? b : a;
  }

  void visit(std::size_t j, const Score<V>& fixed, const std::vector<std::optional<Score<V>>>& best) {
    Score<V> bound = fixed;
    for (std::size_t k = 0; k < best.size(); ++k) {
      const auto reach = better(best[k], suffix_[k][j]);
      if (!reach) return;
      bound += *reach;
    }
    if (incumbent_ && !(bound < *incumbent_)) return;
    if (j == s_.num_facilities()) {
      incumbent_ = bound;
      support_ = chosen_;
      return;
    }

    const std::size_t l = s_.level_of(j);
    Score<V> with = fixed + s_.open_cost[j];
    if (level_count_[l] == 0) with += s_.level_fee[l];
    auto improved = best;
    for (std::size_t k = 0; k < best.size(); ++k) improved[k] = better(best[k], s_.conn[k][j]);
    chosen_[j] = true;
    ++level_count_[l];
    visit(j + 1, with, improved);
    --level_count_[l];
    chosen_[j] = false;

    visit(j + 1, fixed, best);
  }

  const Search<V>& s_;
  std::vector<std::vector<std::optional<Score<V>>>> suffix_;
  std::vector<bool> chosen_;
  std::vector<std::size_t> level_count_;
  std::optional<Score<V>> incumbent_;
  std::vector<bool> support_;
};

void check_budget(const ProviderSubproblem& sub, const ExhaustiveBudget& budget) {
  const std::uint64_t required = required_budget(sub);
  if (required > budget.max_supports) {
    throw OversizeInstance("provider '" + sub.provider_id + "' needs " + std::to_string(required) +
                               " candidate placements; the budget is " +
                               std::to_string(budget.max_supports),
                           required);
  }
}

SubproblemPlan exhaustive(const ProviderSubproblem& sub, const ExhaustiveBudget& budget, Objective objective) {
  SubproblemPlan plan = SubproblemPlan::empty_for(sub);
  if (sub.num_clients() == 0) return plan;
  check_budget(sub, budget);
  if (sub.contracting == Contracting::kBulk && !sub.bulk_fees) {
    throw MissingBulkFees("provider '" + sub.provider_id + "' has no bulk fees");
  }

  const auto search = build_search(sub, objective);
  std::vector<bool> support;
  if (const auto fast = to_integer(search)) {
    support = BranchAndBound<std::int64_t>(*fast).run();
  } else {
    support = BranchAndBound<Rational>(search).run();
  }

  // Each client takes its best open facility (lowest index on ties); unused
  // facilities are dropped.
  const std::size_t D = sub.num_data_centers();
  for (std::size_t k = 0; k < sub.num_clients(); ++k) {
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (!support[j] || !search.conn[k][j]) continue;
      if (!pick || *search.conn[k][j] < *search.conn[k][*pick]) pick = j;
    }
    const std::size_t d = *pick % D;
    const std::size_t l = *pick / D;
    plan.serve[k] = {d, l};
    plan.placed[d][l] = true;
    plan.purchased[l] = true;
  }
  return plan;
}

template <typename Solver>
Solution solve_all(const MarketInstance& instance, Solver solver) {
  const auto subs = split_by_provider(instance);
  std::vector<SubproblemPlan> parts;
  parts.reserve(subs.size());
  for (const auto& sub : subs) parts.push_back(solver(sub));
  Solution solution{assemble_plan(instance, subs, parts), {}};
  solution.cost = evaluate_cost(instance, solution.plan);
  return solution;
}

}  // namespace

ExhaustiveBudget ExhaustiveBudget::from_env() {
  ExhaustiveBudget budget;
  if (const char* text = std::getenv("DATUM_BUDGET"); text != nullptr && *text != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text, &end, 10);
    if (end == nullptr || *end != '\0' || value == 0) {
      throw ParseError(std::string("DATUM_BUDGET must be a positive integer, got '") + text + "'");
    }
    budget.max_supports = value;
  }
  return budget;
}

std::uint64_t required_budget(const ProviderSubproblem& sub) {
  const std::size_t bits = sub.num_data_centers() * sub.num_levels();
  if (bits >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << bits;
}

SubproblemPlan opt_cost_subproblem(const ProviderSubproblem& sub, const ExhaustiveBudget& budget) {
  return exhaustive(sub, budget, Objective::kFullCost);
}

SubproblemPlan opt_band_subproblem(const ProviderSubproblem& sub, const ExhaustiveBudget& budget) {
  return exhaustive(sub, budget, Objective::kBandwidth);
}

SubproblemPlan nearest_dc_subproblem(const ProviderSubproblem& sub) {
  SubproblemPlan plan = SubproblemPlan::empty_for(sub);
  std::vector<std::optional<std::size_t>> home(sub.num_levels());
  for (std::size_t k = 0; k < sub.num_clients(); ++k) {
    const std::size_t l = sub.min_level[k];
    if (!home[l]) {
      std::size_t best = 0;
      for (std::size_t d = 1; d < sub.num_data_centers(); ++d) {
        if (sub.oper[d][l] < sub.oper[best][l]) best = d;
      }
      home[l] = best;
      plan.placed[best][l] = true;
      plan.purchased[l] = true;
    }
    plan.serve[k] = {*home[l], l};
  }
  return plan;
}

Solution opt_cost(const MarketInstance& instance, const ExhaustiveBudget& budget) {
  return solve_all(instance, [&](const ProviderSubproblem& sub) { return opt_cost_subproblem(sub, budget); });
}

Solution opt_band(const MarketInstance& instance, const ExhaustiveBudget& budget) {
  return solve_all(instance, [&](const ProviderSubproblem& sub) { return opt_band_subproblem(sub, budget); });
}

Solution nearest_dc(const MarketInstance& instance) {
  return solve_all(instance, [](const ProviderSubproblem& sub) { return nearest_dc_subproblem(sub); });
}

}  // namespace datum
