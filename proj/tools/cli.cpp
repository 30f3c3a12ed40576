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

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "datum/errors.hpp"
#include "datum/instance_io.hpp"
#include "datum/single_dc.hpp"
#include "datum/uflp.hpp"
#include "json.hpp"

namespace datum::cli {
namespace {

using Clock = std::chrono::steady_clock;
using Solver = std::function<Solution(const MarketInstance&, const AlgorithmOptions&)>;

Solution single_dc_solve(const MarketInstance& instance) {
  const auto subs = split_by_provider(instance);
  std::vector<SubproblemPlan> parts;
  for (const auto& sub : subs) {
    if (sub.num_clients() == 0) {
      parts.push_back(SubproblemPlan::empty_for(sub));
      continue;
    }
    const auto plan = sub.contracting == Contracting::kBulk ? solve_single_dc_bulk(sub) : solve_single_dc(sub);
    parts.push_back(to_subproblem_plan(sub, plan));
  }
  Solution solution{assemble_plan(instance, subs, parts), {}};
  solution.cost = evaluate_cost(instance, solution.plan);
  return solution;
}

const std::map<std::string, Solver, std::less<>>& registry() {
  static const std::map<std::string, Solver, std::less<>> solvers = {
      {"datum", [](const MarketInstance& i, const AlgorithmOptions& o) { return datum_solve(i, o.datum); }},
      {"nearestdc", [](const MarketInstance& i, const AlgorithmOptions&) { return nearest_dc(i); }},
      {"optband", [](const MarketInstance& i, const AlgorithmOptions& o) { return opt_band(i, o.budget); }},
      {"optcost", [](const MarketInstance& i, const AlgorithmOptions& o) { return opt_cost(i, o.budget); }},
      {"single-dc", [](const MarketInstance& i, const AlgorithmOptions&) { return single_dc_solve(i); }},
  };
  return solvers;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string quoted = "\"";
  for (const char ch : value) {
    if (ch == '"') quoted += '"';
    quoted += ch == '\n' || ch == '\r' ? ' ' : ch;
  }
  return quoted + "\"";
}

std::string fixed(double value, int places) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", places, value);
  return buffer;
}

struct Outcome {
  std::optional<CostBreakdown> cost;
  double runtime_ms = 0;
  std::string error;
};

Outcome attempt(const std::string& algorithm, const MarketInstance& instance, const AlgorithmOptions& options) {
  Outcome outcome;
  const auto start = Clock::now();
  try {
    outcome.cost = run_algorithm(algorithm, instance, options).cost;
  } catch (const Error& e) {
    outcome.error = e.what();
  }
  outcome.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return outcome;
}

// Running per-algorithm means for the stderr summary.
class Summary {
 public:
  void add(const std::string& key, const Outcome& outcome) {
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
    if (it == entries_.end()) it = entries_.insert(entries_.end(), {key, Entry{}});
    auto& entry = it->second;
    if (!outcome.cost) {
      ++entry.errors;
      return;
    }
    entry.total += outcome.cost->total;
    ++entry.count;
  }

  void write(std::ostream& out, const std::string& title) const {
    out << title << '\n';
    for (const auto& [key, entry] : entries_) {
      out << "  " << key << ": mean total "
          << (entry.count == 0 ? std::string("n/a")
                               : format_decimal(entry.total / Rational(static_cast<unsigned long>(entry.count))))
          << " over " << entry.count << " run(s)";
      if (entry.errors > 0) out << ", " << entry.errors << " error(s)";
      out << '\n';
    }
  }

 private:
  struct Entry {
    Rational total;
    std::size_t count = 0;
    std::size_t errors = 0;
  };
  // First-seen order, so sweep targets stay numeric.
  std::vector<std::pair<std::string, Entry>> entries_;
};

std::string cost_fields(const Outcome& o, bool total_first) {
  if (!o.cost) return ",,,";
  const auto& c = *o.cost;
  if (total_first) {
    return format_decimal(c.total) + "," + format_decimal(c.oper) + "," + format_decimal(c.exec) + "," +
           format_decimal(c.purch);
  }
  return format_decimal(c.oper) + "," + format_decimal(c.exec) + "," + format_decimal(c.purch) + "," +
         format_decimal(c.total);
}

std::vector<std::uint64_t> sorted_seeds(std::vector<std::uint64_t> seeds) {
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return seeds;
}

void print_violations(const InvalidInstance& e, std::ostream& err) {
  err << "invalid instance:\n";
  for (const auto& v : e.violations()) err << "  " << v << '\n';
}

// Flags shared by generate, compare and sweep.
struct ScenarioFlags {
  ScenarioParams params;
  double avg_providers = -1;
  std::string rate = "1";

  void attach(CLI::App& app, bool with_seed) {
    if (with_seed) app.add_option("--seed", params.seed, "Generator seed")->capture_default_str();
    app.add_option("--data-centers", params.num_data_centers, "Number of data centers (1-10)")->capture_default_str();
    app.add_option("--providers", params.num_providers, "Number of data providers")->capture_default_str();
    app.add_option("--clients", params.num_clients, "Number of clients")->capture_default_str();
    app.add_option("--levels", params.levels_per_provider, "Quality levels per provider")->capture_default_str();
    app.add_option("--avg-providers", avg_providers, "Expected providers per client (default: half)");
    app.add_option("--zipf-shape", params.zipf_shape, "Shape of the requested-level distribution")
        ->capture_default_str();
    app.add_option("--pareto-mean", params.pareto_mean, "Mean per-query fee")->capture_default_str();
    app.add_option("--pareto-shape", params.pareto_shape, "Fee tail shape")->capture_default_str();
    app.add_option("--rate", rate, "Cost per gigameter")->capture_default_str();
    app.add_option("--ratio-bf", params.ratio_band_to_fee, "Target log10((alpha+beta)/f)")->capture_default_str();
    app.add_option("--ratio-ie", params.ratio_internal_to_external, "Target log10(alpha/(beta+f))")
        ->capture_default_str();
  }

  ScenarioParams resolve() const {
    ScenarioParams out = params;
    if (avg_providers > 0) out.avg_providers_per_client = avg_providers;
    out.rate_per_gigameter = parse_decimal(rate);
    return out;
  }
};

struct SolverFlags {
  std::size_t max_replicas = 2;
  std::string mu1 = "0";
  std::string mu2 = "0";

  void attach(CLI::App& app) {
    app.add_option("--max-replicas", max_replicas, "Largest replica set per level (datum)")->capture_default_str();
    app.add_option("--mu1", mu1, "Execution-cost weight in the transformed cost (datum)")->capture_default_str();
    app.add_option("--mu2", mu2, "Decay rate of that weight across levels (datum)")->capture_default_str();
  }

  AlgorithmOptions resolve() const {
    AlgorithmOptions options;
    options.datum.max_replicas = max_replicas;
    options.datum.mu1 = parse_decimal(mu1);
    options.datum.mu2 = parse_decimal(mu2);
    options.budget = ExhaustiveBudget::from_env();
    return options;
  }
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

}  // namespace

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, solver] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

Solution run_algorithm(std::string_view name, const MarketInstance& instance, const AlgorithmOptions& options) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UnknownAlgorithm("unknown algorithm '" + std::string(name) + "'");
  return it->second(instance, options);
}

std::string fingerprint(const MarketInstance& instance) {
  const std::string canonical = dump_instance(instance, false, -1);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  auto number = [&](std::string_view part) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("bad seed '" + std::string(part) + "'");
    }
    return std::stoull(std::string(part));
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view part = text.substr(start, comma - start);
    if (const std::size_t dash = part.find('-'); dash != std::string_view::npos) {
      const auto lo = number(part.substr(0, dash));
      const auto hi = number(part.substr(dash + 1));
      if (hi < lo) throw std::invalid_argument("empty seed range '" + std::string(part) + "'");
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(number(part));
    }
    start = comma + 1;
  }
  return seeds;
}

std::vector<std::string> parse_algorithm_list(std::string_view text) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string name(text.substr(start, comma - start));
    if (!registry().contains(name)) throw UnknownAlgorithm("unknown algorithm '" + name + "'");
    names.push_back(std::move(name));
    start = comma + 1;
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

std::string compare_csv(const ScenarioParams& base, const ExperimentOptions& options, std::ostream* summary) {
  std::ostringstream csv;
  csv << "seed,algorithm,oper,exec,purch,total,runtime_ms,fingerprint,error\n";
  Summary means;
  for (const auto seed : sorted_seeds(options.seeds)) {
    ScenarioParams params = base;
    params.seed = seed;
    const auto instance = generate(params);
    const auto print = fingerprint(instance);
    for (const auto& algorithm : options.algorithms) {
      const auto outcome = attempt(algorithm, instance, options.solver);
      means.add(algorithm, outcome);
      csv << seed << ',' << algorithm << ',' << cost_fields(outcome, false) << ','
          << (options.timing ? fixed(outcome.runtime_ms, 3) : "") << ',' << print << ','
          << csv_field(outcome.error) << '\n';
    }
  }
  if (summary) means.write(*summary, "mean total by algorithm:");
  return csv.str();
}

std::string sweep_csv(const ScenarioParams& base, RatioKnob knob, double from, double to, std::size_t steps,
                      const ExperimentOptions& options, std::ostream* summary) {
  std::ostringstream csv;
  csv << "knob,target,seed,algorithm,total,oper,exec,purch,runtime_ms,fingerprint,error\n";
  Summary means;
  for (const auto& point : sweep_params(base, knob, from, to, steps)) {
    const double target =
        knob == RatioKnob::kBandToFee ? point.ratio_band_to_fee : point.ratio_internal_to_external;
    for (const auto seed : sorted_seeds(options.seeds)) {
      ScenarioParams params = point;
      params.seed = seed;
      const auto instance = generate(params);
      const auto print = fingerprint(instance);
      for (const auto& algorithm : options.algorithms) {
        const auto outcome = attempt(algorithm, instance, options.solver);
        means.add(fixed(target, 3) + " " + algorithm, outcome);
        csv << to_string(knob) << ',' << fixed(target, 6) << ',' << seed << ',' << algorithm << ','
            << cost_fields(outcome, true) << ',' << (options.timing ? fixed(outcome.runtime_ms, 3) : "") << ','
            << print << ',' << csv_field(outcome.error) << '\n';
      }
    }
  }
  if (summary) means.write(*summary, "mean total by target and algorithm:");
  return csv.str();
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cost optimization for geo-distributed data markets", "datum"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic market instance");
  ScenarioFlags gen_flags;
  gen_flags.attach(*gen, true);
  std::string gen_out;
  gen->add_option("--out", gen_out, "Output path (default: stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one instance and print a run record");
  std::string solve_instance;
  std::string solve_algorithm = "datum";
  std::string plan_out;
  SolverFlags solve_flags;
  solve->add_option("instance", solve_instance, "Instance JSON")->required();
  solve->add_option("--algorithm,-a", solve_algorithm, "datum|optcost|optband|nearestdc|single-dc")
      ->capture_default_str();
  solve->add_option("--plan-out", plan_out, "Write the plan JSON here");
  solve_flags.attach(*solve);

  // compare
  auto* compare = app.add_subcommand("compare", "Run algorithms over generated instances, emit CSV");
  ScenarioFlags compare_flags;
  compare_flags.attach(*compare, false);
  SolverFlags compare_solver;
  compare_solver.attach(*compare);
  std::string compare_seeds = "1-20";
  std::string compare_algorithms = "datum,nearestdc,optband,optcost";
  std::string compare_out;
  bool compare_timing = false;
  compare->add_option("--seeds", compare_seeds, "Seed list, e.g. 1-20,25")->capture_default_str();
  compare->add_option("--algorithms", compare_algorithms, "Comma-separated algorithms")->capture_default_str();
  compare->add_option("--out", compare_out, "CSV path (default: stdout)");
  compare->add_flag("--timing", compare_timing, "Fill runtime_ms (makes output nondeterministic)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Vary one cost ratio, emit CSV");
  ScenarioFlags sweep_flags;
  sweep_flags.attach(*sweep, false);
  SolverFlags sweep_solver;
  sweep_solver.attach(*sweep);
  std::string knob_name = "band_to_fee";
  double sweep_from = -2;
  double sweep_to = 2;
  std::size_t sweep_steps = 5;
  std::string sweep_seeds = "1-20";
  std::string sweep_algorithms = "datum,nearestdc,optband,optcost";
  std::string sweep_out;
  bool sweep_timing = false;
  sweep->add_option("--knob", knob_name, "band_to_fee|internal_to_external")->capture_default_str();
  sweep->add_option("--from", sweep_from, "First log10 target")->capture_default_str();
  sweep->add_option("--to", sweep_to, "Last log10 target")->capture_default_str();
  sweep->add_option("--steps", sweep_steps, "Number of targets (>= 2)")->capture_default_str();
  sweep->add_option("--seeds", sweep_seeds, "Seed list")->capture_default_str();
  sweep->add_option("--algorithms", sweep_algorithms, "Comma-separated algorithms")->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV path (default: stdout)");
  sweep->add_flag("--timing", sweep_timing, "Fill runtime_ms");

  // convert
  auto* convert = app.add_subcommand("convert", "Convert to or from facility-location instances");
  std::string convert_instance;
  std::string to_uflp_path;
  std::string from_uflp_path;
  std::string convert_out;
  std::string provider_id;
  bool dense = false;
  convert->add_option("instance", convert_instance, "Market instance (with --to-uflp)");
  auto* to_opt = convert->add_option("--to-uflp", to_uflp_path, "Write one provider's subproblem as a UFLP");
  auto* from_opt = convert->add_option("--from-uflp", from_uflp_path, "Read a UFLP and write a market instance");
  to_opt->excludes(from_opt);
  convert->add_option("--out", convert_out, "Output path for --from-uflp (default: stdout)");
  convert->add_option("--provider", provider_id, "Provider to export (default: the first)");
  convert->add_flag("--dense", dense, "Dense connection matrix with big-M for forbidden edges");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit cleanly; every other parse failure is a usage error.
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      emit(dump_instance(generate(gen_flags.resolve())), gen_out, out);
      return kOk;
    }

    if (*solve) {
      if (!registry().contains(solve_algorithm)) {
        err << "unknown algorithm '" << solve_algorithm << "'; expected one of:";
        for (const auto& name : algorithm_names()) err << ' ' << name;
        err << '\n';
        return kUnknownAlgorithm;
      }
      const auto options = solve_flags.resolve();
      const auto instance = load_instance(solve_instance);
      const auto start = Clock::now();
      const auto solution = run_algorithm(solve_algorithm, instance, options);
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      if (!plan_out.empty()) save_plan(plan_out, instance, solution.plan, solution.cost);

      nlohmann::ordered_json record;
      const auto seed = instance.metadata.find("seed");
      if (seed != instance.metadata.end()) {
        record["seed"] = std::stoull(seed->second);
      } else {
        record["seed"] = nullptr;
      }
      record["algorithm"] = solve_algorithm;
      record["config"] = {{"max_replicas", options.datum.max_replicas},
                          {"mu1", format_decimal(options.datum.mu1)},
                          {"mu2", format_decimal(options.datum.mu2)},
                          {"budget", options.budget.max_supports}};
      record["oper"] = format_decimal(solution.cost.oper);
      record["exec"] = format_decimal(solution.cost.exec);
      record["purch"] = format_decimal(solution.cost.purch);
      record["total"] = format_decimal(solution.cost.total);
      record["runtime_ms"] = ms;
      record["fingerprint"] = fingerprint(instance);
      out << record.dump() << '\n';
      return kOk;
    }

    if (*compare || *sweep) {
      const bool is_compare = static_cast<bool>(*compare);
      ExperimentOptions options;
      options.algorithms = parse_algorithm_list(is_compare ? compare_algorithms : sweep_algorithms);
      options.seeds = parse_seed_list(is_compare ? compare_seeds : sweep_seeds);
      options.solver = (is_compare ? compare_solver : sweep_solver).resolve();
      options.timing = is_compare ? compare_timing : sweep_timing;
      if (is_compare) {
        emit(compare_csv(compare_flags.resolve(), options, &err), compare_out, out);
      } else {
        const auto knob = parse_ratio_knob(knob_name);
        if (!knob) {
          err << "unknown knob '" << knob_name << "'; expected band_to_fee or internal_to_external\n";
          return kUsage;
        }
        emit(sweep_csv(sweep_flags.resolve(), *knob, sweep_from, sweep_to, sweep_steps, options, &err), sweep_out,
             out);
      }
      return kOk;
    }

    if (*convert) {
      if (!to_uflp_path.empty()) {
        if (convert_instance.empty()) {
          err << "--to-uflp needs an instance path\n";
          return kUsage;
        }
        const auto instance = load_instance(convert_instance);
        if (instance.providers.empty()) throw InvalidInstance({"instance has no providers"});
        std::size_t index = 0;
        if (!provider_id.empty()) {
          const auto found = instance.provider_index(provider_id);
          if (!found) throw InvalidInstance({"unknown provider '" + provider_id + "'"});
          index = *found;
        }
        const auto subs = split_by_provider(instance);
        write_text_file(to_uflp_path, dump_uflp(to_uflp(instance, subs[index]), dense));
        return kOk;
      }
      if (!from_uflp_path.empty()) {
        const auto uflp = parse_uflp(read_text_file(from_uflp_path));
        emit(dump_instance(from_uflp(uflp)), convert_out, out);
        return kOk;
      }
      err << "convert needs --to-uflp or --from-uflp\n";
      return kUsage;
    }
  } catch (const UnknownAlgorithm& e) {
    err << e.what() << '\n';
    return kUnknownAlgorithm;
  } catch (const OversizeInstance& e) {
    err << "oversize instance: " << e.what() << " (raise DATUM_BUDGET to at least " << e.required_budget()
        << ")\n";
    return kOversize;
  } catch (const InvalidInstance& e) {
    print_violations(e, err);
    return kInvalidInstance;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInstance;
  } catch (const CatalogTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    // Remaining library errors describe instances the chosen solver cannot take.
    err << "error: " << e.what() << '\n';
    return kInvalidInstance;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace datum::cli
