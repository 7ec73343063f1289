#include <atomic>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "platoon/metrics.hpp"
#include "platoon/se33.hpp"
#include "platoon/serialize.hpp"
#include "platoon/verify.hpp"

namespace {

using namespace platoon;

constexpr int kConfigError = 2;
constexpr int kIoError = 3;
constexpr int kInvariantError = 4;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::Schema:
      return kIoError;
    case ErrorCode::InvariantViolation:
    case ErrorCode::StaleSolution:
      return kInvariantError;
    default:
      return kConfigError;
  }
}

std::vector<double> parse_shares(const std::string& text) {
  std::vector<double> shares;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string token = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      shares.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadShares, "bad share value: '" + token + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return shares;
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadParams, key + ": bad number '" + value + "'");
  }
}

void apply_override(EconomicParams& p, const std::string& kv) {
  std::size_t eq = kv.find('=');
  if (eq == std::string::npos)
    throw Error(ErrorCode::BadParams, "--param expects key=value, got '" + kv + "'");
  std::string key = kv.substr(0, eq);
  std::string value = kv.substr(eq + 1);

  if (key == "reward_per_follower_km")
    p.reward_per_follower_km = Money::dollars(parse_number(key, value));
  else if (key == "waiting_cost_per_hour")
    p.waiting_cost_per_hour = Money::dollars(parse_number(key, value));
  else if (key == "fuel_saving_fraction")
    p.fuel_saving_fraction = parse_number(key, value);
  else if (key == "trigger_margin_min")
    p.trigger_margin = Duration::minutes(parse_number(key, value));
  else if (key == "max_batch_trucks")
    p.max_batch_trucks = static_cast<int>(parse_number(key, value));
  else if (key == "max_batch_platoons")
    p.max_batch_platoons = static_cast<int>(parse_number(key, value));
  else if (key == "speed_kmh")
    p.speed_kmh = parse_number(key, value);
  else if (key == "waiting_budget_min")
    p.waiting_budget = Duration::minutes(parse_number(key, value));
  else if (key == "start_window_h")
    p.start_window = Duration::hours(parse_number(key, value));
  else if (key == "trigger_singleton_policy")
    p.trigger_singleton_policy =
        value == "depart" ? TriggerSingletonPolicy::DepartAtArrival
        : value == "wait"
            ? TriggerSingletonPolicy::WaitUntilDeadline
            : throw Error(ErrorCode::BadParams,
                          "trigger_singleton_policy: 'wait' or 'depart'");
  else
    throw Error(ErrorCode::BadParams, "unknown parameter '" + key + "'");
}

RoadNetwork resolve_network(const std::string& path) {
  return path.empty() ? se33_network() : network_from_json(load_json(path));
}

EconomicParams resolve_params(const std::vector<std::string>& overrides) {
  EconomicParams p = default_params();
  for (const std::string& kv : overrides) apply_override(p, kv);
  p.validate();
  return p;
}

struct GenerateOpts {
  std::string network_path;
  int trucks = 500;
  std::string shares = "0.4,0.3,0.2,0.1";
  std::vector<std::string> overrides;
  std::uint64_t seed = 1;
  std::string out = "scenario.json";
};

int cmd_generate(const GenerateOpts& o) {
  EconomicParams params = resolve_params(o.overrides);
  Scenario sc =
      generate_scenario(resolve_network(o.network_path), o.trucks,
                        parse_shares(o.shares), params.start_window, o.seed, params);
  save_json(o.out, scenario_to_json(sc));
  std::cout << "wrote " << o.out << " (" << sc.trucks.size() << " trucks, "
            << sc.fleet_count() << " fleets, seed " << sc.seed << ")\n";
  return 0;
}

struct RunOpts {
  std::string scenario_path;
  std::string network_path;
  int trucks = 500;
  std::string shares = "0.4,0.3,0.2,0.1";
  std::vector<std::string> overrides;
  std::vector<std::uint64_t> seeds;
  std::string strategy = "all";
  std::string out = ".";
  bool dump_instances = false;
  bool no_compare = false;
  int parallel = 1;
};

struct StrategyOutput {
  Strategy strategy = Strategy::SingleFleet;
  RunReport report;
  std::string result_json;
  std::string dump_json;  // empty unless --dump-instances
};

struct SeedOutput {
  std::uint64_t seed = 0;
  std::vector<StrategyOutput> runs;
};

Json dump_programs(const CoordinationInstance& inst, const InstanceRecord& rec) {
  Json singles = Json::array();
  for (int f : inst.batch.fleets_present)
    singles.push_back(
        {{"fleet", f},
         {"program", cover_instance_to_json(single_fleet_cover(inst.batch, f))}});
  Json programs{{"single", std::move(singles)}};
  for (const StrategyRecord& r : rec.solutions)
    if (r.strategy == Strategy::SingleFleet)
      programs["pareto"] =
          cover_instance_to_json(cross_fleet_cover(inst.batch, &r.per_fleet));
  programs["sysmax"] = cover_instance_to_json(cross_fleet_cover(inst.batch));
  return Json{{"instance", rec.id},
              {"hub", rec.hub},
              {"time_us", rec.time.us},
              {"batch_trucks", rec.batch_trucks},
              {"programs", std::move(programs)}};
}

SeedOutput run_one_seed(const Scenario& sc, const std::vector<Strategy>& strategies,
                        const RunOpts& o) {
  SeedOutput out;
  out.seed = sc.seed;
  for (Strategy strat : strategies) {
    RunOptions ro;
    ro.compare_strategies = !o.no_compare;
    Json dump = Json::array();
    if (o.dump_instances)
      ro.on_instance = [&dump](const CoordinationInstance& inst,
                               const InstanceRecord& rec) {
        dump.push_back(dump_programs(inst, rec));
      };
    SimulationResult result = run_simulation(sc, strat, ro);

    std::vector<std::string> violations = verify_result(result);
    if (!violations.empty())
      throw Error(ErrorCode::InvariantViolation,
                  "run self-check failed: " + violations.front());

    StrategyOutput so;
    so.strategy = strat;
    so.report = make_report(result, sc);
    so.result_json = result_to_json(result).dump(2);
    if (o.dump_instances) so.dump_json = dump.dump(2);
    out.runs.push_back(std::move(so));
  }
  return out;
}

int cmd_run(const RunOpts& o) {
  std::vector<Strategy> strategies;
  if (o.strategy == "all")
    strategies = {Strategy::SingleFleet, Strategy::ParetoCrossFleet,
                  Strategy::SystemMax};
  else
    strategies = {strategy_from_name(o.strategy)};

  std::filesystem::path out_dir(o.out);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + o.out);

  std::vector<Scenario> scenarios;
  if (!o.scenario_path.empty()) {
    Scenario sc = scenario_from_json(load_json(o.scenario_path));
    for (const std::string& kv : o.overrides) apply_override(sc.params, kv);
    sc.params.validate();
    scenarios.push_back(std::move(sc));
  } else {
    RoadNetwork net = resolve_network(o.network_path);
    EconomicParams params = resolve_params(o.overrides);
    std::vector<double> shares = parse_shares(o.shares);
    std::vector<std::uint64_t> seeds = o.seeds.empty()
                                           ? std::vector<std::uint64_t>{1}
                                           : o.seeds;
    for (std::uint64_t seed : seeds)
      scenarios.push_back(generate_scenario(net, o.trucks, shares,
                                            params.start_window, seed, params));
  }

  std::vector<SeedOutput> outputs(scenarios.size());
  std::vector<std::exception_ptr> failures(scenarios.size());
  int workers = std::max(1, std::min<int>(o.parallel, scenarios.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < scenarios.size(); ++i)
      outputs[i] = run_one_seed(scenarios[i], strategies, o);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < scenarios.size();
             i = next.fetch_add(1)) {
          try {
            outputs[i] = run_one_seed(scenarios[i], strategies, o);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : failures)
      if (e) std::rethrow_exception(e);
  }

  std::vector<RunReport> reports;
  Json report_json = Json::array();
  for (SeedOutput& so : outputs) {
    const RunReport* single = nullptr;
    for (const StrategyOutput& run : so.runs)
      if (run.strategy == Strategy::SingleFleet) single = &run.report;
    for (StrategyOutput& run : so.runs) {
      if (single && run.strategy != Strategy::SingleFleet)
        attach_gains(run.report, *single);

      std::string base = std::string(strategy_name(run.strategy)) + "_seed" +
                         std::to_string(so.seed);
      std::filesystem::path result_path = out_dir / ("result_" + base + ".json");
      std::ofstream rf(result_path);
      if (!rf) throw Error(ErrorCode::Io, "cannot write " + result_path.string());
      rf << run.result_json << '\n';
      if (o.dump_instances) {
        std::filesystem::path dump_path = out_dir / ("instances_" + base + ".json");
        std::ofstream df(dump_path);
        if (!df) throw Error(ErrorCode::Io, "cannot write " + dump_path.string());
        df << run.dump_json << '\n';
      }

      std::cout << "seed " << so.seed << ' ' << strategy_name(run.strategy)
                << ": total " << format_dollars(run.report.total) << ", fuel "
                << run.report.fuel_reduction_pct << "%, "
                << run.report.instance_count << " instances, "
                << run.report.platoon_count << " platoons -> "
                << result_path.string() << '\n';
      report_json.push_back(report_to_json(run.report));
      reports.push_back(run.report);
    }
  }

  write_fleet_profits_csv((out_dir / "fleet_profits.csv").string(), reports);
  write_fuel_csv((out_dir / "fuel.csv").string(), reports);
  write_solvetimes_csv((out_dir / "solvetimes.csv").string(), reports);
  save_json((out_dir / "report.json").string(), report_json);
  return 0;
}

int cmd_verify(const std::vector<std::string>& files) {
  int rc = 0;
  for (const std::string& f : files) {
    SimulationResult result = result_from_json(load_json(f));
    std::vector<std::string> violations = verify_result(result);
    if (violations.empty()) {
      std::cout << f << ": ok (" << result.instances.size() << " instances, "
                << result.platoons.size() << " platoons)\n";
    } else {
      for (const std::string& v : violations) std::cerr << f << ": " << v << '\n';
      rc = kInvariantError;
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hub-based cross-fleet truck platoon coordination simulator"};
  app.require_subcommand(1);

  GenerateOpts gen;
  CLI::App* generate = app.add_subcommand("generate", "write a scenario file");
  generate->add_option("--network", gen.network_path,
                       "network JSON (default: bundled SE-33)");
  generate->add_option("--trucks", gen.trucks, "number of trucks")
      ->check(CLI::PositiveNumber);
  generate->add_option("--shares", gen.shares, "fleet shares, comma separated");
  generate->add_option("--seed", gen.seed, "scenario seed");
  generate->add_option("--param", gen.overrides, "parameter override key=value");
  generate->add_option("--out", gen.out, "output path");

  RunOpts run;
  CLI::App* runc = app.add_subcommand("run", "simulate and write reports");
  runc->add_option("--scenario", run.scenario_path,
                   "scenario file (otherwise generated from the flags below)");
  runc->add_option("--network", run.network_path,
                   "network JSON (default: bundled SE-33)");
  runc->add_option("--trucks", run.trucks, "number of trucks")
      ->check(CLI::PositiveNumber);
  runc->add_option("--shares", run.shares, "fleet shares, comma separated");
  runc->add_option("--seed", run.seeds, "scenario seed (repeatable)")
      ->delimiter(',');
  runc->add_option("--strategy", run.strategy, "single|pareto|sysmax|all")
      ->check(CLI::IsMember({"single", "pareto", "sysmax", "all"}));
  runc->add_option("--out", run.out, "output directory");
  runc->add_option("--param", run.overrides, "parameter override key=value");
  runc->add_flag("--dump-instances", run.dump_instances,
                 "write every solver instance next to the results");
  runc->add_flag("--no-compare", run.no_compare,
                 "solve only the selected strategy per instance");
  runc->add_option("--parallel-scenarios", run.parallel,
                   "worker threads across seeds")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> verify_files;
  CLI::App* verify = app.add_subcommand("verify", "replay invariants on results");
  verify->add_option("files", verify_files, "result files")->required();

  std::string network_out = "se33.json";
  CLI::App* dumpnet =
      app.add_subcommand("dump-network", "write the bundled SE-33 network");
  dumpnet->add_option("--out", network_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (runc->parsed()) return cmd_run(run);
    if (verify->parsed()) return cmd_verify(verify_files);
    if (dumpnet->parsed()) {
      save_json(network_out, network_to_json(se33_network()));
      std::cout << "wrote " << network_out << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return kConfigError;
}
