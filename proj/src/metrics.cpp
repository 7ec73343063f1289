#include "platoon/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

namespace platoon {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  return out;
}

}  // namespace

double fuel_reduction(const SimulationResult& result,
                      double fuel_saving_fraction) {
  if (result.total_truck_km <= 0.0) return 0.0;
  return 100.0 * fuel_saving_fraction * result.follower_km /
         result.total_truck_km;
}

double profit_gain(const FleetReport& cross, const FleetReport& single) {
  if (single.total <= Money{0})
    throw Error(ErrorCode::UndefinedGain,
                "single-fleet profit of fleet " + std::to_string(single.fleet) +
                    " is not positive");
  return 100.0 * static_cast<double>((cross.total - single.total).micros) /
         static_cast<double>(single.total.micros);
}

SolveTimeStats solve_time_stats(const std::vector<InstanceRecord>& instances,
                                Duration margin) {
  SolveTimeStats stats;
  std::int64_t total_us = 0;
  for (const InstanceRecord& inst : instances) {
    const StrategyRecord* applied = nullptr;
    for (const StrategyRecord& rec : inst.solutions)
      if (rec.strategy == inst.applied) {
        applied = &rec;
        break;
      }
    if (!applied)
      throw Error(ErrorCode::InvariantViolation,
                  "instance lacks its applied solution record");
    SolveTimePoint p;
    p.instance = inst.id;
    p.hub = inst.hub;
    p.batch_size = static_cast<int>(inst.batch_trucks.size());
    p.candidates = inst.candidate_count;
    p.time = applied->solve_time;
    p.over_margin = applied->solve_time > margin;
    stats.max = std::max(stats.max, p.time);
    stats.over_margin += p.over_margin ? 1 : 0;
    total_us += p.time.us;
    stats.points.push_back(p);
  }
  if (!stats.points.empty())
    stats.mean = Duration{total_us / static_cast<std::int64_t>(stats.points.size())};
  return stats;
}

RunReport make_report(const SimulationResult& result, const Scenario& scenario) {
  RunReport report;
  report.seed = result.seed;
  report.strategy = result.strategy;
  report.total = result.total_profit;
  report.instance_count = static_cast<int>(result.instances.size());
  report.platoon_count = static_cast<int>(result.platoons.size());
  report.fuel_reduction_pct =
      fuel_reduction(result, scenario.params.fuel_saving_fraction);
  report.solve_times =
      solve_time_stats(result.instances, scenario.params.trigger_margin);

  std::map<int, int> fleet_of;
  std::map<int, double> truck_km;
  for (const Truck& t : scenario.trucks) {
    fleet_of[t.id] = t.fleet;
    truck_km[t.fleet] += t.path.length_km();
  }

  // Eq. (1)-style attribution: on an edge driven by n platoon members, each
  // fleet owns (n-1)/n of a follower per member it has there.
  std::map<int, double> follower_km;
  for (const RealizedPlatoon& p : result.platoons) {
    std::map<std::pair<int, int>, std::map<int, int>> counts;
    for (const PlatoonMember& m : p.members) {
      int fleet = fleet_of.at(m.truck);
      for (std::size_t i = 0; i + 1 < m.nodes.size(); ++i)
        ++counts[{m.nodes[i], m.nodes[i + 1]}][fleet];
    }
    for (const auto& [road, by_fleet] : counts) {
      int n = 0;
      for (const auto& [fleet, c] : by_fleet) n += c;
      if (n < 2) continue;
      double length = scenario.network.edge_length(road.first, road.second);
      for (const auto& [fleet, c] : by_fleet)
        follower_km[fleet] += static_cast<double>(n - 1) * c / n * length;
    }
  }

  for (int f = 1; f <= result.n_fleets; ++f) {
    FleetReport fr;
    fr.fleet = f;
    auto it = result.fleet_profit.find(f);
    fr.total = it == result.fleet_profit.end() ? Money{0} : it->second;
    fr.follower_km = follower_km.count(f) ? follower_km[f] : 0.0;
    fr.truck_km = truck_km.count(f) ? truck_km[f] : 0.0;
    report.fleets.push_back(fr);
  }
  return report;
}

void attach_gains(RunReport& cross, const RunReport& single_fleet) {
  for (FleetReport& fr : cross.fleets) {
    auto it = std::find_if(
        single_fleet.fleets.begin(), single_fleet.fleets.end(),
        [&](const FleetReport& s) { return s.fleet == fr.fleet; });
    if (it == single_fleet.fleets.end())
      throw Error(ErrorCode::BadParams,
                  "fleet " + std::to_string(fr.fleet) + " missing from baseline");
    fr.gain_abs = fr.total - it->total;
    try {
      fr.gain_pct = profit_gain(fr, *it);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UndefinedGain) throw;
      fr.gain_pct.reset();
    }
  }
}

void write_fleet_profits_csv(const std::string& path,
                             const std::vector<RunReport>& runs) {
  std::ofstream out = open_csv(path);
  out << "scenario,strategy,fleet,profit,gain_pct\n";
  for (const RunReport& run : runs)
    for (const FleetReport& fr : run.fleets) {
      out << run.seed << ',' << strategy_name(run.strategy) << ',' << fr.fleet
          << ',' << format_dollars(fr.total) << ',';
      if (fr.gain_pct) out << fixed(*fr.gain_pct, 4);
      out << '\n';
    }
}

void write_fuel_csv(const std::string& path, const std::vector<RunReport>& runs) {
  std::ofstream out = open_csv(path);
  out << "scenario,strategy,fuel_reduction_pct,follower_km,truck_km\n";
  for (const RunReport& run : runs) {
    double follower = 0.0, total = 0.0;
    for (const FleetReport& fr : run.fleets) {
      follower += fr.follower_km;
      total += fr.truck_km;
    }
    out << run.seed << ',' << strategy_name(run.strategy) << ','
        << fixed(run.fuel_reduction_pct, 6) << ',' << fixed(follower, 6) << ','
        << fixed(total, 6) << '\n';
  }
}

void write_solvetimes_csv(const std::string& path,
                          const std::vector<RunReport>& runs) {
  std::ofstream out = open_csv(path);
  out << "scenario,strategy,instance,hub,batch_size,candidates,solve_time_us,"
         "over_margin\n";
  for (const RunReport& run : runs)
    for (const SolveTimePoint& p : run.solve_times.points)
      out << run.seed << ',' << strategy_name(run.strategy) << ',' << p.instance
          << ',' << p.hub << ',' << p.batch_size << ',' << p.candidates << ','
          << p.time.us << ',' << (p.over_margin ? 1 : 0) << '\n';
}

}  // namespace platoon
