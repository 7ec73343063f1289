#ifndef PLATOON_METRICS_HPP
#define PLATOON_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "platoon/sim_engine.hpp"

namespace platoon {

struct FleetReport {
  int fleet = 0;
  Money total;                     // realized profit over the whole run
  std::optional<double> gain_pct;  // vs the single-fleet run, when defined
  Money gain_abs;                  // cross - single, always reported
  double follower_km = 0.0;
  double truck_km = 0.0;
};

struct SolveTimePoint {
  int instance = 0;
  int hub = 0;
  int batch_size = 0;
  int candidates = 0;
  Duration time;
  bool over_margin = false;
};

struct SolveTimeStats {
  Duration max;
  Duration mean;
  int over_margin = 0;
  std::vector<SolveTimePoint> points;  // the (batch size, candidates, time) curve
};

struct RunReport {
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::SingleFleet;
  Money total;
  std::vector<FleetReport> fleets;
  double fuel_reduction_pct = 0.0;
  int instance_count = 0;
  int platoon_count = 0;
  SolveTimeStats solve_times;
};

// 100 * fraction * follower_km / total truck km; 0 when nothing drove.
double fuel_reduction(const SimulationResult& result, double fuel_saving_fraction);

// 100 * (cross - single) / single. Throws UndefinedGain when the single-fleet
// profit is not positive; report the absolute difference instead then.
double profit_gain(const FleetReport& cross, const FleetReport& single);

// Applied-strategy solve time per instance, flagged against the margin.
SolveTimeStats solve_time_stats(const std::vector<InstanceRecord>& instances,
                                Duration margin);

RunReport make_report(const SimulationResult& result, const Scenario& scenario);

// Fills gain fields of `cross` from the single-fleet run of the same scenario.
void attach_gains(RunReport& cross, const RunReport& single_fleet);

// CSV emission; one row per (seed, strategy, ...) entry across the runs.
void write_fleet_profits_csv(const std::string& path,
                             const std::vector<RunReport>& runs);
void write_fuel_csv(const std::string& path, const std::vector<RunReport>& runs);
void write_solvetimes_csv(const std::string& path,
                          const std::vector<RunReport>& runs);

}  // namespace platoon

#endif  // PLATOON_METRICS_HPP
