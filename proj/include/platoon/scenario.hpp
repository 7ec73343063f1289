#ifndef PLATOON_SCENARIO_HPP
#define PLATOON_SCENARIO_HPP

#include <cstdint>
#include <vector>

#include "platoon/network.hpp"
#include "platoon/units.hpp"

namespace platoon {

// What a truck that triggered a coordination instance does when the solution
// leaves it alone. WaitUntilDeadline keeps it at the hub, available to later
// batches, until its latest departure time. DepartAtArrival sends it off
// on arrival regardless of remaining budget.
enum class TriggerSingletonPolicy { WaitUntilDeadline, DepartAtArrival };

struct EconomicParams {
  Money reward_per_follower_km;   // rho scale, per km of edge length
  Money waiting_cost_per_hour;    // lambda
  double fuel_saving_fraction = 0.0;
  Duration trigger_margin;        // how early an approaching truck triggers
  int max_batch_trucks = 0;       // batch truck cap
  int max_batch_platoons = 0;     // feasible-platoon cap
  double speed_kmh = 0.0;
  Duration waiting_budget;        // per-truck budget used by the generator
  Duration start_window;          // origin departures drawn from [0, window]
  TriggerSingletonPolicy trigger_singleton_policy =
      TriggerSingletonPolicy::WaitUntilDeadline;

  void validate() const;
};

// Simulation-study defaults: $5.25 per 100 follower-km, $20/h waiting,
// 20 min budgets, 5 min trigger margin, batch caps 25 trucks / 6000
// platoons, 10% fuel saving, 3 h start window, 80 km/h.
EconomicParams default_params();

struct Truck {
  int id = 0;
  int fleet = 0;  // 1-based
  Path path;
  std::vector<PathSegment> segments;
  TimePoint origin_departure;
  Duration waiting_budget;
};

struct Scenario {
  RoadNetwork network;
  std::vector<Truck> trucks;
  Duration horizon;
  EconomicParams params;
  std::uint64_t seed = 0;

  int fleet_count() const;
};

// Apportions n among shares by largest remainder; sizes sum to n exactly.
std::vector<int> fleet_sizes_largest_remainder(int n,
                                               const std::vector<double>& shares);

// Draws origin/destination uniformly over distinct reachable hub pairs,
// routes by shortest path, assigns fleets by largest-remainder share, and
// draws start times uniformly in [0, start_window]. Identical seeds yield
// identical scenarios.
Scenario generate_scenario(const RoadNetwork& net, int n_trucks,
                           const std::vector<double>& fleet_shares,
                           Duration start_window, std::uint64_t seed,
                           const EconomicParams& params);

}  // namespace platoon

#endif  // PLATOON_SCENARIO_HPP
