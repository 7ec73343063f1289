#ifndef PLATOON_SIM_ENGINE_HPP
#define PLATOON_SIM_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "platoon/feasibility.hpp"
#include "platoon/scenario.hpp"
#include "platoon/strategies.hpp"

namespace platoon {

enum class Phase {
  AtOrigin,
  EnRoute,
  WaitingUncoordinated,
  WaitingCoordinated,
  Done,
};

struct TruckState {
  Phase phase = Phase::AtOrigin;
  int leg = 0;  // index of the segment driven on the next departure
  TimePoint hub_arrival;
  std::optional<TimePoint> coordinated_departure;
  Duration budget_remaining;
  Duration waited;
};

struct Leg {
  int from = 0;
  int to = 0;
  TimePoint departure;
  TimePoint arrival;
  int platoon = -1;  // realized platoon id, -1 when driving alone
  Duration wait;     // time spent at `from` before departing
};

struct Itinerary {
  int truck = 0;
  int fleet = 0;
  Duration budget_initial;
  Duration waited;
  std::vector<Leg> legs;
};

struct PlatoonMember {
  int truck = 0;
  std::vector<int> nodes;  // node sequence of the segment driven from the hub
};

// A multi-truck platoon that actually departed a hub. Members may split at
// junctions; per-edge follower counts come from the node sequences.
struct RealizedPlatoon {
  int id = 0;
  int hub = 0;
  TimePoint departure;
  std::vector<PlatoonMember> members;  // sorted by truck id
};

struct SelectedPlatoon {
  std::vector<int> trucks;  // sorted
  TimePoint departure;
  std::map<int, Money> per_fleet_profit;
  Money total_profit;
};

// One optimization program solved on an instance's batch.
struct StrategyRecord {
  Strategy strategy = Strategy::SingleFleet;
  Money total;
  std::map<int, Money> per_fleet;
  int variables = 0;
  int constraints = 0;
  Duration solve_time;
  std::vector<SelectedPlatoon> selected;
};

struct InstanceRecord {
  int id = 0;
  int hub = 0;
  TimePoint time;
  int trigger_truck = 0;
  std::vector<int> batch_trucks;  // batch order (sorted by arrival, truck id)
  int candidate_count = 0;
  std::vector<int> fleets_present;
  std::vector<StrategyRecord> solutions;  // single, pareto, sysmax as computed
  Strategy applied = Strategy::SingleFleet;
  std::vector<int> realized_platoons;
};

struct CoordinationInstance {
  int hub = 0;
  TimePoint time;
  Batch batch;
};

struct SimulationResult {
  Strategy strategy = Strategy::SingleFleet;
  std::uint64_t seed = 0;
  EconomicParams params;  // echoed so stored results can be verified alone
  int n_trucks = 0;
  int n_fleets = 0;
  std::map<int, Money> fleet_profit;
  Money total_profit;
  std::vector<InstanceRecord> instances;
  std::vector<RealizedPlatoon> platoons;
  std::vector<Itinerary> itineraries;  // scenario truck order
  double follower_km = 0.0;
  double total_truck_km = 0.0;
  TimePoint finished;
};

struct RunOptions {
  // Solve all three programs on every batch so instance records carry the
  // single/pareto/sysmax totals side by side. Only the run strategy's
  // solution is applied either way.
  bool compare_strategies = true;
  // Observer called after each coordination instance is solved and applied,
  // with the live batch and the appended record.
  std::function<void(const CoordinationInstance&, const InstanceRecord&)>
      on_instance;
};

class SimEngine {
 public:
  SimEngine(const Scenario& scenario, Strategy strategy, RunOptions options = {});

  // Processes events to quiescence and returns the (moved-out) result.
  SimulationResult run();

  // The coordination steps, exposed for direct testing; run() drives them.
  //
  // What a truck departing at `departure` would share with its next hub;
  // empty when the next stop is its destination.
  std::optional<Announcement> announce(int truck, TimePoint departure) const;
  // Fires iff some announced uncoordinated truck at `hub` is within the
  // trigger margin; builds the batch with candidates and profits filled.
  std::optional<CoordinationInstance> check_trigger(int hub, TimePoint now);
  // Applies a solution: coordinates multi-platoon members, leaves singletons
  // waiting (subject to the trigger-singleton policy), accumulates profits.
  // Returns ids of realized platoons it scheduled.
  std::vector<int> apply_solution(const CoordinationInstance& inst,
                                  const StrategySolution& sol);

  const TruckState& state(int truck) const { return states_.at(truck); }
  const SimulationResult& result() const { return result_; }

 private:
  enum EventKind {
    kOriginDeparture = 0,
    kHubArrival = 1,
    kTriggerCheck = 2,
    kPlatoonDeparture = 3,
    kDeadlineDeparture = 4,
    kDestinationArrival = 5,
  };

  struct Event {
    TimePoint time;
    int kind = 0;
    int hub = 0;
    int key = 0;  // truck id, or pending-departure id for kPlatoonDeparture
    std::uint64_t seq = 0;

    bool operator>(const Event& o) const {
      auto lhs = std::tie(time.us, kind, hub, key, seq);
      auto rhs = std::tie(o.time.us, o.kind, o.hub, o.key, o.seq);
      return lhs > rhs;
    }
  };

  struct AnnRec {
    Announcement ann;
    bool coordinated = false;
  };

  struct PendingDeparture {
    int hub = 0;
    TimePoint time;
    std::vector<int> trucks;  // sorted
    int realized = -1;        // realized platoon id, -1 for a solo departure
  };

  void schedule(TimePoint t, int kind, int hub, int key);
  AnnRec* find_announcement(int hub, int truck);
  void depart(int truck, TimePoint t, int realized, Duration wait);
  void run_instance(const CoordinationInstance& inst);
  StrategyRecord to_record(const Batch& batch, const StrategySolution& sol) const;

  void on_hub_arrival(const Event& ev);
  void on_trigger_check(const Event& ev);
  void on_platoon_departure(const Event& ev);
  void on_deadline_departure(const Event& ev);

  const Scenario& scenario_;
  Strategy strategy_;
  RunOptions options_;

  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
  std::uint64_t next_seq_ = 0;
  bool ran_ = false;
  std::map<int, std::size_t> truck_index_;  // truck id -> scenario position
  std::map<int, TruckState> states_;
  std::map<int, std::map<int, AnnRec>> hub_announcements_;  // hub -> truck -> rec
  std::vector<PendingDeparture> pending_;
  SimulationResult result_;
};

SimulationResult run_simulation(const Scenario& scenario, Strategy strategy,
                                RunOptions options = {});

// Follower-km of one realized platoon: per edge, (trucks on it - 1) * length.
double platoon_follower_km(const RealizedPlatoon& p, const RoadNetwork& net);

}  // namespace platoon

#endif  // PLATOON_SIM_ENGINE_HPP
