#include "platoon/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace platoon {

namespace {

const StrategyRecord* find_record(const InstanceRecord& inst, Strategy s) {
  for (const StrategyRecord& rec : inst.solutions)
    if (rec.strategy == s) return &rec;
  return nullptr;
}

std::string where(const InstanceRecord& inst) {
  std::ostringstream os;
  os << "instance " << inst.id << " at hub " << inst.hub;
  return os.str();
}

}  // namespace

std::vector<std::string> verify_result(const SimulationResult& result) {
  std::vector<std::string> violations;
  auto flag = [&](const std::string& name, const std::string& detail) {
    violations.push_back(name + ": " + detail);
  };

  // Budget safety and per-leg sanity.
  for (const Itinerary& it : result.itineraries) {
    Duration waited{0};
    for (const Leg& l : it.legs) {
      if (l.wait < Duration{0})
        flag("budget-safety", "truck " + std::to_string(it.truck) +
                                  " has a negative wait");
      waited += l.wait;
    }
    if (waited > it.budget_initial)
      flag("budget-safety", "truck " + std::to_string(it.truck) + " waited " +
                                std::to_string(waited.us) + " us on a budget of " +
                                std::to_string(it.budget_initial.us));
    if (waited != it.waited)
      flag("budget-safety", "truck " + std::to_string(it.truck) +
                                " waited total does not match its legs");
  }

  std::map<int, Money> fleet_totals;
  std::map<int, TimePoint> last_at_hub;
  for (const InstanceRecord& inst : result.instances) {
    std::set<int> batch(inst.batch_trucks.begin(), inst.batch_trucks.end());
    if (batch.size() != inst.batch_trucks.size())
      flag("exact-cover", where(inst) + " lists a truck twice in its batch");

    // Exact cover, for every solved program on the batch.
    for (const StrategyRecord& rec : inst.solutions) {
      std::set<int> covered;
      bool dup = false;
      for (const SelectedPlatoon& sp : rec.selected)
        for (int t : sp.trucks) dup |= !covered.insert(t).second;
      if (dup || covered != batch)
        flag("exact-cover", where(inst) + " (" + strategy_name(rec.strategy) +
                                ") does not partition the batch");
    }

    const StrategyRecord* single = find_record(inst, Strategy::SingleFleet);
    const StrategyRecord* pareto = find_record(inst, Strategy::ParetoCrossFleet);
    const StrategyRecord* sysmax = find_record(inst, Strategy::SystemMax);

    if (pareto && single)
      for (int f : inst.fleets_present) {
        Money p = pareto->per_fleet.count(f) ? pareto->per_fleet.at(f) : Money{0};
        Money s = single->per_fleet.count(f) ? single->per_fleet.at(f) : Money{0};
        if (p < s)
          flag("pareto-floor", where(inst) + " pays fleet " + std::to_string(f) +
                                   " below its single-fleet baseline");
      }
    if (pareto && single && pareto->total < single->total)
      flag("ordering-chain", where(inst) + ": pareto total below single-fleet");
    if (sysmax && pareto && sysmax->total < pareto->total)
      flag("ordering-chain", where(inst) + ": system-max total below pareto");
    if (sysmax && single && sysmax->total < single->total)
      flag("ordering-chain", where(inst) + ": system-max total below single-fleet");

    if (pareto) {
      int expected_cons = static_cast<int>(inst.batch_trucks.size()) +
                          static_cast<int>(inst.fleets_present.size());
      if (pareto->variables != inst.candidate_count ||
          pareto->constraints != expected_cons)
        flag("census", where(inst) + " pareto program census mismatch");
    }
    if (static_cast<int>(inst.batch_trucks.size()) > result.params.max_batch_trucks)
      flag("census", where(inst) + " exceeds the batch truck cap");
    if (inst.candidate_count > result.params.max_batch_platoons)
      flag("census", where(inst) + " exceeds the candidate platoon cap");

    const StrategyRecord* applied = find_record(inst, inst.applied);
    if (!applied) {
      flag("profit-totals", where(inst) + " lacks its applied solution record");
    } else {
      for (const auto& [f, m] : applied->per_fleet) fleet_totals[f] += m;
    }

    auto it = last_at_hub.find(inst.hub);
    if (it != last_at_hub.end() && inst.time < it->second)
      flag("ordering-chain", where(inst) + " fired before an earlier instance");
    last_at_hub[inst.hub] = inst.time;
  }

  for (const auto& [f, total] : result.fleet_profit) {
    Money expected = fleet_totals.count(f) ? fleet_totals[f] : Money{0};
    if (total != expected)
      flag("profit-totals", "fleet " + std::to_string(f) +
                                " profit does not match its instances");
  }
  Money grand{0};
  for (const auto& [f, total] : result.fleet_profit) grand += total;
  if (grand != result.total_profit)
    flag("profit-totals", "total profit does not match the fleet sum");

  // Coordinated-departure honesty: members drive out exactly at the platoon's
  // departure time, from its hub, along their recorded segment.
  std::map<int, const Itinerary*> itinerary_of;
  for (const Itinerary& it : result.itineraries) itinerary_of[it.truck] = &it;
  for (const RealizedPlatoon& p : result.platoons) {
    if (p.members.size() < 2)
      flag("departure-honesty",
           "platoon " + std::to_string(p.id) + " has fewer than two members");
    for (const PlatoonMember& m : p.members) {
      auto it = itinerary_of.find(m.truck);
      const Leg* leg = nullptr;
      if (it != itinerary_of.end())
        for (const Leg& l : it->second->legs)
          if (l.platoon == p.id) leg = &l;
      if (!leg || leg->departure != p.departure || leg->from != p.hub ||
          m.nodes.empty() || m.nodes.front() != p.hub ||
          leg->to != m.nodes.back())
        flag("departure-honesty", "platoon " + std::to_string(p.id) +
                                      " and truck " + std::to_string(m.truck) +
                                      " disagree about the departure");
    }
  }

  if (result.follower_km < -1e-9 || result.total_truck_km < -1e-9)
    flag("fuel-bound", "negative kilometre totals");
  if (result.follower_km > result.total_truck_km + 1e-6)
    flag("fuel-bound", "follower km exceed total truck km");

  return violations;
}

}  // namespace platoon
