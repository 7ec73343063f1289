#include "platoon/sim_engine.hpp"

#include <algorithm>

#include "platoon/profit.hpp"

namespace platoon {

namespace {

std::vector<int> segment_nodes(const PathSegment& seg) {
  std::vector<int> nodes{seg.start_node};
  for (const Edge& e : seg.edges) nodes.push_back(e.to);
  return nodes;
}

}  // namespace

double platoon_follower_km(const RealizedPlatoon& p, const RoadNetwork& net) {
  std::map<std::pair<int, int>, int> counts;
  for (const PlatoonMember& m : p.members)
    for (std::size_t i = 0; i + 1 < m.nodes.size(); ++i)
      ++counts[{m.nodes[i], m.nodes[i + 1]}];
  double km = 0.0;
  for (const auto& [road, n] : counts)
    if (n > 1) km += (n - 1) * net.edge_length(road.first, road.second);
  return km;
}

SimEngine::SimEngine(const Scenario& scenario, Strategy strategy,
                     RunOptions options)
    : scenario_(scenario), strategy_(strategy), options_(options) {
  scenario_.params.validate();
  result_.strategy = strategy;
  result_.seed = scenario.seed;
  result_.params = scenario.params;
  result_.n_trucks = static_cast<int>(scenario.trucks.size());
  result_.n_fleets = scenario.fleet_count();
  for (int f = 1; f <= result_.n_fleets; ++f) result_.fleet_profit[f] = Money{0};

  for (std::size_t i = 0; i < scenario.trucks.size(); ++i) {
    const Truck& t = scenario.trucks[i];
    if (states_.count(t.id))
      throw Error(ErrorCode::Schema, "duplicate truck id " + std::to_string(t.id));
    if (t.segments.empty())
      throw Error(ErrorCode::Schema, "truck " + std::to_string(t.id) + " has no route");
    truck_index_[t.id] = i;
    TruckState st;
    st.budget_remaining = t.waiting_budget;
    states_[t.id] = st;
    Itinerary it;
    it.truck = t.id;
    it.fleet = t.fleet;
    it.budget_initial = t.waiting_budget;
    result_.itineraries.push_back(std::move(it));
    result_.total_truck_km += t.path.length_km();
  }
}

void SimEngine::schedule(TimePoint t, int kind, int hub, int key) {
  events_.push(Event{t, kind, hub, key, next_seq_++});
}

SimEngine::AnnRec* SimEngine::find_announcement(int hub, int truck) {
  auto h = hub_announcements_.find(hub);
  if (h == hub_announcements_.end()) return nullptr;
  auto a = h->second.find(truck);
  return a == h->second.end() ? nullptr : &a->second;
}

std::optional<Announcement> SimEngine::announce(int truck,
                                                TimePoint departure) const {
  const Truck& tr = scenario_.trucks.at(truck_index_.at(truck));
  const TruckState& st = states_.at(truck);
  if (st.leg >= static_cast<int>(tr.segments.size()))
    throw Error(ErrorCode::BadParams, "truck already on its final leg");
  const PathSegment& seg = tr.segments[st.leg];
  if (st.leg + 1 == static_cast<int>(tr.segments.size())) return std::nullopt;

  Announcement a;
  a.truck = truck;
  a.fleet = tr.fleet;
  a.hub = seg.end_node;
  a.arrival = departure + travel_time(seg.edges, scenario_.params.speed_kmh);
  a.latest_departure = a.arrival + st.budget_remaining;
  a.next_segment = tr.segments[st.leg + 1];
  return a;
}

void SimEngine::depart(int truck, TimePoint t, int realized, Duration wait) {
  TruckState& st = states_.at(truck);
  const Truck& tr = scenario_.trucks[truck_index_.at(truck)];
  const PathSegment& seg = tr.segments[st.leg];
  TimePoint arrival = t + travel_time(seg.edges, scenario_.params.speed_kmh);

  result_.itineraries[truck_index_.at(truck)].legs.push_back(
      Leg{seg.start_node, seg.end_node, t, arrival, realized, wait});

  std::optional<Announcement> ann = announce(truck, t);
  if (!ann) {
    schedule(arrival, kDestinationArrival, seg.end_node, truck);
  } else {
    auto& at_hub = hub_announcements_[ann->hub];
    if (at_hub.count(truck))
      throw Error(ErrorCode::InvariantViolation,
                  "truck " + std::to_string(truck) + " announced twice to hub " +
                      std::to_string(ann->hub));
    TimePoint trigger_at =
        std::max(t, ann->arrival - scenario_.params.trigger_margin);
    schedule(arrival, kHubArrival, ann->hub, truck);
    schedule(trigger_at, kTriggerCheck, ann->hub, truck);
    schedule(ann->latest_departure, kDeadlineDeparture, ann->hub, truck);
    at_hub[truck] = AnnRec{*ann, false};
  }
  st.phase = Phase::EnRoute;
  st.leg += 1;
}

std::optional<CoordinationInstance> SimEngine::check_trigger(int hub,
                                                             TimePoint now) {
  auto h = hub_announcements_.find(hub);
  if (h == hub_announcements_.end()) return std::nullopt;
  std::vector<Announcement> open;
  bool within_margin = false;
  for (const auto& [truck, rec] : h->second) {
    if (rec.coordinated) continue;
    open.push_back(rec.ann);
    if (rec.ann.arrival - now <= scenario_.params.trigger_margin)
      within_margin = true;
  }
  if (open.empty() || !within_margin) return std::nullopt;

  Batch batch = select_batch(std::move(open), scenario_.params.max_batch_trucks,
                             scenario_.params.max_batch_platoons);
  fill_profits(batch, scenario_.params);
  return CoordinationInstance{hub, now, std::move(batch)};
}

StrategyRecord SimEngine::to_record(const Batch& batch,
                                    const StrategySolution& sol) const {
  StrategyRecord rec;
  rec.strategy = sol.strategy;
  rec.total = sol.total_profit;
  rec.per_fleet = sol.per_fleet_profit;
  rec.variables = sol.variables;
  rec.constraints = sol.constraints;
  rec.solve_time = sol.solve_time;
  for (int c : sol.selected) {
    const CandidatePlatoon& p = batch.candidates.at(c);
    SelectedPlatoon sp;
    sp.trucks = batch.truck_ids(p);
    std::sort(sp.trucks.begin(), sp.trucks.end());
    sp.departure = p.departure;
    sp.per_fleet_profit = p.per_fleet_profit;
    sp.total_profit = p.total_profit;
    rec.selected.push_back(std::move(sp));
  }
  return rec;
}

std::vector<int> SimEngine::apply_solution(const CoordinationInstance& inst,
                                           const StrategySolution& sol) {
  const Batch& batch = inst.batch;
  for (const Announcement& a : batch.announcements) {
    const AnnRec* rec = find_announcement(inst.hub, a.truck);
    if (!rec || rec->coordinated || rec->ann.arrival != a.arrival ||
        rec->ann.latest_departure != a.latest_departure)
      throw Error(ErrorCode::StaleSolution,
                  "truck " + std::to_string(a.truck) +
                      " changed state since batch construction");
  }

  std::vector<char> covered(batch.announcements.size(), 0);
  for (int c : sol.selected) {
    if (c < 0 || c >= static_cast<int>(batch.candidates.size()))
      throw Error(ErrorCode::InvariantViolation, "selected candidate out of range");
    for (int m : batch.candidates[c].members) {
      if (covered[m])
        throw Error(ErrorCode::InvariantViolation, "truck covered twice");
      covered[m] = 1;
    }
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end())
    throw Error(ErrorCode::InvariantViolation, "solution does not cover the batch");

  for (const auto& [f, profit] : sol.per_fleet_profit)
    result_.fleet_profit[f] += profit;
  result_.total_profit += sol.total_profit;

  std::vector<int> realized_ids;
  for (int c : sol.selected) {
    const CandidatePlatoon& p = batch.candidates[c];
    if (p.members.size() == 1) {
      // Singletons stay uncoordinated and fall into later batches; the
      // trigger truck departs right away only under DepartAtArrival.
      if (p.members[0] != batch.trigger_index) continue;
      if (scenario_.params.trigger_singleton_policy !=
          TriggerSingletonPolicy::DepartAtArrival)
        continue;
      const Announcement& a = batch.announcements[p.members[0]];
      TimePoint dep = std::max(inst.time, a.arrival);
      AnnRec* rec = find_announcement(inst.hub, a.truck);
      rec->coordinated = true;
      TruckState& st = states_.at(a.truck);
      st.coordinated_departure = dep;
      if (st.phase == Phase::WaitingUncoordinated)
        st.phase = Phase::WaitingCoordinated;
      pending_.push_back(
          PendingDeparture{inst.hub, dep, {a.truck}, -1});
      schedule(dep, kPlatoonDeparture, inst.hub,
               static_cast<int>(pending_.size()) - 1);
      continue;
    }

    RealizedPlatoon plat;
    plat.id = static_cast<int>(result_.platoons.size());
    plat.hub = inst.hub;
    plat.departure = p.departure;
    std::vector<int> trucks;
    for (int m : p.members) {
      const Announcement& a = batch.announcements[m];
      plat.members.push_back(PlatoonMember{a.truck, segment_nodes(a.next_segment)});
      trucks.push_back(a.truck);

      AnnRec* rec = find_announcement(inst.hub, a.truck);
      rec->coordinated = true;
      TruckState& st = states_.at(a.truck);
      st.coordinated_departure = p.departure;
      if (st.phase == Phase::WaitingUncoordinated)
        st.phase = Phase::WaitingCoordinated;
    }
    std::sort(plat.members.begin(), plat.members.end(),
              [](const PlatoonMember& a, const PlatoonMember& b) {
                return a.truck < b.truck;
              });
    std::sort(trucks.begin(), trucks.end());
    result_.follower_km += platoon_follower_km(plat, scenario_.network);
    realized_ids.push_back(plat.id);
    result_.platoons.push_back(std::move(plat));
    pending_.push_back(PendingDeparture{inst.hub, p.departure, std::move(trucks),
                                        realized_ids.back()});
    schedule(p.departure, kPlatoonDeparture, inst.hub,
             static_cast<int>(pending_.size()) - 1);
  }
  return realized_ids;
}

void SimEngine::run_instance(const CoordinationInstance& inst) {
  InstanceRecord rec;
  rec.id = static_cast<int>(result_.instances.size());
  rec.hub = inst.hub;
  rec.time = inst.time;
  rec.trigger_truck = inst.batch.announcements[inst.batch.trigger_index].truck;
  for (const Announcement& a : inst.batch.announcements)
    rec.batch_trucks.push_back(a.truck);
  rec.candidate_count = static_cast<int>(inst.batch.candidates.size());
  rec.fleets_present = inst.batch.fleets_present;
  rec.applied = strategy_;

  bool want_single =
      options_.compare_strategies || strategy_ != Strategy::SystemMax;
  bool want_pareto =
      options_.compare_strategies || strategy_ == Strategy::ParetoCrossFleet;
  bool want_sysmax =
      options_.compare_strategies || strategy_ == Strategy::SystemMax;

  StrategySolution single, pareto, sysmax;
  if (want_single) {
    single = solve_single_fleet_combined(inst.batch);
    rec.solutions.push_back(to_record(inst.batch, single));
  }
  if (want_pareto) {
    pareto = solve_pareto(inst.batch, single.per_fleet_profit);
    rec.solutions.push_back(to_record(inst.batch, pareto));
  }
  if (want_sysmax) {
    sysmax = solve_system_max(inst.batch);
    rec.solutions.push_back(to_record(inst.batch, sysmax));
  }

  const StrategySolution& applied = strategy_ == Strategy::SingleFleet ? single
                                    : strategy_ == Strategy::ParetoCrossFleet
                                        ? pareto
                                        : sysmax;
  rec.realized_platoons = apply_solution(inst, applied);
  result_.instances.push_back(std::move(rec));
  if (options_.on_instance) options_.on_instance(inst, result_.instances.back());
}

void SimEngine::on_hub_arrival(const Event& ev) {
  TruckState& st = states_.at(ev.key);
  st.hub_arrival = ev.time;
  st.phase = st.coordinated_departure ? Phase::WaitingCoordinated
                                      : Phase::WaitingUncoordinated;
}

void SimEngine::on_trigger_check(const Event& ev) {
  const AnnRec* rec = find_announcement(ev.hub, ev.key);
  if (!rec || rec->coordinated) return;  // departed or platooned already
  if (auto inst = check_trigger(ev.hub, ev.time)) run_instance(*inst);
}

void SimEngine::on_platoon_departure(const Event& ev) {
  const PendingDeparture& pend = pending_.at(ev.key);
  for (int truck : pend.trucks) {
    TruckState& st = states_.at(truck);
    if (st.phase != Phase::WaitingCoordinated || !st.coordinated_departure ||
        *st.coordinated_departure != ev.time)
      throw Error(ErrorCode::InvariantViolation,
                  "truck " + std::to_string(truck) + " missed its departure");
    Duration wait = ev.time - st.hub_arrival;
    if (wait < Duration{0} || wait > st.budget_remaining)
      throw Error(ErrorCode::InvariantViolation,
                  "truck " + std::to_string(truck) + " exceeded its budget");
    st.budget_remaining -= wait;
    st.waited += wait;
    st.coordinated_departure.reset();
    hub_announcements_[pend.hub].erase(truck);
    depart(truck, ev.time, pend.realized, wait);
  }
}

void SimEngine::on_deadline_departure(const Event& ev) {
  const AnnRec* rec = find_announcement(ev.hub, ev.key);
  if (!rec || rec->coordinated) return;
  TruckState& st = states_.at(ev.key);
  if (st.phase != Phase::WaitingUncoordinated)
    throw Error(ErrorCode::InvariantViolation,
                "deadline for a truck that is not waiting");
  Duration wait = ev.time - st.hub_arrival;
  st.budget_remaining -= wait;
  st.waited += wait;
  hub_announcements_[ev.hub].erase(ev.key);
  depart(ev.key, ev.time, -1, wait);
}

SimulationResult SimEngine::run() {
  if (ran_) throw Error(ErrorCode::BadParams, "engine already ran");
  ran_ = true;

  for (std::size_t i = 0; i < scenario_.trucks.size(); ++i)
    schedule(scenario_.trucks[i].origin_departure, kOriginDeparture,
             scenario_.trucks[i].segments.front().start_node,
             scenario_.trucks[i].id);

  while (!events_.empty()) {
    Event ev = events_.top();
    events_.pop();
    result_.finished = std::max(result_.finished, ev.time);
    switch (ev.kind) {
      case kOriginDeparture:
        depart(ev.key, ev.time, -1, Duration{0});
        break;
      case kHubArrival:
        on_hub_arrival(ev);
        break;
      case kTriggerCheck:
        on_trigger_check(ev);
        break;
      case kPlatoonDeparture:
        on_platoon_departure(ev);
        break;
      case kDeadlineDeparture:
        on_deadline_departure(ev);
        break;
      case kDestinationArrival:
        states_.at(ev.key).phase = Phase::Done;
        break;
    }
  }

  for (const auto& [truck, st] : states_)
    if (st.phase != Phase::Done)
      throw Error(ErrorCode::InvariantViolation,
                  "truck " + std::to_string(truck) + " never finished");
  for (Itinerary& it : result_.itineraries)
    it.waited = states_.at(it.truck).waited;
  return std::move(result_);
}

SimulationResult run_simulation(const Scenario& scenario, Strategy strategy,
                                RunOptions options) {
  return SimEngine(scenario, strategy, options).run();
}

}  // namespace platoon
