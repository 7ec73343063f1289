#include "platoon/serialize.hpp"

#include <fstream>

namespace platoon {

namespace {

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw Error(ErrorCode::Schema, std::string("missing field: ") + key);
  return *it;
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Schema,
                std::string("bad field ") + key + ": " + e.what());
  }
}

const char* kind_name(NodeKind k) {
  return k == NodeKind::Hub ? "hub" : "junction";
}

NodeKind kind_from_name(const std::string& s) {
  if (s == "hub") return NodeKind::Hub;
  if (s == "junction") return NodeKind::Junction;
  throw Error(ErrorCode::Schema, "unknown node kind: " + s);
}

const char* policy_name(TriggerSingletonPolicy p) {
  return p == TriggerSingletonPolicy::WaitUntilDeadline ? "wait_until_deadline"
                                                        : "depart_at_arrival";
}

TriggerSingletonPolicy policy_from_name(const std::string& s) {
  if (s == "wait_until_deadline" || s == "wait")
    return TriggerSingletonPolicy::WaitUntilDeadline;
  if (s == "depart_at_arrival" || s == "depart")
    return TriggerSingletonPolicy::DepartAtArrival;
  throw Error(ErrorCode::Schema, "unknown trigger singleton policy: " + s);
}

Json money_map_to_json(const std::map<int, Money>& m) {
  Json j = Json::object();
  for (const auto& [fleet, v] : m) j[std::to_string(fleet)] = v.micros;
  return j;
}

std::map<int, Money> money_map_from_json(const Json& j) {
  std::map<int, Money> m;
  for (auto it = j.begin(); it != j.end(); ++it)
    m[std::stoi(it.key())] = Money{it.value().get<std::int64_t>()};
  return m;
}

Path path_from_nodes(const RoadNetwork& net, const std::vector<int>& nodes) {
  if (nodes.size() < 2) throw Error(ErrorCode::Schema, "path needs two nodes");
  Path p;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!net.has_edge(nodes[i], nodes[i + 1]))
      throw Error(ErrorCode::Schema,
                  "no edge " + std::to_string(nodes[i]) + " -> " +
                      std::to_string(nodes[i + 1]));
    p.edges.push_back(
        Edge{nodes[i], nodes[i + 1], net.edge_length(nodes[i], nodes[i + 1])});
  }
  return p;
}

}  // namespace

Json network_to_json(const RoadNetwork& net) {
  Json nodes = Json::array();
  Json edges = Json::array();
  for (int id : net.node_ids()) {
    nodes.push_back({{"id", id}, {"kind", kind_name(net.node_kind(id))}});
    for (const Edge& e : net.out_edges(id))
      edges.push_back({{"from", e.from}, {"to", e.to}, {"length_km", e.length_km}});
  }
  return Json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

RoadNetwork network_from_json(const Json& j) {
  RoadNetwork net;
  try {
    for (const Json& n : field(j, "nodes"))
      net.add_node(get<int>(n, "id"), kind_from_name(get<std::string>(n, "kind")));
    for (const Json& e : field(j, "edges"))
      net.add_edge(get<int>(e, "from"), get<int>(e, "to"),
                   get<double>(e, "length_km"));
  } catch (const Error& err) {
    if (err.code() == ErrorCode::Schema) throw;
    throw Error(ErrorCode::Schema, err.what());
  }
  return net;
}

Json params_to_json(const EconomicParams& p) {
  return Json{
      {"reward_per_follower_km_micros", p.reward_per_follower_km.micros},
      {"waiting_cost_per_hour_micros", p.waiting_cost_per_hour.micros},
      {"fuel_saving_fraction", p.fuel_saving_fraction},
      {"trigger_margin_us", p.trigger_margin.us},
      {"max_batch_trucks", p.max_batch_trucks},
      {"max_batch_platoons", p.max_batch_platoons},
      {"speed_kmh", p.speed_kmh},
      {"waiting_budget_us", p.waiting_budget.us},
      {"start_window_us", p.start_window.us},
      {"trigger_singleton_policy", policy_name(p.trigger_singleton_policy)},
  };
}

EconomicParams params_from_json(const Json& j) {
  EconomicParams p;
  p.reward_per_follower_km =
      Money{get<std::int64_t>(j, "reward_per_follower_km_micros")};
  p.waiting_cost_per_hour =
      Money{get<std::int64_t>(j, "waiting_cost_per_hour_micros")};
  p.fuel_saving_fraction = get<double>(j, "fuel_saving_fraction");
  p.trigger_margin = Duration{get<std::int64_t>(j, "trigger_margin_us")};
  p.max_batch_trucks = get<int>(j, "max_batch_trucks");
  p.max_batch_platoons = get<int>(j, "max_batch_platoons");
  p.speed_kmh = get<double>(j, "speed_kmh");
  p.waiting_budget = Duration{get<std::int64_t>(j, "waiting_budget_us")};
  p.start_window = Duration{get<std::int64_t>(j, "start_window_us")};
  p.trigger_singleton_policy =
      policy_from_name(get<std::string>(j, "trigger_singleton_policy"));
  return p;
}

Json scenario_to_json(const Scenario& sc) {
  Json trucks = Json::array();
  for (const Truck& t : sc.trucks)
    trucks.push_back({{"id", t.id},
                      {"fleet", t.fleet},
                      {"origin_departure_us", t.origin_departure.us},
                      {"waiting_budget_us", t.waiting_budget.us},
                      {"path", t.path.node_sequence()}});
  return Json{{"seed", sc.seed},
              {"horizon_us", sc.horizon.us},
              {"params", params_to_json(sc.params)},
              {"network", network_to_json(sc.network)},
              {"trucks", std::move(trucks)}};
}

Scenario scenario_from_json(const Json& j) {
  Scenario sc;
  sc.seed = get<std::uint64_t>(j, "seed");
  sc.params = params_from_json(field(j, "params"));
  sc.network = network_from_json(field(j, "network"));

  for (const Json& tj : field(j, "trucks")) {
    Truck t;
    t.id = get<int>(tj, "id");
    t.fleet = get<int>(tj, "fleet");
    if (t.fleet < 1) throw Error(ErrorCode::Schema, "fleet ids are 1-based");
    t.origin_departure = TimePoint{get<std::int64_t>(tj, "origin_departure_us")};
    t.waiting_budget = Duration{get<std::int64_t>(tj, "waiting_budget_us")};
    if (tj.contains("path")) {
      t.path = path_from_nodes(sc.network, get<std::vector<int>>(tj, "path"));
      validate_path(t.path, sc.network);
    } else {
      t.path = shortest_path(sc.network, get<int>(tj, "origin"),
                             get<int>(tj, "destination"));
    }
    t.segments = segment_path(t.path, sc.network);
    sc.trucks.push_back(std::move(t));
  }

  if (j.contains("horizon_us")) {
    sc.horizon = Duration{get<std::int64_t>(j, "horizon_us")};
  } else {
    for (const Truck& t : sc.trucks) {
      TimePoint done = t.origin_departure +
                       travel_time(t.path.edges, sc.params.speed_kmh) +
                       t.waiting_budget;
      sc.horizon = std::max(sc.horizon, done - TimePoint{0});
    }
  }
  return sc;
}

namespace {

Json selected_to_json(const SelectedPlatoon& sp) {
  return Json{{"trucks", sp.trucks},
              {"departure_us", sp.departure.us},
              {"per_fleet_micros", money_map_to_json(sp.per_fleet_profit)},
              {"total_micros", sp.total_profit.micros}};
}

SelectedPlatoon selected_from_json(const Json& j) {
  SelectedPlatoon sp;
  sp.trucks = get<std::vector<int>>(j, "trucks");
  sp.departure = TimePoint{get<std::int64_t>(j, "departure_us")};
  sp.per_fleet_profit = money_map_from_json(field(j, "per_fleet_micros"));
  sp.total_profit = Money{get<std::int64_t>(j, "total_micros")};
  return sp;
}

Json record_to_json(const StrategyRecord& rec, bool include_timing) {
  Json j{{"strategy", strategy_name(rec.strategy)},
         {"total_micros", rec.total.micros},
         {"per_fleet_micros", money_map_to_json(rec.per_fleet)},
         {"variables", rec.variables},
         {"constraints", rec.constraints}};
  if (include_timing) j["solve_time_us"] = rec.solve_time.us;
  Json sel = Json::array();
  for (const SelectedPlatoon& sp : rec.selected) sel.push_back(selected_to_json(sp));
  j["selected"] = std::move(sel);
  return j;
}

StrategyRecord record_from_json(const Json& j) {
  StrategyRecord rec;
  rec.strategy = strategy_from_name(get<std::string>(j, "strategy"));
  rec.total = Money{get<std::int64_t>(j, "total_micros")};
  rec.per_fleet = money_map_from_json(field(j, "per_fleet_micros"));
  rec.variables = get<int>(j, "variables");
  rec.constraints = get<int>(j, "constraints");
  if (j.contains("solve_time_us"))
    rec.solve_time = Duration{get<std::int64_t>(j, "solve_time_us")};
  for (const Json& s : field(j, "selected"))
    rec.selected.push_back(selected_from_json(s));
  return rec;
}

Json instance_to_json(const InstanceRecord& inst, bool include_timing) {
  Json recs = Json::array();
  for (const StrategyRecord& r : inst.solutions)
    recs.push_back(record_to_json(r, include_timing));
  return Json{{"id", inst.id},
              {"hub", inst.hub},
              {"time_us", inst.time.us},
              {"trigger_truck", inst.trigger_truck},
              {"batch_trucks", inst.batch_trucks},
              {"candidate_count", inst.candidate_count},
              {"fleets_present", inst.fleets_present},
              {"applied", strategy_name(inst.applied)},
              {"solutions", std::move(recs)},
              {"realized_platoons", inst.realized_platoons}};
}

InstanceRecord instance_from_json(const Json& j) {
  InstanceRecord inst;
  inst.id = get<int>(j, "id");
  inst.hub = get<int>(j, "hub");
  inst.time = TimePoint{get<std::int64_t>(j, "time_us")};
  inst.trigger_truck = get<int>(j, "trigger_truck");
  inst.batch_trucks = get<std::vector<int>>(j, "batch_trucks");
  inst.candidate_count = get<int>(j, "candidate_count");
  inst.fleets_present = get<std::vector<int>>(j, "fleets_present");
  inst.applied = strategy_from_name(get<std::string>(j, "applied"));
  for (const Json& r : field(j, "solutions"))
    inst.solutions.push_back(record_from_json(r));
  inst.realized_platoons = get<std::vector<int>>(j, "realized_platoons");
  return inst;
}

Json platoon_to_json(const RealizedPlatoon& p) {
  Json members = Json::array();
  for (const PlatoonMember& m : p.members)
    members.push_back({{"truck", m.truck}, {"nodes", m.nodes}});
  return Json{{"id", p.id},
              {"hub", p.hub},
              {"departure_us", p.departure.us},
              {"members", std::move(members)}};
}

RealizedPlatoon platoon_from_json(const Json& j) {
  RealizedPlatoon p;
  p.id = get<int>(j, "id");
  p.hub = get<int>(j, "hub");
  p.departure = TimePoint{get<std::int64_t>(j, "departure_us")};
  for (const Json& m : field(j, "members"))
    p.members.push_back(
        PlatoonMember{get<int>(m, "truck"), get<std::vector<int>>(m, "nodes")});
  return p;
}

Json itinerary_to_json(const Itinerary& it) {
  Json legs = Json::array();
  for (const Leg& l : it.legs)
    legs.push_back({{"from", l.from},
                    {"to", l.to},
                    {"departure_us", l.departure.us},
                    {"arrival_us", l.arrival.us},
                    {"platoon", l.platoon},
                    {"wait_us", l.wait.us}});
  return Json{{"truck", it.truck},
              {"fleet", it.fleet},
              {"budget_initial_us", it.budget_initial.us},
              {"waited_us", it.waited.us},
              {"legs", std::move(legs)}};
}

Itinerary itinerary_from_json(const Json& j) {
  Itinerary it;
  it.truck = get<int>(j, "truck");
  it.fleet = get<int>(j, "fleet");
  it.budget_initial = Duration{get<std::int64_t>(j, "budget_initial_us")};
  it.waited = Duration{get<std::int64_t>(j, "waited_us")};
  for (const Json& lj : field(j, "legs")) {
    Leg l;
    l.from = get<int>(lj, "from");
    l.to = get<int>(lj, "to");
    l.departure = TimePoint{get<std::int64_t>(lj, "departure_us")};
    l.arrival = TimePoint{get<std::int64_t>(lj, "arrival_us")};
    l.platoon = get<int>(lj, "platoon");
    l.wait = Duration{get<std::int64_t>(lj, "wait_us")};
    it.legs.push_back(l);
  }
  return it;
}

}  // namespace

Json result_to_json(const SimulationResult& result, bool include_timing) {
  Json instances = Json::array();
  for (const InstanceRecord& inst : result.instances)
    instances.push_back(instance_to_json(inst, include_timing));
  Json platoons = Json::array();
  for (const RealizedPlatoon& p : result.platoons)
    platoons.push_back(platoon_to_json(p));
  Json itineraries = Json::array();
  for (const Itinerary& it : result.itineraries)
    itineraries.push_back(itinerary_to_json(it));
  return Json{{"strategy", strategy_name(result.strategy)},
              {"seed", result.seed},
              {"params", params_to_json(result.params)},
              {"n_trucks", result.n_trucks},
              {"n_fleets", result.n_fleets},
              {"fleet_profit_micros", money_map_to_json(result.fleet_profit)},
              {"total_profit_micros", result.total_profit.micros},
              {"follower_km", result.follower_km},
              {"total_truck_km", result.total_truck_km},
              {"finished_us", result.finished.us},
              {"instances", std::move(instances)},
              {"platoons", std::move(platoons)},
              {"itineraries", std::move(itineraries)}};
}

SimulationResult result_from_json(const Json& j) {
  SimulationResult r;
  r.strategy = strategy_from_name(get<std::string>(j, "strategy"));
  r.seed = get<std::uint64_t>(j, "seed");
  r.params = params_from_json(field(j, "params"));
  r.n_trucks = get<int>(j, "n_trucks");
  r.n_fleets = get<int>(j, "n_fleets");
  r.fleet_profit = money_map_from_json(field(j, "fleet_profit_micros"));
  r.total_profit = Money{get<std::int64_t>(j, "total_profit_micros")};
  r.follower_km = get<double>(j, "follower_km");
  r.total_truck_km = get<double>(j, "total_truck_km");
  r.finished = TimePoint{get<std::int64_t>(j, "finished_us")};
  for (const Json& i : field(j, "instances"))
    r.instances.push_back(instance_from_json(i));
  for (const Json& p : field(j, "platoons"))
    r.platoons.push_back(platoon_from_json(p));
  for (const Json& it : field(j, "itineraries"))
    r.itineraries.push_back(itinerary_from_json(it));
  return r;
}

Json graph_to_json(const FeasibilityGraph& g) {
  Json vertices = Json::array();
  for (const Announcement& a : g.vertices()) {
    std::vector<int> nodes{a.next_segment.start_node};
    for (const Edge& e : a.next_segment.edges) nodes.push_back(e.to);
    vertices.push_back({{"truck", a.truck},
                        {"fleet", a.fleet},
                        {"hub", a.hub},
                        {"arrival_us", a.arrival.us},
                        {"latest_departure_us", a.latest_departure.us},
                        {"next_segment_nodes", std::move(nodes)}});
  }
  Json edges = Json::array();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t k = i + 1; k < g.size(); ++k)
      if (g.adjacent(i, k)) edges.push_back({i, k});
  return Json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

Json cover_instance_to_json(const ExactCoverInstance& inst) {
  Json candidates = Json::array();
  for (const auto& c : inst.candidates) {
    std::vector<int> members;
    for (int e = 0; e < inst.n_elements; ++e)
      if (c.mask & (std::uint64_t{1} << e)) members.push_back(e);
    candidates.push_back(
        {{"members", std::move(members)}, {"weight", c.weight}, {"side", c.side}});
  }
  Json floors = Json::array();
  for (const auto& f : inst.floors) floors.push_back(f.bound);
  return Json{{"n_elements", inst.n_elements},
              {"candidates", std::move(candidates)},
              {"floors", std::move(floors)}};
}

Json report_to_json(const RunReport& report) {
  Json fleets = Json::array();
  for (const FleetReport& fr : report.fleets) {
    Json fj{{"fleet", fr.fleet},
            {"profit_micros", fr.total.micros},
            {"profit", format_dollars(fr.total)},
            {"gain_abs_micros", fr.gain_abs.micros},
            {"follower_km", fr.follower_km},
            {"truck_km", fr.truck_km}};
    if (fr.gain_pct)
      fj["gain_pct"] = *fr.gain_pct;
    else
      fj["gain_pct"] = nullptr;
    fleets.push_back(std::move(fj));
  }
  Json points = Json::array();
  for (const SolveTimePoint& p : report.solve_times.points)
    points.push_back({{"instance", p.instance},
                      {"hub", p.hub},
                      {"batch_size", p.batch_size},
                      {"candidates", p.candidates},
                      {"solve_time_us", p.time.us},
                      {"over_margin", p.over_margin}});
  return Json{{"seed", report.seed},
              {"strategy", strategy_name(report.strategy)},
              {"total_micros", report.total.micros},
              {"total", format_dollars(report.total)},
              {"fuel_reduction_pct", report.fuel_reduction_pct},
              {"instance_count", report.instance_count},
              {"platoon_count", report.platoon_count},
              {"fleets", std::move(fleets)},
              {"solve_times",
               Json{{"max_us", report.solve_times.max.us},
                    {"mean_us", report.solve_times.mean.us},
                    {"over_margin", report.solve_times.over_margin},
                    {"points", std::move(points)}}}};
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Schema, path + ": " + e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::Io, "short write to " + path);
}

}  // namespace platoon
