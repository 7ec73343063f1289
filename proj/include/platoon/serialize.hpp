#ifndef PLATOON_SERIALIZE_HPP
#define PLATOON_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "platoon/feasibility.hpp"
#include "platoon/metrics.hpp"
#include "platoon/sim_engine.hpp"
#include "platoon/strategies.hpp"

namespace platoon {

// Insertion-ordered JSON keeps serialized output byte-stable.
using Json = nlohmann::ordered_json;

Json network_to_json(const RoadNetwork& net);
RoadNetwork network_from_json(const Json& j);

Json params_to_json(const EconomicParams& params);
EconomicParams params_from_json(const Json& j);

Json scenario_to_json(const Scenario& sc);
// Truck routes are given either as an explicit "path" node list or as
// "origin"/"destination", which are routed by shortest path.
Scenario scenario_from_json(const Json& j);

// include_timing=false drops solve-time fields, the only wall-clock-dependent
// values, so two runs of the same scenario compare byte-identical.
Json result_to_json(const SimulationResult& result, bool include_timing = true);
SimulationResult result_from_json(const Json& j);

Json graph_to_json(const FeasibilityGraph& g);
Json cover_instance_to_json(const ExactCoverInstance& inst);
Json report_to_json(const RunReport& report);

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

}  // namespace platoon

#endif  // PLATOON_SERIALIZE_HPP
