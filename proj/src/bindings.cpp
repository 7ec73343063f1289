#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "platoon/metrics.hpp"
#include "platoon/se33.hpp"
#include "platoon/serialize.hpp"
#include "platoon/verify.hpp"

namespace py = pybind11;
using namespace platoon;

namespace {

Json parse(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::Schema, "malformed JSON document");
  return j;
}

RoadNetwork network_arg(const std::string& network_json) {
  return network_json.empty() ? se33_network()
                              : network_from_json(parse(network_json));
}

std::string generate_scenario_json(int n_trucks, const std::vector<double>& shares,
                                   std::uint64_t seed,
                                   const std::string& network_json,
                                   const std::string& params_json) {
  EconomicParams params = params_json.empty() ? default_params()
                                              : params_from_json(parse(params_json));
  Scenario sc = generate_scenario(network_arg(network_json), n_trucks, shares,
                                  params.start_window, seed, params);
  return scenario_to_json(sc).dump();
}

std::string run_simulation_json(const std::string& scenario_json,
                                const std::string& strategy, bool compare,
                                bool include_timing) {
  Scenario sc = scenario_from_json(parse(scenario_json));
  RunOptions options;
  options.compare_strategies = compare;
  SimulationResult result =
      run_simulation(sc, strategy_from_name(strategy), options);
  return result_to_json(result, include_timing).dump();
}

std::vector<std::string> verify_result_json(const std::string& result_json) {
  return verify_result(result_from_json(parse(result_json)));
}

std::string report_json(const std::string& result_json,
                        const std::string& scenario_json) {
  SimulationResult result = result_from_json(parse(result_json));
  Scenario sc = scenario_from_json(parse(scenario_json));
  return report_to_json(make_report(result, sc)).dump();
}

std::vector<int> shortest_path_nodes(const std::string& network_json, int origin,
                                     int destination) {
  return shortest_path(network_arg(network_json), origin, destination)
      .node_sequence();
}

// Accepts the program layout emitted by the instance dumps: n_elements,
// candidates[{members, weight, side}], floors[].
std::vector<int> solve_cover_json(const std::string& instance_json) {
  Json j = parse(instance_json);
  ExactCoverInstance inst;
  inst.n_elements = j.at("n_elements").get<int>();
  for (const Json& cj : j.at("candidates")) {
    ExactCoverInstance::Candidate c;
    for (int e : cj.at("members").get<std::vector<int>>())
      c.mask |= std::uint64_t{1} << e;
    c.weight = cj.at("weight").get<std::int64_t>();
    if (cj.contains("side")) c.side = cj.at("side").get<std::vector<std::int64_t>>();
    inst.candidates.push_back(std::move(c));
  }
  if (j.contains("floors"))
    for (const Json& fj : j.at("floors"))
      inst.floors.push_back({fj.get<std::int64_t>()});
  return solve_exact_cover(inst);
}

}  // namespace

PYBIND11_MODULE(_platoon_coord, m) {
  m.doc() = "hub-based cross-fleet truck platoon coordination";
  py::register_exception<Error>(m, "PlatoonError");

  m.def("se33_network_json",
        [] { return network_to_json(se33_network()).dump(); },
        "bundled 33-hub benchmark network");
  m.def("default_params_json",
        [] { return params_to_json(default_params()).dump(); });
  m.def("generate_scenario_json", &generate_scenario_json, py::arg("n_trucks"),
        py::arg("shares"), py::arg("seed"), py::arg("network_json") = "",
        py::arg("params_json") = "");
  m.def("run_simulation_json", &run_simulation_json, py::arg("scenario_json"),
        py::arg("strategy"), py::arg("compare") = true,
        py::arg("include_timing") = true);
  m.def("verify_result_json", &verify_result_json, py::arg("result_json"));
  m.def("report_json", &report_json, py::arg("result_json"),
        py::arg("scenario_json"));
  m.def("shortest_path_nodes", &shortest_path_nodes, py::arg("network_json"),
        py::arg("origin"), py::arg("destination"));
  m.def("solve_cover_json", &solve_cover_json, py::arg("instance_json"));
}
