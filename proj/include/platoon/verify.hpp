#ifndef PLATOON_VERIFY_HPP
#define PLATOON_VERIFY_HPP

#include <string>
#include <vector>

#include "platoon/sim_engine.hpp"

namespace platoon {

// Replays the invariant suite against a stored result: budget safety, exact
// cover per instance, Pareto floors, strategy ordering, fuel bound,
// coordinated-departure honesty, problem-size census, and profit totals.
// Returns one "invariant-name: detail" line per violation; empty means pass.
std::vector<std::string> verify_result(const SimulationResult& result);

}  // namespace platoon

#endif  // PLATOON_VERIFY_HPP
