#ifndef PLATOON_PROFIT_HPP
#define PLATOON_PROFIT_HPP

#include <map>
#include <span>
#include <vector>

#include "platoon/feasibility.hpp"
#include "platoon/scenario.hpp"
#include "platoon/units.hpp"

namespace platoon {

// Earliest feasible departure of a platoon: the latest member arrival.
// Throws Infeasible if that lies beyond some member's latest departure.
TimePoint departure_time(const Batch& batch, const std::vector<int>& members);

// Per-fleet platooning reward on one edge. With n = total trucks on the
// edge, fleet f earns rho_e * (n - 1) * counts[f] / n, rounded half-even at
// the micro-dollar. The rewards of all fleets sum to rho_e * (n - 1) up to
// that rounding.
std::vector<Money> edge_reward(Money rho_e, std::span<const int> fleet_counts);

// Waiting cost of one fleet's members: lambda per hour times each member's
// wait from its hub arrival to the platoon departure.
Money waiting_cost(Money lambda_per_hour, std::span<const TimePoint> arrivals,
                   TimePoint departure);

// Reward per following truck on an edge; linear in edge length.
Money edge_rho(const EconomicParams& params, double length_km);

// Per-fleet and total profit of one candidate platoon: rewards accumulated
// edge by edge over the union of the members' next segments, wait costs per
// member. Singletons come out at exactly zero.
void platoon_profit(const Batch& batch, CandidatePlatoon& candidate,
                    const EconomicParams& params);

// Fills departure and profits for every candidate in the batch.
void fill_profits(Batch& batch, const EconomicParams& params);

}  // namespace platoon

#endif  // PLATOON_PROFIT_HPP
