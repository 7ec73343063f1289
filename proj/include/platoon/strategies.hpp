#ifndef PLATOON_STRATEGIES_HPP
#define PLATOON_STRATEGIES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "platoon/feasibility.hpp"
#include "platoon/units.hpp"

namespace platoon {

enum class Strategy { SingleFleet, ParetoCrossFleet, SystemMax };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct StrategySolution {
  std::vector<int> selected;            // batch candidate indices, sorted
  std::map<int, Money> per_fleet_profit;
  Money total_profit;
  Strategy strategy = Strategy::SystemMax;
  Duration solve_time;
  int variables = 0;    // decision variables in the solved program
  int constraints = 0;  // cover rows plus any per-fleet floors
};

// Weighted exact-cover (set partitioning) instance with optional lower-bound
// side constraints: maximize sum of selected weights such that every element
// is covered exactly once and, for each floor, the selected side weights sum
// to at least the bound. Every element must have a singleton candidate.
struct ExactCoverInstance {
  struct Candidate {
    std::uint64_t mask = 0;
    std::int64_t weight = 0;
    std::vector<std::int64_t> side;  // one entry per floor constraint
  };
  struct Floor {
    std::int64_t bound = 0;
  };

  int n_elements = 0;
  std::vector<Candidate> candidates;
  std::vector<Floor> floors;
};

// Optimal selection via depth-first branch and bound with memoized bounds.
// Ties on the objective are broken by the lexicographically smallest sorted
// index set. `seed` optionally warm-starts the incumbent with a known
// feasible selection. Throws Infeasible when no feasible cover exists.
std::vector<int> solve_exact_cover(const ExactCoverInstance& inst,
                                   const std::optional<std::vector<int>>& seed = {});

// The cover program behind solve_single_fleet: elements are the fleet's
// batch positions, candidates the fleet-pure platoons. cand_map (optional)
// receives the batch candidate index of each instance candidate.
ExactCoverInstance single_fleet_cover(const Batch& batch, int fleet,
                                      std::vector<int>* cand_map = nullptr);

// The cover program behind solve_pareto / solve_system_max: elements are all
// batch positions, candidates all platoons. With `baseline`, adds one floor
// per present fleet (Pareto); without, no floors (system max).
ExactCoverInstance cross_fleet_cover(const Batch& batch,
                                     const std::map<int, Money>* baseline = nullptr);

// Single-fleet program for one fleet: only platoons made exclusively of that
// fleet's trucks, maximizing the fleet's profit over an exact cover of the
// fleet's batch trucks.
StrategySolution solve_single_fleet(const Batch& batch, int fleet);

// Runs the per-fleet program for every fleet present and merges the results
// into one batch-wide solution.
StrategySolution solve_single_fleet_combined(const Batch& batch);

// Cross-fleet program: maximize total profit subject to exact cover and to
// every fleet earning at least its single-fleet baseline.
StrategySolution solve_pareto(const Batch& batch,
                              const std::map<int, Money>& baseline);

// Total-profit maximization with no per-fleet floors; the upper bound of the
// achievable batch profit.
StrategySolution solve_system_max(const Batch& batch);

// Exhaustive enumeration of all exact covers, for verification. Same
// objective and tie-break as the solvers. Throws TooLarge above 12 trucks.
StrategySolution brute_force_oracle(const Batch& batch, Strategy strategy,
                                    const std::map<int, Money>& baseline = {});

}  // namespace platoon

#endif  // PLATOON_STRATEGIES_HPP
