#include "platoon/profit.hpp"

#include <algorithm>
#include <cmath>

namespace platoon {

TimePoint departure_time(const Batch& batch, const std::vector<int>& members) {
  TimePoint max_arrival = batch.announcements[members.front()].arrival;
  TimePoint min_latest = batch.announcements[members.front()].latest_departure;
  for (int m : members) {
    max_arrival = std::max(max_arrival, batch.announcements[m].arrival);
    min_latest = std::min(min_latest, batch.announcements[m].latest_departure);
  }
  if (max_arrival > min_latest)
    throw Error(ErrorCode::Infeasible, "platoon departure windows do not intersect");
  return max_arrival;
}

std::vector<Money> edge_reward(Money rho_e, std::span<const int> fleet_counts) {
  std::int64_t n = 0;
  for (int c : fleet_counts) n += c;
  std::vector<Money> rewards(fleet_counts.size(), Money{0});
  if (n <= 1) return rewards;
  for (std::size_t f = 0; f < fleet_counts.size(); ++f)
    rewards[f] = mul_div_half_even(rho_e, (n - 1) * fleet_counts[f], n);
  return rewards;
}

Money waiting_cost(Money lambda_per_hour, std::span<const TimePoint> arrivals,
                   TimePoint departure) {
  Money total{0};
  for (TimePoint t : arrivals) {
    Duration wait = departure - t;
    if (wait.us < 0)
      throw Error(ErrorCode::Infeasible, "departure before member arrival");
    total += mul_div_half_even(lambda_per_hour, wait.us, kMicrosPerHour);
  }
  return total;
}

Money edge_rho(const EconomicParams& params, double length_km) {
  return Money{static_cast<std::int64_t>(
      std::llround(static_cast<double>(params.reward_per_follower_km.micros) *
                   length_km))};
}

void platoon_profit(const Batch& batch, CandidatePlatoon& candidate,
                    const EconomicParams& params) {
  candidate.departure = departure_time(batch, candidate.members);
  candidate.per_fleet_profit.clear();
  candidate.total_profit = Money{0};

  std::vector<int> fleets;
  for (int m : candidate.members) {
    int f = batch.announcements[m].fleet;
    if (std::find(fleets.begin(), fleets.end(), f) == fleets.end())
      fleets.push_back(f);
  }
  std::sort(fleets.begin(), fleets.end());
  for (int f : fleets) candidate.per_fleet_profit[f] = Money{0};

  // Union of the members' next-segment edges, deduplicated by road.
  std::vector<Edge> edges;
  for (int m : candidate.members) {
    for (const Edge& e : batch.announcements[m].next_segment.edges) {
      bool known = false;
      for (const Edge& have : edges)
        if (have.same_road(e)) {
          known = true;
          break;
        }
      if (!known) edges.push_back(e);
    }
  }

  for (const Edge& e : edges) {
    std::vector<int> counts(fleets.size(), 0);
    for (int m : candidate.members) {
      const Announcement& a = batch.announcements[m];
      for (const Edge& se : a.next_segment.edges) {
        if (se.same_road(e)) {
          auto at = std::lower_bound(fleets.begin(), fleets.end(), a.fleet);
          counts[at - fleets.begin()] += 1;
          break;
        }
      }
    }
    std::vector<Money> rewards = edge_reward(edge_rho(params, e.length_km), counts);
    for (std::size_t k = 0; k < fleets.size(); ++k)
      candidate.per_fleet_profit[fleets[k]] += rewards[k];
  }

  for (int f : fleets) {
    std::vector<TimePoint> arrivals;
    for (int m : candidate.members)
      if (batch.announcements[m].fleet == f)
        arrivals.push_back(batch.announcements[m].arrival);
    candidate.per_fleet_profit[f] -=
        waiting_cost(params.waiting_cost_per_hour, arrivals, candidate.departure);
  }

  for (const auto& [f, r] : candidate.per_fleet_profit)
    candidate.total_profit += r;
}

void fill_profits(Batch& batch, const EconomicParams& params) {
  for (CandidatePlatoon& p : batch.candidates) platoon_profit(batch, p, params);
}

}  // namespace platoon
