#include "platoon/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>

namespace platoon {

std::string format_dollars(Money m) {
  // Cents, half-even.
  std::int64_t cents = mul_div_half_even(m.micros, 1, 10'000);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", cents < 0 ? "-" : "",
                static_cast<long long>(std::abs(cents) / 100),
                static_cast<long long>(std::abs(cents) % 100));
  return buf;
}

void EconomicParams::validate() const {
  if (reward_per_follower_km.micros <= 0 || waiting_cost_per_hour.micros <= 0 ||
      trigger_margin.us <= 0 || max_batch_trucks <= 0 ||
      max_batch_platoons <= 0 || speed_kmh <= 0.0 || waiting_budget.us <= 0 ||
      start_window.us <= 0)
    throw Error(ErrorCode::BadParams, "economic parameters must be positive");
  if (!(fuel_saving_fraction > 0.0 && fuel_saving_fraction < 1.0))
    throw Error(ErrorCode::BadParams, "fuel_saving_fraction must be in (0,1)");
  if (max_batch_trucks > 64)
    throw Error(ErrorCode::BadParams, "max_batch_trucks above 64 is unsupported");
}

EconomicParams default_params() {
  EconomicParams p;
  p.reward_per_follower_km = Money{52'500};        // $5.25 per 100 km
  p.waiting_cost_per_hour = Money{20'000'000};     // $20/h
  p.fuel_saving_fraction = 0.10;
  p.trigger_margin = Duration::minutes(5);
  p.max_batch_trucks = 25;
  p.max_batch_platoons = 6000;
  p.speed_kmh = 80.0;
  p.waiting_budget = Duration::minutes(20);
  p.start_window = Duration::hours(3);
  return p;
}

int Scenario::fleet_count() const {
  int f = 0;
  for (const Truck& t : trucks) f = std::max(f, t.fleet);
  return f;
}

std::vector<int> fleet_sizes_largest_remainder(int n,
                                               const std::vector<double>& shares) {
  if (n <= 0) throw Error(ErrorCode::BadShares, "truck count must be positive");
  if (shares.empty()) throw Error(ErrorCode::BadShares, "no fleet shares");
  double sum = std::accumulate(shares.begin(), shares.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorCode::BadShares, "fleet shares must sum to 1");
  for (double s : shares)
    if (s < 0.0) throw Error(ErrorCode::BadShares, "negative fleet share");

  std::vector<int> sizes(shares.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  int assigned = 0;
  for (std::size_t f = 0; f < shares.size(); ++f) {
    double quota = shares[f] * n;
    sizes[f] = static_cast<int>(std::floor(quota + 1e-9));
    assigned += sizes[f];
    remainders.push_back({quota - sizes[f], f});
  }
  // Hand out the leftover seats by largest fractional part, smaller fleet
  // index first on ties. Leftover is at most the number of fleets.
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int k = 0; k < n - assigned; ++k) sizes[remainders[k].second] += 1;
  return sizes;
}

namespace {

// Unbiased draw in [0, n) from explicit 64-bit outputs, so results do not
// depend on the standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::BadParams, "uniform_below(0)");
  std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
  for (;;) {
    std::uint64_t x = rng();
    if (x <= limit) return x % n;
  }
}

}  // namespace

Scenario generate_scenario(const RoadNetwork& net, int n_trucks,
                           const std::vector<double>& fleet_shares,
                           Duration start_window, std::uint64_t seed,
                           const EconomicParams& params) {
  params.validate();
  std::vector<int> hubs = net.hub_ids();
  if (hubs.size() < 2)
    throw Error(ErrorCode::BadParams, "network needs at least two hubs");
  std::vector<int> sizes = fleet_sizes_largest_remainder(n_trucks, fleet_shares);

  Scenario sc;
  sc.network = net;
  sc.params = params;
  sc.seed = seed;
  sc.horizon = Duration{0};

  std::mt19937_64 rng(seed);
  int fleet = 1;
  int left_in_fleet = sizes[0];
  for (int i = 0; i < n_trucks; ++i) {
    while (left_in_fleet == 0 && fleet < static_cast<int>(sizes.size())) {
      ++fleet;
      left_in_fleet = sizes[fleet - 1];
    }

    Truck t;
    t.id = i;
    t.fleet = fleet;
    --left_in_fleet;

    // Resample until the drawn hub pair is distinct and connected.
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 10000)
        throw Error(ErrorCode::Unreachable, "could not draw a reachable hub pair");
      int origin = hubs[uniform_below(rng, hubs.size())];
      int destination = hubs[uniform_below(rng, hubs.size())];
      if (origin == destination) continue;
      try {
        t.path = shortest_path(net, origin, destination);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Unreachable) continue;
        throw;
      }
      break;
    }
    t.segments = segment_path(t.path, net);
    t.origin_departure =
        TimePoint{static_cast<std::int64_t>(
            uniform_below(rng, static_cast<std::uint64_t>(start_window.us) + 1))};
    t.waiting_budget = params.waiting_budget;
    sc.trucks.push_back(std::move(t));
  }

  // Reported horizon: latest possible arrival if every budget is spent.
  for (const Truck& t : sc.trucks) {
    TimePoint done = t.origin_departure +
                     travel_time(t.path.edges, params.speed_kmh) + t.waiting_budget;
    sc.horizon = std::max(sc.horizon, done - TimePoint{0});
  }
  return sc;
}

}  // namespace platoon
