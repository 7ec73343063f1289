#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <vector>

#include "doctest.h"
#include "platoon/profit.hpp"

using namespace platoon;

namespace {

Announcement ann(int truck, int fleet, double arrival_h, double latest_h,
                 std::vector<Edge> edges) {
  Announcement a;
  a.truck = truck;
  a.fleet = fleet;
  a.hub = 1;
  a.arrival = TimePoint::at_hours(arrival_h);
  a.latest_departure = TimePoint::at_hours(latest_h);
  a.next_segment.edges = std::move(edges);
  a.next_segment.start_node = a.next_segment.edges.front().from;
  a.next_segment.end_node = a.next_segment.edges.back().to;
  return a;
}

Batch batch_of(std::vector<Announcement> anns) {
  Batch b;
  b.announcements = std::move(anns);
  return b;
}

}  // namespace

TEST_CASE("departure time is the latest member arrival") {
  Batch b = batch_of({ann(1, 1, 3.0, 9.0, {{1, 2, 10.0}}),
                      ann(2, 1, 5.0, 9.0, {{1, 2, 10.0}}),
                      ann(3, 1, 4.0, 9.0, {{1, 2, 10.0}})});
  CHECK(departure_time(b, {0, 1, 2}) == TimePoint::at_hours(5.0));
  CHECK(departure_time(b, {0}) == TimePoint::at_hours(3.0));

  Batch late = batch_of({ann(1, 1, 0.0, 9.0, {{1, 2, 10.0}}),
                         ann(2, 1, 10.0, 20.0, {{1, 2, 10.0}})});
  try {
    departure_time(late, {0, 1});
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Infeasible);
  }
}

TEST_CASE("edge reward splits by fleet share of followers") {
  // rho=3, counts (2,1): fleet1 gets 3*2*(2/3)=4, fleet2 gets 3*2*(1/3)=2.
  std::vector<int> counts{2, 1};
  std::vector<Money> r = edge_reward(Money::dollars(3.0), counts);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == Money::dollars(4.0));
  CHECK(r[1] == Money::dollars(2.0));

  std::vector<int> lone{1};
  CHECK(edge_reward(Money::dollars(3.0), lone) == std::vector<Money>{Money{0}});
  std::vector<int> none{0, 0};
  CHECK(edge_reward(Money::dollars(3.0), none) ==
        std::vector<Money>{Money{0}, Money{0}});

  // Single-fleet reading: counts (k, 0) pay (k-1) at rho=1.
  for (int k = 1; k <= 10; ++k) {
    std::vector<int> single{k, 0};
    std::vector<Money> got = edge_reward(Money::dollars(1.0), single);
    CHECK(got[0] == Money::dollars(static_cast<double>(k - 1)));
    CHECK(got[1] == Money{0});
  }
}

TEST_CASE("edge reward conservation within rounding") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    Money rho{static_cast<std::int64_t>(rng() % 10'000'000)};
    std::vector<int> counts(1 + rng() % 4);
    std::int64_t n = 0;
    for (int& c : counts) {
      c = static_cast<int>(rng() % 5);
      n += c;
    }
    std::vector<Money> r = edge_reward(rho, counts);
    Money sum{0};
    for (Money m : r) sum += m;
    if (n <= 1) {
      CHECK(sum == Money{0});
      continue;
    }
    std::int64_t nonzero = 0;
    for (int c : counts) nonzero += c > 0 ? 1 : 0;
    // Each participating fleet rounds by at most half a micro-dollar.
    CHECK(2 * std::abs(sum.micros - rho.micros * (n - 1)) <= nonzero);
  }
}

TEST_CASE("edge reward scales exactly when the split is exact") {
  std::vector<int> counts{2, 1};  // n = 3
  Money rho{3'000'000};           // divisible by 3
  std::vector<Money> base = edge_reward(rho, counts);
  std::vector<Money> scaled = edge_reward(Money{rho.micros * 7}, counts);
  for (std::size_t f = 0; f < counts.size(); ++f)
    CHECK(scaled[f].micros == 7 * base[f].micros);
}

TEST_CASE("waiting cost charges lambda per hour of wait") {
  TimePoint t_star = TimePoint::at_hours(2.0);
  std::vector<TimePoint> on_time{t_star, t_star};
  CHECK(waiting_cost(Money::dollars(20.0), on_time, t_star) == Money{0});

  std::vector<TimePoint> waits{TimePoint::at_hours(1.5), TimePoint::at_hours(1.75)};
  CHECK(waiting_cost(Money::dollars(20.0), waits, t_star) == Money::dollars(15.0));

  std::vector<TimePoint> lone{TimePoint::at_hours(7.0)};
  CHECK(waiting_cost(Money::dollars(20.0), lone, TimePoint::at_hours(7.0)) == Money{0});

  try {
    waiting_cost(Money::dollars(20.0), lone, TimePoint::at_hours(6.0));
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Infeasible);
  }
}

TEST_CASE("edge rho is linear in length") {
  EconomicParams p = default_params();
  CHECK(edge_rho(p, 100.0) == Money::dollars(5.25));
  CHECK(edge_rho(p, 1.0) == Money{52'500});
  CHECK(edge_rho(p, 0.5) == Money{26'250});
}

TEST_CASE("platoon profit: tabulated examples") {
  EconomicParams p = default_params();
  Edge e100{1, 2, 100.0};

  SUBCASE("singleton is exactly zero") {
    Batch b = batch_of({ann(1, 2, 1.0, 2.0, {e100})});
    b.candidates.push_back({{0}, {}, {}, {}});
    fill_profits(b, p);
    CHECK(b.candidates[0].total_profit == Money{0});
    CHECK(b.candidates[0].per_fleet_profit.at(2) == Money{0});
    CHECK(b.candidates[0].departure == TimePoint::at_hours(1.0));
  }

  SUBCASE("same-fleet pair on 100 km, simultaneous") {
    Batch b = batch_of({ann(1, 1, 1.0, 2.0, {e100}), ann(2, 1, 1.0, 2.0, {e100})});
    b.candidates.push_back({{0, 1}, {}, {}, {}});
    fill_profits(b, p);
    CHECK(b.candidates[0].per_fleet_profit.at(1) == Money::dollars(5.25));
    CHECK(b.candidates[0].total_profit == Money::dollars(5.25));
  }

  SUBCASE("cross-fleet pair, one waits a quarter hour") {
    Batch b = batch_of({ann(1, 1, 1.0, 2.0, {e100}), ann(2, 2, 1.25, 2.0, {e100})});
    b.candidates.push_back({{0, 1}, {}, {}, {}});
    fill_profits(b, p);
    const CandidatePlatoon& c = b.candidates[0];
    CHECK(c.departure == TimePoint::at_hours(1.25));
    CHECK(c.per_fleet_profit.at(1) == Money::dollars(-2.375));  // 2.625 - 5
    CHECK(c.per_fleet_profit.at(2) == Money::dollars(2.625));
    CHECK(c.total_profit == Money::dollars(0.25));
  }
}

TEST_CASE("rewards accrue only on shared edges after divergence") {
  EconomicParams p = default_params();
  Edge shared{1, 2, 50.0}, left{2, 3, 30.0}, right{2, 4, 30.0};
  Batch b = batch_of({ann(1, 1, 1.0, 2.0, {shared, left}),
                      ann(2, 1, 1.0, 2.0, {shared, right})});
  b.candidates.push_back({{0, 1}, {}, {}, {}});
  fill_profits(b, p);
  // Only the 50 km edge has two trucks; the diverging tails pay nothing.
  CHECK(b.candidates[0].per_fleet_profit.at(1) == Money{50 * 52'500});
  CHECK(b.candidates[0].total_profit == Money{50 * 52'500});
}

TEST_CASE("platoon total may go negative; strategies can decline it") {
  EconomicParams p = default_params();
  Edge tiny{1, 2, 1.0};  // reward 52,500 micro-dollars split across the pair
  Batch b = batch_of({ann(1, 1, 0.0, 2.0, {tiny}), ann(2, 2, 1.0, 2.0, {tiny})});
  b.candidates.push_back({{0, 1}, {}, {}, {}});
  fill_profits(b, p);
  // Fleet 1 waits an hour: 26,250 - 20,000,000 micro-dollars.
  CHECK(b.candidates[0].per_fleet_profit.at(1) == Money{26'250 - 20'000'000});
  CHECK(b.candidates[0].per_fleet_profit.at(2) == Money{26'250});
  CHECK(b.candidates[0].total_profit.micros < 0);
}

TEST_CASE("profit conservation across fleets on random platoons") {
  std::mt19937_64 rng(17);
  EconomicParams p = default_params();
  std::vector<Edge> pool{{1, 2, 40.0}, {1, 2, 40.0}, {2, 3, 55.0}};
  for (int trial = 0; trial < 500; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<Announcement> anns;
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      std::vector<Edge> seg{pool[rng() % pool.size()]};
      if (rng() % 2 && seg[0].to == 2) seg.push_back({2, 3, 55.0});
      anns.push_back(ann(i, 1 + static_cast<int>(rng() % 3), 0.0, 10.0, seg));
      members.push_back(i);
    }
    Batch b = batch_of(anns);
    b.candidates.push_back({members, {}, {}, {}});
    fill_profits(b, p);
    Money sum{0};
    for (const auto& [f, m] : b.candidates[0].per_fleet_profit) sum += m;
    CHECK(sum == b.candidates[0].total_profit);
  }
}
