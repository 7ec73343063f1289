#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "platoon/scenario.hpp"
#include "platoon/se33.hpp"

using namespace platoon;

TEST_CASE("largest-remainder fleet sizes") {
  CHECK(fleet_sizes_largest_remainder(10, {0.4, 0.3, 0.2, 0.1}) ==
        std::vector<int>{4, 3, 2, 1});
  CHECK(fleet_sizes_largest_remainder(2500, {0.4, 0.3, 0.2, 0.1}) ==
        std::vector<int>{1000, 750, 500, 250});
  CHECK(fleet_sizes_largest_remainder(500, {0.4, 0.3, 0.2, 0.1}) ==
        std::vector<int>{200, 150, 100, 50});
  // 7 * (1/3, 1/3, 1/3): floors give 2+2+2, the remainder goes to the
  // earliest largest fractional part.
  CHECK(fleet_sizes_largest_remainder(7, {1.0 / 3, 1.0 / 3, 1.0 / 3}) ==
        std::vector<int>{3, 2, 2});
  CHECK(fleet_sizes_largest_remainder(1, {0.5, 0.5}) == std::vector<int>{1, 0});
}

TEST_CASE("shares must be positive and sum to one") {
  CHECK_THROWS_AS(fleet_sizes_largest_remainder(10, {}), Error);
  CHECK_THROWS_AS(fleet_sizes_largest_remainder(10, {0.5, 0.4}), Error);
  CHECK_THROWS_AS(fleet_sizes_largest_remainder(10, {1.2, -0.2}), Error);
  try {
    fleet_sizes_largest_remainder(10, {0.5, 0.4});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadShares);
  }
}

TEST_CASE("default parameters") {
  EconomicParams p = default_params();
  CHECK(p.reward_per_follower_km.micros == 52'500);  // $5.25 per 100 km
  CHECK(p.waiting_cost_per_hour.micros == 20'000'000);
  CHECK(p.fuel_saving_fraction == 0.10);
  CHECK(p.trigger_margin.us == 5 * kMicrosPerMinute);
  CHECK(p.max_batch_trucks == 25);
  CHECK(p.max_batch_platoons == 6000);
  CHECK(p.speed_kmh == 80.0);
  CHECK(p.waiting_budget.us == 20 * kMicrosPerMinute);
  CHECK(p.start_window.us == 3 * kMicrosPerHour);
  CHECK_NOTHROW(p.validate());

  EconomicParams bad = p;
  bad.fuel_saving_fraction = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.max_batch_trucks = 65;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.speed_kmh = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("generated scenarios are well formed") {
  RoadNetwork net = se33_network();
  EconomicParams params = default_params();
  Scenario sc = generate_scenario(net, 100, {0.4, 0.3, 0.2, 0.1},
                                  params.start_window, 42, params);
  REQUIRE(sc.trucks.size() == 100);
  CHECK(sc.seed == 42);
  CHECK(sc.fleet_count() == 4);

  std::vector<int> per_fleet(5, 0);
  std::set<int> ids;
  TimePoint latest_finish{0};
  for (const Truck& t : sc.trucks) {
    CHECK(ids.insert(t.id).second);
    REQUIRE(t.fleet >= 1);
    REQUIRE(t.fleet <= 4);
    per_fleet[t.fleet]++;
    CHECK(t.path.origin() != t.path.destination());
    CHECK_NOTHROW(validate_path(t.path, net));
    CHECK(net.is_hub(t.path.origin()));
    CHECK(net.is_hub(t.path.destination()));
    CHECK(!t.segments.empty());
    CHECK(t.origin_departure.us >= 0);
    CHECK(t.origin_departure.us <= params.start_window.us);
    CHECK(t.waiting_budget == params.waiting_budget);
    TimePoint finish = t.origin_departure +
                       travel_time(t.path.edges, params.speed_kmh) +
                       t.waiting_budget;
    if (finish > latest_finish) latest_finish = finish;
  }
  CHECK(per_fleet[1] == 40);
  CHECK(per_fleet[2] == 30);
  CHECK(per_fleet[3] == 20);
  CHECK(per_fleet[4] == 10);
  CHECK(sc.horizon == latest_finish - TimePoint{0});
}

TEST_CASE("generation is deterministic in the seed") {
  RoadNetwork net = se33_network();
  EconomicParams params = default_params();
  Scenario a = generate_scenario(net, 60, {0.6, 0.4}, params.start_window, 7, params);
  Scenario b = generate_scenario(net, 60, {0.6, 0.4}, params.start_window, 7, params);
  Scenario c = generate_scenario(net, 60, {0.6, 0.4}, params.start_window, 8, params);
  REQUIRE(a.trucks.size() == b.trucks.size());
  bool all_equal = true;
  bool any_differs_from_c = false;
  for (std::size_t i = 0; i < a.trucks.size(); ++i) {
    const Truck &x = a.trucks[i], &y = b.trucks[i];
    all_equal = all_equal && x.id == y.id && x.fleet == y.fleet &&
                x.origin_departure == y.origin_departure &&
                x.path.node_sequence() == y.path.node_sequence();
    const Truck& z = c.trucks[i];
    any_differs_from_c =
        any_differs_from_c || x.origin_departure != z.origin_departure ||
        x.path.node_sequence() != z.path.node_sequence();
  }
  CHECK(all_equal);
  CHECK(any_differs_from_c);
}

TEST_CASE("the bundled network has the documented shape") {
  RoadNetwork net = se33_network();
  CHECK(net.node_count() == 33);
  CHECK(net.hub_count() == 33);
  CHECK(net.edge_count() == 104);  // 52 two-way roads
  // Road lengths are symmetric and inside [40, 117] km.
  for (int id : net.node_ids())
    for (const Edge& e : net.out_edges(id)) {
      CHECK(e.length_km >= 40.0);
      CHECK(e.length_km <= 117.0);
      CHECK(net.edge_length(e.to, e.from) == e.length_km);
    }
  // Corner hub 1 connects only rightwards and downwards.
  CHECK(net.out_edges(1).size() == 2);
  CHECK(net.has_edge(1, 2));
  CHECK(net.has_edge(1, 12));
}
