#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "platoon/feasibility.hpp"

using namespace platoon;

namespace {

const Edge kE12{1, 2, 50.0};
const Edge kE23{2, 3, 60.0};
const Edge kE24{2, 4, 70.0};

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

bool oracle_pair(const Announcement& a, const Announcement& b) {
  bool share = false;
  for (const Edge& x : a.next_segment.edges)
    for (const Edge& y : b.next_segment.edges) share = share || x.same_road(y);
  TimePoint lo = std::max(a.arrival, b.arrival);
  TimePoint hi = std::min(a.latest_departure, b.latest_departure);
  return share && lo <= hi;
}

// Every subset that is a pairwise-feasible clique with a nonempty common
// departure window, ordered by (size, lexicographic members).
std::vector<std::vector<int>> oracle_platoons(const std::vector<Announcement>& anns) {
  int n = static_cast<int>(anns.size());
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) members.push_back(i);
    bool ok = true;
    TimePoint lo{INT64_MIN}, hi{INT64_MAX};
    for (std::size_t i = 0; i < members.size() && ok; ++i) {
      lo = std::max(lo, anns[members[i]].arrival);
      hi = std::min(hi, anns[members[i]].latest_departure);
      for (std::size_t j = i + 1; j < members.size() && ok; ++j)
        ok = oracle_pair(anns[members[i]], anns[members[j]]);
    }
    if (ok && lo <= hi) out.push_back(std::move(members));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  return out;
}

}  // namespace

TEST_CASE("pairwise feasibility needs a shared edge and overlapping windows") {
  auto g1 = build_graph({ann(1, 1, 0.0, 1.0, {kE12}), ann(2, 1, 0.5, 1.5, {kE12, kE23})});
  CHECK(g1.adjacent(0, 1));

  auto g2 = build_graph({ann(1, 1, 0.0, 1.0, {kE12}), ann(2, 1, 0.5, 1.5, {kE24})});
  CHECK(!g2.adjacent(0, 1));

  auto g3 = build_graph({ann(1, 1, 0.0, 1.0, {kE12}), ann(2, 1, 1.5, 2.0, {kE12})});
  CHECK(!g3.adjacent(0, 1));

  // Touching windows count: departure at the shared instant works for both.
  auto g4 = build_graph({ann(1, 1, 0.0, 1.0, {kE12}), ann(2, 1, 1.0, 2.0, {kE12})});
  CHECK(g4.adjacent(0, 1));
}

TEST_CASE("a complete group yields every nonempty subset") {
  std::vector<Announcement> anns;
  for (int i = 0; i < 5; ++i) anns.push_back(ann(i, 1 + i % 2, 0.1 * i, 2.0, {kE12}));
  auto cands = enumerate_platoons(build_graph(anns), 1 << 20);
  CHECK(cands.size() == 31);  // 2^5 - 1
  // Size-then-lex order puts the singletons first, in index order.
  for (int i = 0; i < 5; ++i) {
    REQUIRE(cands[i].members.size() == 1);
    CHECK(cands[i].members[0] == i);
  }
  CHECK(cands.back().members == std::vector<int>{0, 1, 2, 3, 4});
  // Departure is the latest member arrival.
  CHECK(cands.back().departure == TimePoint::at_hours(0.4));
}

TEST_CASE("triangle yields seven platoons in documented order") {
  std::vector<Announcement> anns{ann(7, 1, 0.0, 2.0, {kE12}),
                                 ann(8, 2, 0.2, 2.2, {kE12}),
                                 ann(9, 1, 0.4, 2.4, {kE12})};
  auto cands = enumerate_platoons(build_graph(anns), 100);
  REQUIRE(cands.size() == 7);
  std::vector<std::vector<int>> want{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(cands[i].members == want[i]);
}

TEST_CASE("enumeration stops at the cap") {
  std::vector<Announcement> anns;
  for (int i = 0; i < 6; ++i) anns.push_back(ann(i, 1, 0.0, 2.0, {kE12}));
  FeasibilityGraph g = build_graph(anns);
  CHECK(enumerate_platoons(g, 63).size() == 63);
  try {
    enumerate_platoons(g, 62);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

TEST_CASE("enumeration matches subset brute force on random inputs") {
  std::mt19937_64 rng(11);
  std::vector<std::vector<Edge>> pool{{kE12}, {kE12, kE23}, {kE24}, {kE23}};
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    std::vector<Announcement> anns;
    for (int i = 0; i < n; ++i) {
      double arr = 0.01 * static_cast<double>(rng() % 100);
      double stay = 0.01 * static_cast<double>(rng() % 60);
      anns.push_back(ann(100 + i, 1 + static_cast<int>(rng() % 3), arr,
                         arr + stay, pool[rng() % pool.size()]));
    }
    auto got = enumerate_platoons(build_graph(anns), 1 << 20);
    auto want = oracle_platoons(anns);
    CAPTURE(trial);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].members == want[i]);
      TimePoint max_arrival{INT64_MIN};
      for (int m : got[i].members)
        max_arrival = std::max(max_arrival, anns[m].arrival);
      CHECK(got[i].departure == max_arrival);
    }
  }
}

TEST_CASE("batch selection keeps the longest admissible arrival prefix") {
  std::vector<Announcement> anns;
  for (int i = 0; i < 13; ++i)
    anns.push_back(ann(50 - i, 1 + i % 2, 1.0 - 0.05 * i, 3.0, {kE12}));

  Batch b = select_batch(anns, 12, 1 << 20);
  CHECK(b.announcements.size() == 12);
  CHECK(b.trigger_index == 0);
  // Earliest arrival first; the latest arriving truck fell out.
  for (std::size_t i = 1; i < b.announcements.size(); ++i)
    CHECK(b.announcements[i - 1].arrival <= b.announcements[i].arrival);
  CHECK(b.announcements[0].truck == 38);  // arrival 0.4 h
  for (const Announcement& a : b.announcements) CHECK(a.truck != 50);
  CHECK(b.fleets_present == std::vector<int>{1, 2});
  CHECK(b.candidates.size() == (1u << 12) - 1);

  // A platoon cap of 10 forces the prefix down to 3 trucks (7 platoons).
  Batch capped = select_batch(anns, 25, 10);
  CHECK(capped.announcements.size() == 3);
  CHECK(capped.candidates.size() == 7);

  // The single-truck prefix is always admissible.
  Batch lone = select_batch({anns[0]}, 25, 1);
  CHECK(lone.announcements.size() == 1);
  CHECK(lone.candidates.size() == 1);
}

TEST_CASE("ties in arrival order break by truck id") {
  std::vector<Announcement> anns{ann(9, 1, 1.0, 2.0, {kE12}),
                                 ann(3, 1, 1.0, 2.0, {kE12}),
                                 ann(5, 1, 0.5, 2.0, {kE24})};
  Batch b = select_batch(anns, 25, 1000);
  CHECK(b.announcements[0].truck == 5);
  CHECK(b.announcements[1].truck == 3);
  CHECK(b.announcements[2].truck == 9);
  CHECK(b.truck_ids(b.candidates[0]) == std::vector<int>{5});
}

TEST_CASE("segments_share_edge compares road identity") {
  PathSegment a{{kE12, kE23}, 1, 3};
  PathSegment b{{kE23}, 2, 3};
  PathSegment c{{kE24}, 2, 4};
  CHECK(segments_share_edge(a, b));
  CHECK(!segments_share_edge(b, c));
  CHECK(!segments_share_edge(a, c));
}
