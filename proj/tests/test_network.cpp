#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "platoon/network.hpp"

using namespace platoon;

namespace {

// Exhaustive simple-path search. Mirrors the shortest_path contract: minimum
// length, ties broken by lexicographically smallest node sequence.
void all_paths_from(const RoadNetwork& net, int node, int destination,
                    std::vector<int>& trail, double km,
                    std::optional<std::pair<double, std::vector<int>>>& best) {
  if (node == destination) {
    if (!best || km < best->first - 1e-9 ||
        (std::abs(km - best->first) <= 1e-9 && trail < best->second))
      best = {km, trail};
    return;
  }
  for (const Edge& e : net.out_edges(node)) {
    if (std::find(trail.begin(), trail.end(), e.to) != trail.end()) continue;
    trail.push_back(e.to);
    all_paths_from(net, e.to, destination, trail, km + e.length_km, best);
    trail.pop_back();
  }
}

std::optional<std::vector<int>> oracle_route(const RoadNetwork& net, int origin,
                                             int destination) {
  std::vector<int> trail{origin};
  std::optional<std::pair<double, std::vector<int>>> best;
  all_paths_from(net, origin, destination, trail, 0.0, best);
  if (!best) return std::nullopt;
  return best->second;
}

RoadNetwork diamond() {
  RoadNetwork net;
  for (int id : {1, 2, 3, 4}) net.add_node(id, NodeKind::Hub);
  net.add_edge(1, 2, 1.0);
  net.add_edge(2, 4, 1.0);
  net.add_edge(1, 3, 1.0);
  net.add_edge(3, 4, 1.0);
  return net;
}

}  // namespace

TEST_CASE("shortest path on a line") {
  RoadNetwork net;
  for (int id : {1, 2, 3}) net.add_node(id, NodeKind::Hub);
  net.add_edge(1, 2, 10.0);
  net.add_edge(2, 3, 5.0);
  Path p = shortest_path(net, 1, 3);
  CHECK(p.length_km() == 15.0);
  CHECK(p.node_sequence() == std::vector<int>{1, 2, 3});
  CHECK(p.origin() == 1);
  CHECK(p.destination() == 3);
}

TEST_CASE("equal-length routes pick the lexicographically smaller one") {
  Path p = shortest_path(diamond(), 1, 4);
  CHECK(p.length_km() == 2.0);
  CHECK(p.node_sequence() == std::vector<int>{1, 2, 4});
}

TEST_CASE("shortest path matches exhaustive search on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    RoadNetwork net;
    int n = 3 + static_cast<int>(rng() % 6);  // up to 8 nodes
    for (int id = 1; id <= n; ++id)
      net.add_node(id, rng() % 3 == 0 ? NodeKind::Junction : NodeKind::Hub);
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        if (a == b || rng() % 3 != 0) continue;
        net.add_edge(a, b, static_cast<double>(1 + rng() % 9));
      }
    int origin = 1 + static_cast<int>(rng() % n);
    int destination = 1 + static_cast<int>(rng() % n);
    if (origin == destination) continue;

    std::optional<std::vector<int>> want = oracle_route(net, origin, destination);
    CAPTURE(trial);
    if (!want) {
      CHECK_THROWS_AS(shortest_path(net, origin, destination), Error);
      continue;
    }
    Path got = shortest_path(net, origin, destination);
    CHECK(got.node_sequence() == *want);
  }
}

TEST_CASE("unknown and unreachable nodes are rejected") {
  RoadNetwork net;
  net.add_node(1, NodeKind::Hub);
  net.add_node(2, NodeKind::Hub);
  net.add_edge(1, 2, 1.0);
  try {
    shortest_path(net, 1, 99);
    FAIL("expected UnknownNode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownNode);
  }
  try {
    shortest_path(net, 2, 1);  // only 1 -> 2 exists
    FAIL("expected Unreachable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unreachable);
  }
}

TEST_CASE("duplicate nodes and edges are rejected") {
  RoadNetwork net;
  net.add_node(1, NodeKind::Hub);
  CHECK_THROWS_AS(net.add_node(1, NodeKind::Junction), Error);
  net.add_node(2, NodeKind::Hub);
  net.add_edge(1, 2, 1.0);
  CHECK_THROWS_AS(net.add_edge(1, 2, 2.0), Error);
  CHECK_THROWS_AS(net.add_edge(1, 1, 1.0), Error);
  CHECK_THROWS_AS(net.add_edge(1, 3, 1.0), Error);
  CHECK_THROWS_AS(net.add_edge(2, 1, 0.0), Error);
}

TEST_CASE("segments split at hubs only") {
  RoadNetwork net;
  net.add_node(1, NodeKind::Hub);
  net.add_node(2, NodeKind::Junction);
  net.add_node(3, NodeKind::Hub);
  net.add_node(4, NodeKind::Hub);
  net.add_edge(1, 2, 1.0);
  net.add_edge(2, 3, 2.0);
  net.add_edge(3, 4, 4.0);
  Path p = shortest_path(net, 1, 4);
  std::vector<PathSegment> segs = segment_path(p, net);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].start_node == 1);
  CHECK(segs[0].end_node == 3);
  CHECK(segs[0].length_km() == 3.0);
  CHECK(segs[0].edges.size() == 2);
  CHECK(segs[1].start_node == 3);
  CHECK(segs[1].end_node == 4);
  CHECK(segs[1].length_km() == 4.0);
}

TEST_CASE("travel time is exact for integer-km roads") {
  std::vector<Edge> edges{{1, 2, 120.0}};
  CHECK(travel_time(edges, 80.0).us == 5'400'000'000LL);  // 1.5 h
  edges[0].length_km = 1.0;
  CHECK(travel_time(edges, 80.0).us == 45'000'000LL);  // 45 s
  edges.push_back({2, 3, 39.0});
  CHECK(travel_time(edges, 80.0).us == 40 * 45'000'000LL);
  CHECK_THROWS_AS(travel_time(edges, 0.0), Error);
}

TEST_CASE("path validation") {
  RoadNetwork net = diamond();
  Path ok = shortest_path(net, 1, 4);
  CHECK_NOTHROW(validate_path(ok, net));

  Path gap;
  gap.edges = {{1, 2, 1.0}, {3, 4, 1.0}};
  CHECK_THROWS_AS(validate_path(gap, net), Error);

  Path missing_edge;
  missing_edge.edges = {{2, 1, 1.0}};
  CHECK_THROWS_AS(validate_path(missing_edge, net), Error);

  RoadNetwork cyclic = diamond();
  cyclic.add_edge(4, 1, 1.0);
  Path repeat;
  repeat.edges = {{1, 2, 1.0}, {2, 4, 1.0}, {4, 1, 1.0}, {1, 2, 1.0}};
  CHECK_THROWS_AS(validate_path(repeat, cyclic), Error);

  CHECK_THROWS_AS(validate_path(Path{}, net), Error);
}
