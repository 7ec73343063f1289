#include "platoon/se33.hpp"

namespace platoon {

namespace {

int node_id(int row, int col) { return row * 11 + col + 1; }

double road_length(int a, int b) {
  if (a > b) std::swap(a, b);
  return 40 + (7 * a + 13 * b) % 78;
}

}  // namespace

RoadNetwork se33_network() {
  RoadNetwork net;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 11; ++c) net.add_node(node_id(r, c), NodeKind::Hub);

  auto road = [&](int a, int b) {
    double km = road_length(a, b);
    net.add_edge(a, b, km);
    net.add_edge(b, a, km);
  };
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c + 1 < 11; ++c) road(node_id(r, c), node_id(r, c + 1));
  for (int r = 0; r + 1 < 3; ++r)
    for (int c = 0; c < 11; ++c) road(node_id(r, c), node_id(r + 1, c));
  return net;
}

}  // namespace platoon
