#include "platoon/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace platoon {

const std::vector<Edge> RoadNetwork::kNoEdges{};

void RoadNetwork::add_node(int id, NodeKind kind) {
  auto [it, inserted] = nodes_.emplace(id, kind);
  if (!inserted)
    throw Error(ErrorCode::Schema, "duplicate node id " + std::to_string(id));
}

void RoadNetwork::add_edge(int from, int to, double length_km) {
  if (!has_node(from) || !has_node(to))
    throw Error(ErrorCode::UnknownNode, "edge endpoint not in network");
  if (!(length_km > 0.0))
    throw Error(ErrorCode::Schema, "edge length must be positive");
  if (from == to) throw Error(ErrorCode::Schema, "self-loop edge");
  auto& out = adjacency_[from];
  auto pos = std::lower_bound(out.begin(), out.end(), to,
                              [](const Edge& e, int t) { return e.to < t; });
  if (pos != out.end() && pos->to == to)
    throw Error(ErrorCode::Schema, "duplicate edge " + std::to_string(from) +
                                       "->" + std::to_string(to));
  out.insert(pos, Edge{from, to, length_km});
  ++n_edges_;
}

NodeKind RoadNetwork::node_kind(int id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end())
    throw Error(ErrorCode::UnknownNode, "unknown node " + std::to_string(id));
  return it->second;
}

bool RoadNetwork::has_edge(int from, int to) const {
  auto it = adjacency_.find(from);
  if (it == adjacency_.end()) return false;
  const auto& out = it->second;
  auto pos = std::lower_bound(out.begin(), out.end(), to,
                              [](const Edge& e, int t) { return e.to < t; });
  return pos != out.end() && pos->to == to;
}

double RoadNetwork::edge_length(int from, int to) const {
  auto it = adjacency_.find(from);
  if (it != adjacency_.end()) {
    const auto& out = it->second;
    auto pos = std::lower_bound(out.begin(), out.end(), to,
                                [](const Edge& e, int t) { return e.to < t; });
    if (pos != out.end() && pos->to == to) return pos->length_km;
  }
  throw Error(ErrorCode::UnknownNode, "no edge " + std::to_string(from) + "->" +
                                          std::to_string(to));
}

const std::vector<Edge>& RoadNetwork::out_edges(int node) const {
  auto it = adjacency_.find(node);
  return it == adjacency_.end() ? kNoEdges : it->second;
}

std::vector<int> RoadNetwork::node_ids() const {
  std::vector<int> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, kind] : nodes_) ids.push_back(id);
  return ids;
}

std::vector<int> RoadNetwork::hub_ids() const {
  std::vector<int> ids;
  for (const auto& [id, kind] : nodes_)
    if (kind == NodeKind::Hub) ids.push_back(id);
  return ids;
}

std::size_t RoadNetwork::hub_count() const {
  std::size_t n = 0;
  for (const auto& [id, kind] : nodes_)
    if (kind == NodeKind::Hub) ++n;
  return n;
}

double Path::length_km() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.length_km;
  return total;
}

std::vector<int> Path::node_sequence() const {
  std::vector<int> seq;
  seq.reserve(edges.size() + 1);
  seq.push_back(edges.front().from);
  for (const auto& e : edges) seq.push_back(e.to);
  return seq;
}

double PathSegment::length_km() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.length_km;
  return total;
}

namespace {

// Shortest distance from every node to `target`, following edges backward.
std::map<int, double> distances_to(const RoadNetwork& net, int target) {
  std::map<int, std::vector<Edge>> reverse;
  for (int id : net.node_ids())
    for (const Edge& e : net.out_edges(id)) reverse[e.to].push_back(e);

  std::map<int, double> dist;
  dist[target] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0.0, target});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    auto it = reverse.find(u);
    if (it == reverse.end()) continue;
    for (const Edge& e : it->second) {
      double nd = d + e.length_km;
      auto f = dist.find(e.from);
      if (f == dist.end() || nd < f->second) {
        dist[e.from] = nd;
        heap.push({nd, e.from});
      }
    }
  }
  return dist;
}

}  // namespace

Path shortest_path(const RoadNetwork& net, int origin, int destination) {
  if (!net.has_node(origin))
    throw Error(ErrorCode::UnknownNode, "unknown origin " + std::to_string(origin));
  if (!net.has_node(destination))
    throw Error(ErrorCode::UnknownNode,
                "unknown destination " + std::to_string(destination));
  if (origin == destination)
    throw Error(ErrorCode::BadPath, "origin equals destination");

  auto dist = distances_to(net, destination);
  auto at = dist.find(origin);
  if (at == dist.end())
    throw Error(ErrorCode::Unreachable, "no path " + std::to_string(origin) +
                                            " -> " + std::to_string(destination));

  // Walk greedily along shortest-path edges, picking the smallest next node
  // id at every step. This is the lexicographically smallest node sequence
  // among all minimum-length paths. dist strictly decreases along the walk,
  // so the loop terminates.
  Path path;
  int u = origin;
  while (u != destination) {
    const Edge* chosen = nullptr;
    for (const Edge& e : net.out_edges(u)) {  // sorted by head id
      auto it = dist.find(e.to);
      if (it == dist.end()) continue;
      if (std::abs(e.length_km + it->second - dist.at(u)) < 1e-9) {
        chosen = &e;
        break;
      }
    }
    if (chosen == nullptr)
      throw Error(ErrorCode::Unreachable, "shortest-path reconstruction failed");
    path.edges.push_back(*chosen);
    u = chosen->to;
  }
  return path;
}

std::vector<PathSegment> segment_path(const Path& path, const RoadNetwork& net) {
  validate_path(path, net);
  std::vector<PathSegment> segments;
  PathSegment current;
  current.start_node = path.origin();
  for (const Edge& e : path.edges) {
    current.edges.push_back(e);
    bool at_end = &e == &path.edges.back();
    if (at_end || net.is_hub(e.to)) {
      current.end_node = e.to;
      segments.push_back(std::move(current));
      current = PathSegment{};
      current.start_node = e.to;
    }
  }
  return segments;
}

Duration travel_time(std::span<const Edge> edges, double speed_kmh) {
  if (!(speed_kmh > 0.0)) throw Error(ErrorCode::BadParams, "speed must be positive");
  double total_km = 0.0;
  for (const Edge& e : edges) total_km += e.length_km;
  return Duration{static_cast<std::int64_t>(
      std::llround(total_km / speed_kmh * kMicrosPerHour))};
}

void validate_path(const Path& path, const RoadNetwork& net) {
  if (path.edges.empty()) throw Error(ErrorCode::BadPath, "empty path");
  std::set<std::pair<int, int>> seen;
  int prev_head = path.edges.front().from;
  for (const Edge& e : path.edges) {
    if (e.from != prev_head)
      throw Error(ErrorCode::BadPath, "disconnected path");
    if (!net.has_edge(e.from, e.to))
      throw Error(ErrorCode::BadPath, "path edge not in network");
    if (!seen.insert({e.from, e.to}).second)
      throw Error(ErrorCode::BadPath, "repeated edge in path");
    prev_head = e.to;
  }
}

}  // namespace platoon
