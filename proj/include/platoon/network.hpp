#ifndef PLATOON_NETWORK_HPP
#define PLATOON_NETWORK_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "platoon/units.hpp"

namespace platoon {

enum class NodeKind { Hub, Junction };

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::Hub;
};

struct Edge {
  int from = 0;
  int to = 0;
  double length_km = 0.0;

  bool same_road(const Edge& o) const { return from == o.from && to == o.to; }
};

// Directed transportation graph. Nodes are hubs or junctions, edges carry a
// positive length. At most one edge per ordered node pair. Immutable once
// built; safe to read concurrently.
class RoadNetwork {
 public:
  void add_node(int id, NodeKind kind);
  void add_edge(int from, int to, double length_km);

  bool has_node(int id) const { return nodes_.count(id) != 0; }
  NodeKind node_kind(int id) const;
  bool is_hub(int id) const { return node_kind(id) == NodeKind::Hub; }
  bool has_edge(int from, int to) const;
  double edge_length(int from, int to) const;

  const std::vector<Edge>& out_edges(int node) const;
  std::vector<int> node_ids() const;        // sorted
  std::vector<int> hub_ids() const;         // sorted
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t hub_count() const;
  std::size_t edge_count() const { return n_edges_; }

 private:
  std::map<int, NodeKind> nodes_;
  std::map<int, std::vector<Edge>> adjacency_;  // keyed by tail node, sorted by head
  std::size_t n_edges_ = 0;
  static const std::vector<Edge> kNoEdges;
};

// Connected, edge-disjoint sequence of edges.
struct Path {
  std::vector<Edge> edges;

  double length_km() const;
  std::vector<int> node_sequence() const;  // origin, intermediates, destination
  int origin() const { return edges.front().from; }
  int destination() const { return edges.back().to; }
};

// Maximal run of path edges whose interior nodes are all junctions. Starts
// and ends at a hub (or at the owning path's endpoints).
struct PathSegment {
  std::vector<Edge> edges;
  int start_node = 0;
  int end_node = 0;

  double length_km() const;
};

// Minimum-length path from origin to destination. Ties are broken by the
// lexicographically smallest node-id sequence so repeated runs pick the same
// route. Throws UnknownNode / Unreachable.
Path shortest_path(const RoadNetwork& net, int origin, int destination);

// Splits a path at every intermediate hub. Concatenating the segments in
// order restores the path.
std::vector<PathSegment> segment_path(const Path& path, const RoadNetwork& net);

Duration travel_time(std::span<const Edge> edges, double speed_kmh);

void validate_path(const Path& path, const RoadNetwork& net);

}  // namespace platoon

#endif  // PLATOON_NETWORK_HPP
