#ifndef PLATOON_FEASIBILITY_HPP
#define PLATOON_FEASIBILITY_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "platoon/network.hpp"
#include "platoon/scenario.hpp"
#include "platoon/units.hpp"

namespace platoon {

// Travel information a truck shares with its next hub: arrival time, latest
// possible departure (arrival plus remaining budget), and the path segment
// it will drive after the hub.
struct Announcement {
  int truck = 0;
  int fleet = 0;
  int hub = 0;
  TimePoint arrival;           // earliest departure from the hub
  TimePoint latest_departure;  // arrival + budget remaining at announcement
  PathSegment next_segment;
};

// Undirected graph on announcements. Two trucks are connected iff their next
// segments share at least one edge and their departure windows overlap:
// max(arrival_i, arrival_j) <= min(latest_i, latest_j).
class FeasibilityGraph {
 public:
  explicit FeasibilityGraph(std::vector<Announcement> anns);

  std::size_t size() const { return anns_.size(); }
  const std::vector<Announcement>& vertices() const { return anns_; }
  bool adjacent(std::size_t i, std::size_t j) const {
    return adj_[i * anns_.size() + j] != 0;
  }

 private:
  std::vector<Announcement> anns_;
  std::vector<std::uint8_t> adj_;
};

// A feasible truck subset with its departure time; profits are filled in by
// the profit module once the batch is fixed. `members` holds indices into
// the owning batch's announcement list, sorted ascending.
struct CandidatePlatoon {
  std::vector<int> members;
  TimePoint departure;                  // max member arrival
  std::map<int, Money> per_fleet_profit;
  Money total_profit;
};

struct Batch {
  std::vector<Announcement> announcements;  // arrival-sorted prefix
  std::vector<CandidatePlatoon> candidates;
  std::vector<int> fleets_present;          // sorted
  int trigger_index = 0;                    // always 0: earliest arrival

  std::vector<int> truck_ids(const CandidatePlatoon& p) const;
};

FeasibilityGraph build_graph(std::vector<Announcement> anns);

// Every clique of the graph (all sizes, singletons included) whose departure
// windows intersect. Ordered by size, then lexicographically by member
// indices. Throws CapExceeded as soon as the count would pass `cap`.
std::vector<CandidatePlatoon> enumerate_platoons(const FeasibilityGraph& g, int cap);

// Sorts announcements by (arrival, truck id) and keeps the longest prefix
// with at most max_trucks trucks and at most max_platoons feasible platoons.
// The prefix of length 1 is always valid, so the earliest truck (the
// trigger) is always included.
Batch select_batch(std::vector<Announcement> uncoordinated, int max_trucks,
                   int max_platoons);

bool segments_share_edge(const PathSegment& a, const PathSegment& b);

}  // namespace platoon

#endif  // PLATOON_FEASIBILITY_HPP
