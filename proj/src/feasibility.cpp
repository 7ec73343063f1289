#include "platoon/feasibility.hpp"

#include <algorithm>

namespace platoon {

bool segments_share_edge(const PathSegment& a, const PathSegment& b) {
  for (const Edge& ea : a.edges)
    for (const Edge& eb : b.edges)
      if (ea.same_road(eb)) return true;
  return false;
}

FeasibilityGraph::FeasibilityGraph(std::vector<Announcement> anns)
    : anns_(std::move(anns)), adj_(anns_.size() * anns_.size(), 0) {
  const std::size_t n = anns_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (anns_[i].hub != anns_[0].hub)
      throw Error(ErrorCode::MixedHub, "announcements from different hubs");
    if (anns_[i].arrival > anns_[i].latest_departure)
      throw Error(ErrorCode::Schema, "announcement window inverted");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool windows = std::max(anns_[i].arrival, anns_[j].arrival) <=
                     std::min(anns_[i].latest_departure, anns_[j].latest_departure);
      if (windows && segments_share_edge(anns_[i].next_segment, anns_[j].next_segment)) {
        adj_[i * n + j] = 1;
        adj_[j * n + i] = 1;
      }
    }
  }
}

FeasibilityGraph build_graph(std::vector<Announcement> anns) {
  return FeasibilityGraph(std::move(anns));
}

namespace {

bool window_feasible(const FeasibilityGraph& g, const std::vector<int>& members) {
  TimePoint max_arrival = g.vertices()[members.front()].arrival;
  TimePoint min_latest = g.vertices()[members.front()].latest_departure;
  for (std::size_t k = 1; k < members.size(); ++k) {
    const Announcement& a = g.vertices()[members[k]];
    max_arrival = std::max(max_arrival, a.arrival);
    min_latest = std::min(min_latest, a.latest_departure);
  }
  return max_arrival <= min_latest;
}

TimePoint max_arrival(const FeasibilityGraph& g, const std::vector<int>& members) {
  TimePoint t = g.vertices()[members.front()].arrival;
  for (int m : members) t = std::max(t, g.vertices()[m].arrival);
  return t;
}

// Grows the current clique with vertices above its largest member, emitting
// every clique exactly once. Returns false once the cap is hit.
bool extend_cliques(const FeasibilityGraph& g, std::vector<int>& current,
                    int next_start, int cap,
                    std::vector<CandidatePlatoon>& out) {
  for (int v = next_start; v < static_cast<int>(g.size()); ++v) {
    bool joins = true;
    for (int m : current) {
      if (!g.adjacent(m, v)) {
        joins = false;
        break;
      }
    }
    if (!joins) continue;
    current.push_back(v);
    // Pairwise window overlap implies a common departure time, but keep the
    // subset check as the contract states it.
    if (window_feasible(g, current)) {
      if (static_cast<int>(out.size()) >= cap) {
        current.pop_back();
        return false;
      }
      CandidatePlatoon p;
      p.members = current;
      p.departure = max_arrival(g, current);
      out.push_back(std::move(p));
      if (!extend_cliques(g, current, v + 1, cap, out)) {
        current.pop_back();
        return false;
      }
    }
    current.pop_back();
  }
  return true;
}

bool try_enumerate(const FeasibilityGraph& g, int cap,
                   std::vector<CandidatePlatoon>& out) {
  out.clear();
  std::vector<int> current;
  if (!extend_cliques(g, current, 0, cap, out)) return false;
  std::sort(out.begin(), out.end(),
            [](const CandidatePlatoon& a, const CandidatePlatoon& b) {
              if (a.members.size() != b.members.size())
                return a.members.size() < b.members.size();
              return a.members < b.members;
            });
  return true;
}

}  // namespace

std::vector<CandidatePlatoon> enumerate_platoons(const FeasibilityGraph& g, int cap) {
  if (cap < static_cast<int>(g.size()))
    throw Error(ErrorCode::BadParams, "platoon cap below vertex count");
  std::vector<CandidatePlatoon> out;
  if (!try_enumerate(g, cap, out))
    throw Error(ErrorCode::CapExceeded, "feasible-platoon cap exceeded");
  return out;
}

Batch select_batch(std::vector<Announcement> uncoordinated, int max_trucks,
                   int max_platoons) {
  if (uncoordinated.empty())
    throw Error(ErrorCode::BadParams, "empty uncoordinated list");
  std::sort(uncoordinated.begin(), uncoordinated.end(),
            [](const Announcement& a, const Announcement& b) {
              if (a.arrival != b.arrival) return a.arrival < b.arrival;
              return a.truck < b.truck;
            });

  // Grow the prefix one truck at a time until a threshold would break.
  std::size_t take = 1;
  std::vector<CandidatePlatoon> kept;
  {
    FeasibilityGraph g1(std::vector<Announcement>(uncoordinated.begin(),
                                                  uncoordinated.begin() + 1));
    if (!try_enumerate(g1, std::max(max_platoons, 1), kept))
      throw Error(ErrorCode::CapExceeded, "single truck exceeds platoon cap");
  }
  while (take < uncoordinated.size() && static_cast<int>(take) < max_trucks) {
    std::vector<Announcement> prefix(uncoordinated.begin(),
                                     uncoordinated.begin() + take + 1);
    FeasibilityGraph g(std::move(prefix));
    std::vector<CandidatePlatoon> trial;
    if (static_cast<int>(g.size()) > max_platoons) break;  // singletons alone overflow
    if (!try_enumerate(g, max_platoons, trial)) break;
    kept = std::move(trial);
    ++take;
  }

  Batch batch;
  batch.announcements.assign(uncoordinated.begin(), uncoordinated.begin() + take);
  batch.candidates = std::move(kept);
  batch.trigger_index = 0;
  for (const Announcement& a : batch.announcements) {
    if (std::find(batch.fleets_present.begin(), batch.fleets_present.end(),
                  a.fleet) == batch.fleets_present.end())
      batch.fleets_present.push_back(a.fleet);
  }
  std::sort(batch.fleets_present.begin(), batch.fleets_present.end());
  return batch;
}

std::vector<int> Batch::truck_ids(const CandidatePlatoon& p) const {
  std::vector<int> ids;
  ids.reserve(p.members.size());
  for (int m : p.members) ids.push_back(announcements[m].truck);
  return ids;
}

}  // namespace platoon
