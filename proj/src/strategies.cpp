#include "platoon/strategies.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <unordered_map>

namespace platoon {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::SingleFleet: return "single";
    case Strategy::ParetoCrossFleet: return "pareto";
    case Strategy::SystemMax: return "sysmax";
  }
  return "?";
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "single") return Strategy::SingleFleet;
  if (name == "pareto") return Strategy::ParetoCrossFleet;
  if (name == "sysmax") return Strategy::SystemMax;
  throw Error(ErrorCode::BadParams, "unknown strategy: " + name);
}

namespace {

// ceil(w / s) for s > 0; integer division already rounds toward zero, which
// is ceiling for negative dividends.
std::int64_t ceil_div(std::int64_t w, std::int64_t s) {
  return w >= 0 ? (w + s - 1) / s : w / s;
}

// Branch-and-bound over exact covers. An optimistic bound splits each
// candidate's weight evenly across the elements it covers; summing each
// uncovered element's best available per-element share bounds any completion
// from above. Bounds are memoized per covered-set.
class CoverSolver {
 public:
  explicit CoverSolver(const ExactCoverInstance& inst) : inst_(inst) {
    const int n = inst_.n_elements;
    if (n <= 0 || n > 64)
      throw Error(ErrorCode::TooLarge, "exact cover supports 1..64 elements");
    full_ = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

    const auto& cands = inst_.candidates;
    obj_share_.resize(cands.size());
    side_share_.assign(inst_.floors.size(), std::vector<std::int64_t>(cands.size()));
    for (std::size_t c = 0; c < cands.size(); ++c) {
      int size = std::popcount(cands[c].mask);
      if (size == 0 || (cands[c].mask & ~full_) != 0)
        throw Error(ErrorCode::BadParams, "candidate mask out of range");
      if (cands[c].side.size() != inst_.floors.size())
        throw Error(ErrorCode::BadParams, "candidate side-weight arity mismatch");
      obj_share_[c] = ceil_div(cands[c].weight, size);
      for (std::size_t f = 0; f < inst_.floors.size(); ++f)
        side_share_[f][c] = ceil_div(cands[c].side[f], size);
    }

    by_obj_.resize(n);
    by_side_.assign(inst_.floors.size(), std::vector<std::vector<int>>(n));
    for (int e = 0; e < n; ++e) {
      for (std::size_t c = 0; c < cands.size(); ++c)
        if (cands[c].mask & (std::uint64_t{1} << e)) by_obj_[e].push_back(c);
      if (by_obj_[e].empty())
        throw Error(ErrorCode::Infeasible,
                    "element " + std::to_string(e) + " has no covering candidate");
      for (std::size_t f = 0; f < inst_.floors.size(); ++f) by_side_[f][e] = by_obj_[e];
      std::stable_sort(by_obj_[e].begin(), by_obj_[e].end(), [&](int a, int b) {
        return obj_share_[a] > obj_share_[b];
      });
      for (std::size_t f = 0; f < inst_.floors.size(); ++f)
        std::stable_sort(by_side_[f][e].begin(), by_side_[f][e].end(),
                         [&](int a, int b) { return side_share_[f][a] > side_share_[f][b]; });
    }
  }

  std::vector<int> solve(const std::optional<std::vector<int>>& seed) {
    if (seed) install_seed(*seed);
    std::vector<std::int64_t> side_sums(inst_.floors.size(), 0);
    selection_.clear();
    dfs(0, 0, side_sums);
    if (!has_best_)
      throw Error(ErrorCode::Infeasible, "no exact cover satisfies the floors");
    return best_sel_;
  }

 private:
  void install_seed(const std::vector<int>& seed) {
    std::uint64_t covered = 0;
    std::int64_t value = 0;
    std::vector<std::int64_t> side(inst_.floors.size(), 0);
    for (int c : seed) {
      const auto& cand = inst_.candidates.at(c);
      if (cand.mask & covered) return;  // overlapping seed: ignore it
      covered |= cand.mask;
      value += cand.weight;
      for (std::size_t f = 0; f < side.size(); ++f) side[f] += cand.side[f];
    }
    if (covered != full_) return;
    for (std::size_t f = 0; f < side.size(); ++f)
      if (side[f] < inst_.floors[f].bound) return;
    best_sel_ = seed;
    std::sort(best_sel_.begin(), best_sel_.end());
    best_value_ = value;
    has_best_ = true;
  }

  std::int64_t scan_bound(const std::vector<std::vector<int>>& lists,
                          const std::vector<std::int64_t>& shares,
                          std::uint64_t covered) const {
    std::int64_t bound = 0;
    std::uint64_t remaining = full_ & ~covered;
    while (remaining) {
      int e = std::countr_zero(remaining);
      remaining &= remaining - 1;
      for (int c : lists[e]) {
        if ((inst_.candidates[c].mask & covered) == 0) {
          bound += shares[c];
          break;
        }
      }
    }
    return bound;
  }

  std::int64_t objective_bound(std::uint64_t covered) {
    auto it = bound_memo_.find(covered);
    if (it != bound_memo_.end()) return it->second;
    std::int64_t b = scan_bound(by_obj_, obj_share_, covered);
    bound_memo_.emplace(covered, b);
    return b;
  }

  void dfs(std::uint64_t covered, std::int64_t value,
           std::vector<std::int64_t>& side_sums) {
    if (covered == full_) {
      for (std::size_t f = 0; f < side_sums.size(); ++f)
        if (side_sums[f] < inst_.floors[f].bound) return;
      std::vector<int> sel = selection_;
      std::sort(sel.begin(), sel.end());
      if (!has_best_ || value > best_value_ ||
          (value == best_value_ && sel < best_sel_)) {
        has_best_ = true;
        best_value_ = value;
        best_sel_ = std::move(sel);
      }
      return;
    }
    // A tie can still beat the incumbent lexicographically, so only prune
    // strictly worse subtrees.
    if (has_best_ && value + objective_bound(covered) < best_value_) return;
    for (std::size_t f = 0; f < side_sums.size(); ++f)
      if (side_sums[f] + scan_bound(by_side_[f], side_share_[f], covered) <
          inst_.floors[f].bound)
        return;

    int e = std::countr_zero(full_ & ~covered);
    for (int c : by_obj_[e]) {
      const auto& cand = inst_.candidates[c];
      if (cand.mask & covered) continue;
      selection_.push_back(c);
      for (std::size_t f = 0; f < side_sums.size(); ++f) side_sums[f] += cand.side[f];
      dfs(covered | cand.mask, value + cand.weight, side_sums);
      for (std::size_t f = 0; f < side_sums.size(); ++f) side_sums[f] -= cand.side[f];
      selection_.pop_back();
    }
  }

  const ExactCoverInstance& inst_;
  std::uint64_t full_ = 0;
  std::vector<std::int64_t> obj_share_;
  std::vector<std::vector<std::int64_t>> side_share_;
  std::vector<std::vector<int>> by_obj_;
  std::vector<std::vector<std::vector<int>>> by_side_;
  std::unordered_map<std::uint64_t, std::int64_t> bound_memo_;

  std::vector<int> selection_;
  std::vector<int> best_sel_;
  std::int64_t best_value_ = 0;
  bool has_best_ = false;
};

std::uint64_t member_mask(const CandidatePlatoon& p) {
  std::uint64_t mask = 0;
  for (int m : p.members) mask |= std::uint64_t{1} << m;
  return mask;
}

void check_batch_size(const Batch& batch) {
  if (batch.announcements.empty())
    throw Error(ErrorCode::BadParams, "empty batch");
  if (batch.announcements.size() > 64)
    throw Error(ErrorCode::TooLarge, "batch beyond 64 trucks");
}

Money fleet_profit_of(const CandidatePlatoon& p, int fleet) {
  auto it = p.per_fleet_profit.find(fleet);
  return it == p.per_fleet_profit.end() ? Money{0} : it->second;
}

Duration measure_since(std::chrono::steady_clock::time_point t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  return Duration{std::chrono::duration_cast<std::chrono::microseconds>(dt).count()};
}

void fill_profits_from_selection(const Batch& batch, StrategySolution& sol) {
  sol.total_profit = Money{0};
  sol.per_fleet_profit.clear();
  for (int f : batch.fleets_present) sol.per_fleet_profit[f] = Money{0};
  for (int c : sol.selected) {
    const CandidatePlatoon& p = batch.candidates[c];
    sol.total_profit += p.total_profit;
    for (const auto& [f, r] : p.per_fleet_profit) sol.per_fleet_profit[f] += r;
  }
}

// All-singleton seed: with candidates ordered by size then members, the
// first n candidates are exactly the singletons.
std::vector<int> singleton_seed(const ExactCoverInstance& inst) {
  std::vector<int> seed;
  for (int e = 0; e < inst.n_elements; ++e) seed.push_back(e);
  return seed;
}

}  // namespace

std::vector<int> solve_exact_cover(const ExactCoverInstance& inst,
                                   const std::optional<std::vector<int>>& seed) {
  CoverSolver solver(inst);
  return solver.solve(seed);
}

ExactCoverInstance single_fleet_cover(const Batch& batch, int fleet,
                                      std::vector<int>* cand_map) {
  std::vector<int> element_of(batch.announcements.size(), -1);
  int n = 0;
  for (std::size_t i = 0; i < batch.announcements.size(); ++i)
    if (batch.announcements[i].fleet == fleet) element_of[i] = n++;
  if (n == 0)
    throw Error(ErrorCode::BadParams,
                "fleet " + std::to_string(fleet) + " not in batch");

  ExactCoverInstance inst;
  inst.n_elements = n;
  if (cand_map) cand_map->clear();
  for (std::size_t c = 0; c < batch.candidates.size(); ++c) {
    const CandidatePlatoon& p = batch.candidates[c];
    bool pure = true;
    for (int m : p.members)
      if (batch.announcements[m].fleet != fleet) {
        pure = false;
        break;
      }
    if (!pure) continue;
    ExactCoverInstance::Candidate cand;
    for (int m : p.members) cand.mask |= std::uint64_t{1} << element_of[m];
    cand.weight = fleet_profit_of(p, fleet).micros;
    inst.candidates.push_back(std::move(cand));
    if (cand_map) cand_map->push_back(static_cast<int>(c));
  }
  return inst;
}

ExactCoverInstance cross_fleet_cover(const Batch& batch,
                                     const std::map<int, Money>* baseline) {
  if (baseline)
    for (int f : batch.fleets_present)
      if (baseline->find(f) == baseline->end())
        throw Error(ErrorCode::BadParams,
                    "missing baseline for fleet " + std::to_string(f));

  ExactCoverInstance inst;
  inst.n_elements = static_cast<int>(batch.announcements.size());
  for (const CandidatePlatoon& p : batch.candidates) {
    ExactCoverInstance::Candidate cand;
    cand.mask = member_mask(p);
    cand.weight = p.total_profit.micros;
    if (baseline)
      for (int f : batch.fleets_present)
        cand.side.push_back(fleet_profit_of(p, f).micros);
    inst.candidates.push_back(std::move(cand));
  }
  if (baseline) {
    inst.floors.resize(batch.fleets_present.size());
    for (std::size_t k = 0; k < batch.fleets_present.size(); ++k)
      inst.floors[k].bound = baseline->at(batch.fleets_present[k]).micros;
  }
  return inst;
}

StrategySolution solve_single_fleet(const Batch& batch, int fleet) {
  check_batch_size(batch);
  auto t0 = std::chrono::steady_clock::now();
  std::vector<int> cand_map;
  ExactCoverInstance inst = single_fleet_cover(batch, fleet, &cand_map);

  StrategySolution sol;
  sol.strategy = Strategy::SingleFleet;
  sol.variables = static_cast<int>(inst.candidates.size());
  sol.constraints = inst.n_elements;
  std::vector<int> picked = solve_exact_cover(inst, singleton_seed(inst));
  for (int c : picked) sol.selected.push_back(cand_map[c]);
  std::sort(sol.selected.begin(), sol.selected.end());

  sol.per_fleet_profit[fleet] = Money{0};
  for (int c : sol.selected)
    sol.per_fleet_profit[fleet] += fleet_profit_of(batch.candidates[c], fleet);
  sol.total_profit = sol.per_fleet_profit[fleet];
  sol.solve_time = measure_since(t0);
  return sol;
}

StrategySolution solve_single_fleet_combined(const Batch& batch) {
  check_batch_size(batch);
  StrategySolution sol;
  sol.strategy = Strategy::SingleFleet;
  sol.total_profit = Money{0};
  sol.solve_time = Duration{0};
  for (int f : batch.fleets_present) {
    StrategySolution part = solve_single_fleet(batch, f);
    sol.selected.insert(sol.selected.end(), part.selected.begin(),
                        part.selected.end());
    sol.per_fleet_profit[f] = part.per_fleet_profit[f];
    sol.total_profit += part.total_profit;
    sol.solve_time += part.solve_time;
    sol.variables += part.variables;
    sol.constraints += part.constraints;
  }
  std::sort(sol.selected.begin(), sol.selected.end());
  return sol;
}

StrategySolution solve_pareto(const Batch& batch,
                              const std::map<int, Money>& baseline) {
  check_batch_size(batch);
  auto t0 = std::chrono::steady_clock::now();
  ExactCoverInstance inst = cross_fleet_cover(batch, &baseline);

  StrategySolution sol;
  sol.strategy = Strategy::ParetoCrossFleet;
  sol.variables = static_cast<int>(inst.candidates.size());
  sol.constraints =
      inst.n_elements + static_cast<int>(batch.fleets_present.size());
  if (sol.variables != static_cast<int>(batch.candidates.size()))
    throw Error(ErrorCode::InvariantViolation, "pareto variable census mismatch");

  // The combined single-fleet solution meets every floor, so the program is
  // always feasible; it also makes a strong incumbent.
  StrategySolution warm = solve_single_fleet_combined(batch);
  sol.selected = solve_exact_cover(inst, warm.selected);
  fill_profits_from_selection(batch, sol);
  sol.solve_time = measure_since(t0);
  return sol;
}

StrategySolution solve_system_max(const Batch& batch) {
  check_batch_size(batch);
  auto t0 = std::chrono::steady_clock::now();
  ExactCoverInstance inst = cross_fleet_cover(batch);

  StrategySolution sol;
  sol.strategy = Strategy::SystemMax;
  sol.variables = static_cast<int>(inst.candidates.size());
  sol.constraints = inst.n_elements;
  sol.selected = solve_exact_cover(inst, singleton_seed(inst));
  fill_profits_from_selection(batch, sol);
  sol.solve_time = measure_since(t0);
  return sol;
}

namespace {

// Plain recursive enumeration over the batch's candidate platoons; shares no
// machinery with CoverSolver or the cover builders above.
class BatchEnumerator {
 public:
  // `usable(c)` restricts the candidate pool, `element(i)` the positions to
  // partition; `value(c)` scores a candidate.
  template <typename Usable, typename InScope, typename Value>
  BatchEnumerator(const Batch& batch, Usable usable, InScope element, Value value)
      : batch_(batch) {
    for (std::size_t i = 0; i < batch.announcements.size(); ++i)
      assigned_.push_back(!element(static_cast<int>(i)));
    for (std::size_t c = 0; c < batch.candidates.size(); ++c)
      if (usable(static_cast<int>(c))) {
        pool_.push_back(static_cast<int>(c));
        values_[static_cast<int>(c)] = value(static_cast<int>(c));
      }
  }

  // Enumerates every partition; `feasible` filters complete selections.
  template <typename Feasible>
  void run(Feasible feasible) {
    search(feasible);
    if (!found_) throw Error(ErrorCode::Infeasible, "no exact cover");
  }

  const std::vector<int>& best() const { return best_; }
  std::int64_t best_value() const { return best_value_; }
  int pool_size() const { return static_cast<int>(pool_.size()); }

 private:
  template <typename Feasible>
  void search(Feasible& feasible) {
    int e = -1;
    for (std::size_t i = 0; i < assigned_.size(); ++i)
      if (!assigned_[i]) {
        e = static_cast<int>(i);
        break;
      }
    if (e < 0) {
      if (!feasible(current_)) return;
      std::int64_t value = 0;
      for (int c : current_) value += values_.at(c);
      std::vector<int> sel = current_;
      std::sort(sel.begin(), sel.end());
      if (!found_ || value > best_value_ ||
          (value == best_value_ && sel < best_)) {
        found_ = true;
        best_value_ = value;
        best_ = std::move(sel);
      }
      return;
    }
    for (int c : pool_) {
      const std::vector<int>& members = batch_.candidates[c].members;
      if (std::find(members.begin(), members.end(), e) == members.end())
        continue;
      bool clash = false;
      for (int m : members) clash |= assigned_[m] != 0;
      if (clash) continue;
      for (int m : members) assigned_[m] = 1;
      current_.push_back(c);
      search(feasible);
      current_.pop_back();
      for (int m : members) assigned_[m] = 0;
    }
  }

  const Batch& batch_;
  std::vector<char> assigned_;
  std::vector<int> pool_;
  std::map<int, std::int64_t> values_;
  std::vector<int> current_;
  bool found_ = false;
  std::int64_t best_value_ = 0;
  std::vector<int> best_;
};

}  // namespace

StrategySolution brute_force_oracle(const Batch& batch, Strategy strategy,
                                    const std::map<int, Money>& baseline) {
  check_batch_size(batch);
  if (batch.announcements.size() > 12)
    throw Error(ErrorCode::TooLarge, "oracle limited to 12 trucks");
  auto t0 = std::chrono::steady_clock::now();

  auto fleet_value = [&](int c, int fleet) {
    const auto& profits = batch.candidates[c].per_fleet_profit;
    auto it = profits.find(fleet);
    return it == profits.end() ? std::int64_t{0} : it->second.micros;
  };

  StrategySolution sol;
  sol.strategy = strategy;
  if (strategy == Strategy::SingleFleet) {
    sol.total_profit = Money{0};
    for (int f : batch.fleets_present) {
      auto pure = [&](int c) {
        for (int m : batch.candidates[c].members)
          if (batch.announcements[m].fleet != f) return false;
        return true;
      };
      auto is_fleet = [&](int i) { return batch.announcements[i].fleet == f; };
      BatchEnumerator en(batch, pure, is_fleet,
                         [&](int c) { return fleet_value(c, f); });
      en.run([](const std::vector<int>&) { return true; });
      sol.selected.insert(sol.selected.end(), en.best().begin(), en.best().end());
      sol.per_fleet_profit[f] = Money{en.best_value()};
      sol.total_profit += Money{en.best_value()};
      sol.variables += en.pool_size();
      sol.constraints += static_cast<int>(
          std::count_if(batch.announcements.begin(), batch.announcements.end(),
                        [&](const Announcement& a) { return a.fleet == f; }));
    }
    std::sort(sol.selected.begin(), sol.selected.end());
  } else {
    bool pareto = strategy == Strategy::ParetoCrossFleet;
    auto all = [](int) { return true; };
    BatchEnumerator en(batch, all, all, [&](int c) {
      return batch.candidates[c].total_profit.micros;
    });
    en.run([&](const std::vector<int>& sel) {
      if (!pareto) return true;
      for (int f : batch.fleets_present) {
        auto it = baseline.find(f);
        if (it == baseline.end())
          throw Error(ErrorCode::BadParams,
                      "missing baseline for fleet " + std::to_string(f));
        std::int64_t earned = 0;
        for (int c : sel) earned += fleet_value(c, f);
        if (earned < it->second.micros) return false;
      }
      return true;
    });
    sol.selected = en.best();
    sol.variables = en.pool_size();
    sol.constraints = static_cast<int>(batch.announcements.size()) +
                      (pareto ? static_cast<int>(batch.fleets_present.size()) : 0);
    fill_profits_from_selection(batch, sol);
  }
  sol.solve_time = measure_since(t0);
  return sol;
}

}  // namespace platoon
