// Depth-first branch and bound over XOR-group choices. Start times are not
// branched on: a seller's assigned set is accepted iff an exact sequencing
// test finds a non-overlapping placement inside every window, so the
// disjunctive no-overlap constraint never needs a big-M linearization.

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "market_index.hpp"
#include "pida/rng.hpp"
#include "pida/winner_determination.hpp"
#include "sequencing.hpp"

namespace pida {

namespace {

using detail::IndexedMarket;
using detail::Job;
using detail::Placement;

struct Key {
  std::int64_t surplus = 0;
  std::int32_t trades = 0;

  friend auto operator<=>(const Key&, const Key&) = default;
};

constexpr std::size_t kSkip = static_cast<std::size_t>(-1);

class Search {
 public:
  explicit Search(const IndexedMarket& market)
      : mk_(market),
        seller_mask_(market.sellers.size(), 0),
        feasible_cache_(market.sellers.size()),
        choice_(market.group_buyer.size(), kSkip) {
    for (const auto& sb : mk_.seller_bids) {
      if (sb.size() > 64) throw std::length_error("solve_exact: more than 64 bids on one seller");
    }
  }

  /// Best key reachable with groups visited in `order`, options tried in
  /// `options[g]` order (kSkip marks "leave unallocated").
  /// In `target` mode returns as soon as a leaf reaches *target and prunes
  /// any branch whose bound falls below it.
  bool run(const std::vector<std::size_t>& order, const std::vector<std::vector<std::size_t>>& options,
           const Key* target) {
    order_ = &order;
    options_ = &options;
    target_ = target;
    suffix_.assign(order.size() + 1, Key{});
    for (std::size_t d = order.size(); d-- > 0;) {
      Key best_here{};
      for (std::size_t b : mk_.group_bids[order[d]]) {
        best_here.surplus = std::max(best_here.surplus, mk_.bids[b].surplus);
        best_here.trades = 1;
      }
      suffix_[d] = {suffix_[d + 1].surplus + best_here.surplus, suffix_[d + 1].trades + best_here.trades};
    }
    best_ = Key{};
    best_choice_.assign(choice_.size(), kSkip);
    found_ = target == nullptr;  // the empty schedule is a valid incumbent
    std::fill(choice_.begin(), choice_.end(), kSkip);
    std::fill(seller_mask_.begin(), seller_mask_.end(), 0);
    dfs(0, Key{});
    return found_;
  }

  Key best() const { return best_; }
  const std::vector<std::size_t>& best_choice() const { return best_choice_; }

  bool fits(std::size_t seller, std::uint64_t mask) {
    auto& cache = feasible_cache_[seller];
    auto it = cache.find(mask);
    if (it != cache.end()) return it->second;
    std::vector<Job> jobs;
    for (std::size_t local = 0; local < mk_.seller_bids[seller].size(); ++local) {
      if (!(mask >> local & 1U)) continue;
      const auto& b = mk_.bids[mk_.seller_bids[seller][local]];
      jobs.push_back({b.release, b.deadline, b.duration});
    }
    const bool ok = detail::sequenceable(jobs);
    cache.emplace(mask, ok);
    return ok;
  }

 private:
  bool dfs(std::size_t depth, Key current) {
    const Key bound{current.surplus + suffix_[depth].surplus, current.trades + suffix_[depth].trades};
    if (target_ != nullptr) {
      if (bound < *target_) return false;
    } else if (bound <= best_) {
      return false;
    }
    if (depth == order_->size()) {
      if (target_ != nullptr) {
        if (current < *target_) return false;
        best_ = current;
        best_choice_ = choice_;
        found_ = true;
        return true;
      }
      best_ = current;
      best_choice_ = choice_;
      return false;
    }
    const std::size_t g = (*order_)[depth];
    for (std::size_t b : (*options_)[g]) {
      if (b == kSkip) {
        if (dfs(depth + 1, current)) return true;
        continue;
      }
      const auto& bid = mk_.bids[b];
      const std::uint64_t mask = seller_mask_[bid.seller_index] | (std::uint64_t{1} << bid.local);
      if (!fits(bid.seller_index, mask)) continue;
      const std::uint64_t saved = seller_mask_[bid.seller_index];
      seller_mask_[bid.seller_index] = mask;
      choice_[g] = b;
      const bool stop = dfs(depth + 1, {current.surplus + bid.surplus, current.trades + 1});
      choice_[g] = kSkip;
      seller_mask_[bid.seller_index] = saved;
      if (stop) return true;
    }
    return false;
  }

  const IndexedMarket& mk_;
  std::vector<std::uint64_t> seller_mask_;
  std::vector<std::unordered_map<std::uint64_t, bool>> feasible_cache_;
  std::vector<std::size_t> choice_;
  const std::vector<std::size_t>* order_ = nullptr;
  const std::vector<std::vector<std::size_t>>* options_ = nullptr;
  const Key* target_ = nullptr;
  std::vector<Key> suffix_;
  Key best_;
  std::vector<std::size_t> best_choice_;
  bool found_ = false;
};

// Fixes starts one job at a time (in `order`), taking the first candidate in
// `candidate order` that keeps the rest of the seller's set sequenceable.
std::vector<Placement> place_starts(const IndexedMarket& mk, const std::vector<std::size_t>& chosen,
                                    TieBreak tie_break, Rng& rng) {
  std::vector<Placement> out;
  for (std::size_t s = 0; s < mk.sellers.size(); ++s) {
    std::vector<std::size_t> here;
    for (std::size_t b : chosen) {
      if (mk.bids[b].seller_index == s) here.push_back(b);
    }
    if (here.empty()) continue;
    std::sort(here.begin(), here.end(), [&](std::size_t x, std::size_t y) { return mk.bids[x].buyer < mk.bids[y].buyer; });
    if (tie_break == TieBreak::seeded_random) rng.shuffle(here);
    std::vector<Job> jobs;
    for (std::size_t b : here) jobs.push_back({mk.bids[b].release, mk.bids[b].deadline, mk.bids[b].duration});
    for (std::size_t k = 0; k < here.size(); ++k) {
      const auto& bid = mk.bids[here[k]];
      std::vector<TimeSlot> candidates = bid.starts;
      if (tie_break == TieBreak::seeded_random) rng.shuffle(candidates);
      bool placed = false;
      for (TimeSlot t : candidates) {
        jobs[k] = {t, t + bid.duration, bid.duration};
        if (detail::sequenceable(jobs)) {
          out.push_back({here[k], t});
          placed = true;
          break;
        }
      }
      if (!placed) throw std::logic_error("solve_exact: chosen set lost feasibility while fixing starts");
    }
  }
  return out;
}

}  // namespace

WdSolution solve_exact(const RoundMarket& market, TieBreak tie_break, std::uint64_t seed) {
  const IndexedMarket mk = detail::index_market(market);
  const std::size_t groups = mk.group_buyer.size();
  Search search(mk);

  // Pass 1: strongest-first ordering for pruning, finds the optimal key.
  std::vector<std::size_t> order(groups);
  std::iota(order.begin(), order.end(), 0);
  auto best_surplus = [&](std::size_t g) {
    std::int64_t v = -1;
    for (std::size_t b : mk.group_bids[g]) v = std::max(v, mk.bids[b].surplus);
    return v;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return best_surplus(x) > best_surplus(y); });
  std::vector<std::vector<std::size_t>> options(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    options[g] = mk.group_bids[g];
    std::stable_sort(options[g].begin(), options[g].end(),
                     [&](std::size_t x, std::size_t y) { return mk.bids[x].surplus > mk.bids[y].surplus; });
    options[g].push_back(kSkip);
  }
  search.run(order, options, nullptr);
  const Key optimum = search.best();

  // Pass 2: first assignment reaching the optimum in tie-break order.
  Rng rng(derive_seed(seed, 0x7e5));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t g = 0; g < groups; ++g) {
    options[g] = mk.group_bids[g];  // already by seller id
    options[g].push_back(kSkip);
  }
  if (tie_break == TieBreak::seeded_random) {
    rng.shuffle(order);
    for (auto& o : options) rng.shuffle(o);
  }
  if (!search.run(order, options, &optimum)) {
    throw std::logic_error("solve_exact: optimum not reproducible in tie-break pass");
  }
  std::vector<std::size_t> chosen;
  for (std::size_t b : search.best_choice()) {
    if (b != kSkip) chosen.push_back(b);
  }
  const auto placements = place_starts(mk, chosen, tie_break, rng);
  return detail::make_solution(mk, placements, SolverKind::exact,
                               tie_break == TieBreak::seeded_random ? seed : 0);
}

}  // namespace pida
