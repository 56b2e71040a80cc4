// Simulated-annealing winner determination.
//
// Neighbourhood: insert an unallocated buyer, remove an allocated one,
// reassign a buyer inside its XOR group (possibly the same bid at a new
// start), or swap the sellers of two allocated buyers. A placement that
// overlaps existing trades ejects them. Each iteration samples
// `permutations` neighbours of the incumbent and keeps the best; it is
// accepted outright when it improves (surplus, trades), otherwise with
// probability exp(-loss / T). T decays geometrically per iteration.

#include <algorithm>
#include <cmath>

#include "market_index.hpp"
#include "pida/rng.hpp"
#include "pida/winner_determination.hpp"

namespace pida {

namespace {

using detail::IndexedMarket;
using detail::Placement;

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr std::int32_t kFree = -1;

struct Key {
  std::int64_t surplus = 0;
  std::int32_t trades = 0;

  friend auto operator<=>(const Key&, const Key&) = default;
};

enum class MoveKind { insert, remove, reassign, swap };

struct Move {
  MoveKind kind = MoveKind::insert;
  std::size_t g1 = kNone;
  std::size_t bid1 = kNone;
  TimeSlot t1 = 0;
  std::size_t g2 = kNone;
  std::size_t bid2 = kNone;
  TimeSlot t2 = 0;
  std::vector<std::size_t> ejected;
  Key delta;
};

class Annealer {
 public:
  Annealer(const IndexedMarket& mk, const SaParams& params)
      : mk_(mk), params_(params), rng_(derive_seed(params.seed, 0x5a)) {
    TimeSlot horizon = 0;
    for (TimeSlot e : mk_.seller_end) horizon = std::max(horizon, e);
    horizon_ = horizon;
    owner_.assign(mk_.sellers.size() * static_cast<std::size_t>(horizon_), kFree);
    bid_of_.assign(mk_.group_buyer.size(), kNone);
    start_of_.assign(mk_.group_buyer.size(), 0);
    pos_.assign(mk_.group_buyer.size(), kNone);
    for (std::size_t g = 0; g < mk_.group_buyer.size(); ++g) {
      if (!mk_.group_bids[g].empty()) {
        pos_[g] = unallocated_.size();
        unallocated_.push_back(g);
      }
    }
  }

  std::vector<Placement> run() {
    construct_initial();
    best_key_ = key_;
    best_ = snapshot();

    double t0 = 1.0;
    if (params_.initial_temperature) {
      t0 = *params_.initial_temperature;
    } else {
      std::int64_t top = 0;
      for (const auto& b : mk_.bids) top = std::max(top, b.surplus);
      if (top > 0) t0 = mk_.to_money(top).to_double();
    }
    double temperature = t0;
    const double scale = static_cast<double>(mk_.scale);

    std::vector<Move> candidates(static_cast<std::size_t>(params_.permutations));
    for (std::int32_t it = 0; it < params_.iterations; ++it) {
      std::size_t best_idx = kNone;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (!propose(candidates[k])) continue;
        if (best_idx == kNone || candidates[best_idx].delta < candidates[k].delta) best_idx = k;
      }
      if (best_idx != kNone) {
        const Move& mv = candidates[best_idx];
        bool accept = mv.delta > Key{};
        if (!accept) {
          const double loss = static_cast<double>(-mv.delta.surplus) / scale;
          accept = temperature > 0.0 && rng_.uniform01() < std::exp(-loss / temperature);
        }
        if (accept) {
          apply(mv);
          if (key_ > best_key_) {
            best_key_ = key_;
            best_ = snapshot();
          }
        }
      }
      temperature *= params_.cooling_factor;
    }
    return best_;
  }

 private:
  std::int32_t& owner(std::size_t seller, TimeSlot t) {
    return owner_[seller * static_cast<std::size_t>(horizon_) + static_cast<std::size_t>(t)];
  }

  std::vector<Placement> snapshot() const {
    std::vector<Placement> out;
    for (std::size_t g : allocated_) out.push_back({bid_of_[g], start_of_[g]});
    return out;
  }

  bool conflict_free(std::size_t b, TimeSlot t) {
    const auto& bid = mk_.bids[b];
    for (TimeSlot s = t; s < t + bid.duration; ++s) {
      if (owner(bid.seller_index, s) != kFree) return false;
    }
    return true;
  }

  void construct_initial() {
    std::vector<std::size_t> order = unallocated_;
    rng_.shuffle(order);
    for (std::size_t g : order) {
      std::vector<std::size_t> bids = mk_.group_bids[g];
      rng_.shuffle(bids);
      bool done = false;
      for (std::size_t b : bids) {
        std::vector<TimeSlot> starts = mk_.bids[b].starts;
        rng_.shuffle(starts);
        for (TimeSlot t : starts) {
          if (conflict_free(b, t)) {
            place(g, b, t);
            done = true;
            break;
          }
        }
        if (done) break;
      }
    }
  }

  // Groups occupying [t, t + duration) on the bid's seller, ignoring `skip_a`
  // and `skip_b` (groups the move vacates).
  void collect_conflicts(std::size_t b, TimeSlot t, std::size_t skip_a, std::size_t skip_b,
                         std::vector<std::size_t>& out) {
    const auto& bid = mk_.bids[b];
    for (TimeSlot s = t; s < t + bid.duration; ++s) {
      const std::int32_t o = owner(bid.seller_index, s);
      if (o == kFree) continue;
      const auto g = static_cast<std::size_t>(o);
      if (g == skip_a || g == skip_b) continue;
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
  }

  TimeSlot random_start(std::size_t b) { return mk_.bids[b].starts[rng_.index(mk_.bids[b].starts.size())]; }

  Key value_of(std::size_t g) const {
    return bid_of_[g] == kNone ? Key{} : Key{mk_.bids[bid_of_[g]].surplus, 1};
  }

  void finish_delta(Move& mv, Key gained) {
    Key lost{};
    for (std::size_t g : mv.ejected) {
      lost.surplus += mk_.bids[bid_of_[g]].surplus;
      lost.trades += 1;
    }
    mv.delta = {gained.surplus - lost.surplus, gained.trades - lost.trades};
  }

  bool propose_insert(Move& mv) {
    if (unallocated_.empty()) return false;
    mv.kind = MoveKind::insert;
    mv.g1 = unallocated_[rng_.index(unallocated_.size())];
    const auto& bids = mk_.group_bids[mv.g1];
    mv.bid1 = bids[rng_.index(bids.size())];
    mv.t1 = random_start(mv.bid1);
    collect_conflicts(mv.bid1, mv.t1, kNone, kNone, mv.ejected);
    finish_delta(mv, {mk_.bids[mv.bid1].surplus, 1});
    return true;
  }

  bool propose(Move& mv) {
    mv.ejected.clear();
    mv.g2 = kNone;
    mv.bid2 = kNone;
    switch (rng_.index(4)) {
      case 0:
        return propose_insert(mv);
      case 1: {
        if (allocated_.empty()) return propose_insert(mv);
        mv.kind = MoveKind::remove;
        mv.g1 = allocated_[rng_.index(allocated_.size())];
        const Key v = value_of(mv.g1);
        mv.delta = {-v.surplus, -v.trades};
        return true;
      }
      case 2: {
        if (allocated_.empty()) return propose_insert(mv);
        mv.kind = MoveKind::reassign;
        mv.g1 = allocated_[rng_.index(allocated_.size())];
        const auto& bids = mk_.group_bids[mv.g1];
        mv.bid1 = bids[rng_.index(bids.size())];
        mv.t1 = random_start(mv.bid1);
        if (mv.bid1 == bid_of_[mv.g1] && mv.t1 == start_of_[mv.g1]) return false;
        collect_conflicts(mv.bid1, mv.t1, mv.g1, kNone, mv.ejected);
        const Key old = value_of(mv.g1);
        finish_delta(mv, {mk_.bids[mv.bid1].surplus - old.surplus, 0});
        return true;
      }
      default: {
        if (allocated_.size() < 2) return propose_insert(mv);
        mv.kind = MoveKind::swap;
        mv.g1 = allocated_[rng_.index(allocated_.size())];
        const std::size_t s1 = mk_.bids[bid_of_[mv.g1]].seller_index;
        for (int attempt = 0; attempt < 8; ++attempt) {
          const std::size_t g2 = allocated_[rng_.index(allocated_.size())];
          const std::size_t s2 = mk_.bids[bid_of_[g2]].seller_index;
          if (g2 == mv.g1 || s1 == s2) continue;
          const std::size_t b1 = bid_on(mv.g1, s2);
          const std::size_t b2 = bid_on(g2, s1);
          if (b1 == kNone || b2 == kNone) continue;
          mv.g2 = g2;
          mv.bid1 = b1;
          mv.bid2 = b2;
          mv.t1 = random_start(b1);
          mv.t2 = random_start(b2);
          collect_conflicts(b1, mv.t1, mv.g1, g2, mv.ejected);
          collect_conflicts(b2, mv.t2, mv.g1, g2, mv.ejected);
          const Key old1 = value_of(mv.g1);
          const Key old2 = value_of(g2);
          finish_delta(mv, {mk_.bids[b1].surplus + mk_.bids[b2].surplus - old1.surplus - old2.surplus, 0});
          return true;
        }
        return false;
      }
    }
  }

  std::size_t bid_on(std::size_t g, std::size_t seller_index) const {
    for (std::size_t b : mk_.group_bids[g]) {
      if (mk_.bids[b].seller_index == seller_index) return b;
    }
    return kNone;
  }

  void place(std::size_t g, std::size_t b, TimeSlot t) {
    const auto& bid = mk_.bids[b];
    for (TimeSlot s = t; s < t + bid.duration; ++s) owner(bid.seller_index, s) = static_cast<std::int32_t>(g);
    bid_of_[g] = b;
    start_of_[g] = t;
    move_between(unallocated_, allocated_, g);
    key_.surplus += bid.surplus;
    key_.trades += 1;
  }

  void vacate(std::size_t g) {
    const auto& bid = mk_.bids[bid_of_[g]];
    for (TimeSlot s = start_of_[g]; s < start_of_[g] + bid.duration; ++s) owner(bid.seller_index, s) = kFree;
    key_.surplus -= bid.surplus;
    key_.trades -= 1;
    bid_of_[g] = kNone;
    move_between(allocated_, unallocated_, g);
  }

  // Moves g from list `from` to list `to`; pos_ tracks g's index in its list.
  void move_between(std::vector<std::size_t>& from, std::vector<std::size_t>& to, std::size_t g) {
    const std::size_t p = pos_[g];
    from[p] = from.back();
    pos_[from[p]] = p;
    from.pop_back();
    pos_[g] = to.size();
    to.push_back(g);
  }

  void apply(const Move& mv) {
    for (std::size_t g : mv.ejected) vacate(g);
    switch (mv.kind) {
      case MoveKind::insert:
        place(mv.g1, mv.bid1, mv.t1);
        break;
      case MoveKind::remove:
        vacate(mv.g1);
        break;
      case MoveKind::reassign:
        vacate(mv.g1);
        place(mv.g1, mv.bid1, mv.t1);
        break;
      case MoveKind::swap:
        vacate(mv.g1);
        vacate(mv.g2);
        place(mv.g1, mv.bid1, mv.t1);
        place(mv.g2, mv.bid2, mv.t2);
        break;
    }
  }

  const IndexedMarket& mk_;
  const SaParams& params_;
  Rng rng_;
  TimeSlot horizon_ = 0;
  std::vector<std::int32_t> owner_;
  std::vector<std::size_t> bid_of_;
  std::vector<TimeSlot> start_of_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> allocated_;
  std::vector<std::size_t> unallocated_;
  Key key_;
  Key best_key_;
  std::vector<Placement> best_;
};

}  // namespace

WdSolution solve_sa(const RoundMarket& market, const SaParams& params) {
  if (params.iterations < 1 || params.permutations < 1)
    throw std::invalid_argument("solve_sa: iterations and permutations must be at least 1");
  if (!(params.cooling_factor > 0.0 && params.cooling_factor < 1.0))
    throw std::invalid_argument("solve_sa: cooling factor must lie in (0, 1)");
  const IndexedMarket mk = detail::index_market(market);
  if (mk.bids.empty()) return detail::make_solution(mk, {}, SolverKind::sa, params.seed);
  Annealer annealer(mk, params);
  return detail::make_solution(mk, annealer.run(), SolverKind::sa, params.seed);
}

}  // namespace pida
