#include "pida/agents.hpp"

#include <algorithm>
#include <stdexcept>

#include "pida/rng.hpp"

namespace pida {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::single_bid: return "single-bid";
    case Strategy::xor_bid: return "xor-bid";
    case Strategy::xor_bid_repeating: return "xor-bid-repeating";
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "single-bid" || text == "single") return Strategy::single_bid;
  if (text == "xor-bid" || text == "xor") return Strategy::xor_bid;
  if (text == "xor-bid-repeating" || text == "xor-repeating") return Strategy::xor_bid_repeating;
  throw std::invalid_argument("unknown bidding strategy '" + std::string(text) + "'");
}

namespace {

void check_step(const Money& epsilon, const Money& w) {
  if (epsilon <= Money(0)) throw std::invalid_argument("epsilon must be positive");
  if (w <= Money(0) || w > Money(1)) throw std::invalid_argument("w must lie in (0, 1]");
}

const ReportedWindow& report_for(const BuyerAgentState& s, SellerId m) { return s.reported.at(m); }

Money utility(const BuyerAgentState& s, const BuyerTypeEntry& e) {
  return e.value - Money(report_for(s, e.seller).duration) * s.unit_prices.at(e.seller);
}

Bid bid_for(const BuyerAgentState& s, SellerId m) {
  const auto& r = report_for(s, m);
  return {s.id, m, r.arrival, r.departure, r.duration, s.unit_prices.at(m)};
}

}  // namespace

BuyerAgentState make_buyer(const BuyerProfile& truth, Strategy strategy, const Money& b_min,
                           std::uint64_t stream_seed, const std::map<SellerId, ReportedWindow>* reports) {
  BuyerAgentState s;
  s.id = truth.id;
  s.true_types = truth.entries;
  s.strategy = strategy;
  s.stream_seed = stream_seed;
  s.last_group.buyer = truth.id;
  for (const auto& e : truth.entries) {
    ReportedWindow r{e.arrival, e.departure, e.duration};
    if (reports != nullptr) {
      if (auto it = reports->find(e.seller); it != reports->end()) r = it->second;
    }
    if (r.arrival < e.arrival || r.departure > e.departure || r.duration < e.duration ||
        r.arrival + r.duration > r.departure) {
      throw std::invalid_argument("buyer " + std::to_string(truth.id) + ": report for seller " +
                                  std::to_string(e.seller) + " is outside the restricted set");
    }
    s.reported[e.seller] = r;
    s.unit_prices[e.seller] = b_min;
    if (b_min * Money(r.duration) > e.value) s.frozen.insert(e.seller);
  }
  if (reports != nullptr) {
    for (const auto& [m, r] : *reports) {
      if (!s.reported.count(m))
        throw std::invalid_argument("buyer " + std::to_string(truth.id) + " has no type for seller " +
                                    std::to_string(m));
    }
  }
  return s;
}

XorGroup buyer_best_response(const BuyerAgentState& state) {
  XorGroup group{state.id, {}};
  std::optional<Money> best;
  std::vector<SellerId> argmax;
  for (const auto& e : state.true_types) {
    const Money u = utility(state, e);
    if (u.is_negative()) continue;
    if (!best || u > *best) {
      best = u;
      argmax.assign(1, e.seller);
    } else if (u == *best) {
      argmax.push_back(e.seller);
    }
  }
  if (argmax.empty()) return group;
  if (state.strategy == Strategy::single_bid && argmax.size() > 1) {
    Rng rng(derive_seed(state.stream_seed, static_cast<std::uint64_t>(state.round)));
    const SellerId pick = argmax[rng.index(argmax.size())];
    argmax.assign(1, pick);
  }
  for (SellerId m : argmax) group.bids.push_back(bid_for(state, m));
  return group;
}

XorGroup buyer_submission(const BuyerAgentState& state) {
  if (!state.last_allocation) return buyer_best_response(state);
  if (state.strategy == Strategy::xor_bid_repeating) {
    // Prices did not move, so the previous group is still current.
    XorGroup g{state.id, {}};
    for (const auto& b : state.last_group.bids) g.bids.push_back(bid_for(state, b.seller));
    return g;
  }
  return XorGroup{state.id, {bid_for(state, state.last_allocation->seller)}};
}

BuyerAgentState buyer_commit(BuyerAgentState state, const XorGroup& group) {
  if (group.bids.empty()) {
    for (const auto& e : state.true_types) state.frozen.insert(e.seller);
  }
  for (const auto& b : group.bids) state.bid_history.insert(b.seller);
  state.last_group = group;
  return state;
}

BuyerAgentState buyer_update_prices(BuyerAgentState state, const Schedule& provisional,
                                    const Money& epsilon, const Money& w) {
  check_step(epsilon, w);
  state.round += 1;
  state.last_allocation = provisional.allocation_of(state.id);
  if (state.last_allocation) return state;

  const Money step = w * epsilon;
  for (const SellerId m : state.bid_history) {
    if (state.frozen.count(m)) continue;
    const auto* e = &*std::find_if(state.true_types.begin(), state.true_types.end(),
                                   [m](const BuyerTypeEntry& x) { return x.seller == m; });
    const Money cap = e->value / Money(report_for(state, m).duration);
    Money& price = state.unit_prices.at(m);
    const Money raised = min(price + step, cap);
    const Money increment = raised - price;
    price = max(price, raised);
    if (increment < epsilon) state.frozen.insert(m);
  }
  return state;
}

SellerAgentState make_seller(const SellerProfile& truth, const Money& a_max,
                             std::optional<std::pair<TimeSlot, TimeSlot>> reported_window) {
  SellerAgentState s;
  s.true_type = truth;
  s.reported_start = truth.service_start;
  s.reported_end = truth.service_end;
  if (reported_window) {
    const auto [start, end] = *reported_window;
    if (start < truth.service_start || end > truth.service_end || start >= end) {
      throw std::invalid_argument("seller " + std::to_string(truth.id) +
                                  ": reported window is outside the restricted set");
    }
    s.reported_start = start;
    s.reported_end = end;
  }
  if (truth.unit_cost > a_max) {
    s.unit_price = truth.unit_cost;
    s.frozen = true;
  } else {
    s.unit_price = a_max;
  }
  return s;
}

SellerAgentState seller_update_price(SellerAgentState state, std::span<const Interval> booked,
                                     const Money& epsilon, const Money& w) {
  check_step(epsilon, w);
  std::vector<Interval> sorted(booked.begin(), booked.end());
  std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) { return a.start < b.start; });
  TimeSlot covered_to = state.reported_start;
  for (const auto& iv : sorted) {
    if (iv.start > covered_to) break;
    covered_to = std::max(covered_to, iv.end);
  }
  if (covered_to >= state.reported_end) return state;
  if (state.frozen) return state;

  const Money lowered = max(state.unit_price - w * epsilon, state.true_type.unit_cost);
  const Money decrement = state.unit_price - lowered;
  state.unit_price = lowered;
  if (decrement < epsilon) state.frozen = true;
  return state;
}

Ask make_ask(const SellerAgentState& state) {
  return {state.true_type.id, state.reported_start, state.reported_end, state.unit_price};
}

}  // namespace pida
