#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pida/domain.hpp"
#include "pida/money.hpp"
#include "pida/winner_determination.hpp"

namespace pida {

enum class Strategy { single_bid, xor_bid, xor_bid_repeating };

std::string to_string(Strategy s);
/// Accepts "single-bid", "xor-bid", "xor-bid-repeating".
Strategy parse_strategy(std::string_view text);

/// What a buyer reports for one seller: window and duration. Restricted
/// reports only shrink the true window or lengthen the duration.
struct ReportedWindow {
  TimeSlot arrival = 0;
  TimeSlot departure = 0;
  std::int32_t duration = 1;

  friend bool operator==(const ReportedWindow&, const ReportedWindow&) = default;
};

/// Myopic best-response buyer. Prices are per slot and per seller; only
/// sellers listed in `true_types` are ever bid on.
struct BuyerAgentState {
  BuyerId id = 0;
  std::vector<BuyerTypeEntry> true_types;               // private
  std::map<SellerId, ReportedWindow> reported;          // what bids carry
  std::map<SellerId, Money> unit_prices;
  std::set<SellerId> frozen;                            // final bid status, never cleared
  std::set<SellerId> bid_history;
  Strategy strategy = Strategy::single_bid;
  std::optional<Allocation> last_allocation;
  XorGroup last_group;
  std::uint64_t stream_seed = 0;
  std::int32_t round = 1;
};

/// Starting state: every price at `b_min`. Sellers where b_min already buys
/// more than the value are frozen from the outset. `reports` defaults to
/// the truth; an entry outside the restricted set throws std::invalid_argument.
BuyerAgentState make_buyer(const BuyerProfile& truth, Strategy strategy, const Money& b_min,
                           std::uint64_t stream_seed,
                           const std::map<SellerId, ReportedWindow>* reports = nullptr);

/// Utility-maximizing bids at current prices: all entries sharing the
/// highest non-negative utility v - r * p. Zero utility is kept so that a
/// buyer whose price reached its value stays in the market with a final bid.
/// Under single-bid one of them is drawn from the agent's own stream. Empty
/// when every utility is negative.
XorGroup buyer_best_response(const BuyerAgentState& state);

/// Group the buyer submits this round: an allocated buyer repeats the
/// awarded bid (or, under xor-bid-repeating, its whole previous group);
/// otherwise the best response.
XorGroup buyer_submission(const BuyerAgentState& state);

/// Records a submitted group. An empty group freezes every seller.
BuyerAgentState buyer_commit(BuyerAgentState state, const XorGroup& group);

/// Reacts to the provisional schedule. Allocated: prices unchanged.
/// Unallocated: every non-frozen seller the buyer has bid on rises by w * eps,
/// capped where price * duration reaches the value; an increase smaller than
/// eps freezes that seller. Throws std::invalid_argument unless eps > 0 and
/// 0 < w <= 1.
BuyerAgentState buyer_update_prices(BuyerAgentState state, const Schedule& provisional,
                                    const Money& epsilon, const Money& w);

struct SellerAgentState {
  SellerProfile true_type;                  // private
  TimeSlot reported_start = 0;
  TimeSlot reported_end = 0;
  Money unit_price;
  bool frozen = false;
};

/// Opens at a_max. A seller whose cost already exceeds a_max opens at cost
/// and is frozen (it cannot ask within the auctioneer's limit at a profit).
SellerAgentState make_seller(const SellerProfile& truth, const Money& a_max,
                             std::optional<std::pair<TimeSlot, TimeSlot>> reported_window = std::nullopt);

/// Half-open [start, end) interval booked on a seller.
struct Interval {
  TimeSlot start = 0;
  TimeSlot end = 0;
};

/// Fully booked reported window: unchanged. Otherwise (unless frozen) the
/// price drops by w * eps but never below cost; a drop smaller than eps
/// freezes the seller.
SellerAgentState seller_update_price(SellerAgentState state, std::span<const Interval> booked,
                                     const Money& epsilon, const Money& w);

Ask make_ask(const SellerAgentState& state);

}  // namespace pida
