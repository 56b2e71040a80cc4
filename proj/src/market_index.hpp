#pragma once

// Integer view of a RoundMarket shared by both winner-determination solvers.
// Surpluses are scaled by a common denominator so the search runs on int64.

#include <cstdint>
#include <vector>

#include "pida/winner_determination.hpp"

namespace pida::detail {

struct IndexedBid {
  std::size_t group = 0;
  std::size_t member = 0;  // position inside the market's XorGroup
  BuyerId buyer = 0;
  SellerId seller = 0;
  std::size_t seller_index = 0;
  std::size_t local = 0;  // position in seller_bids[seller_index]
  TimeSlot release = 0;
  TimeSlot deadline = 0;
  std::int32_t duration = 1;
  std::int64_t surplus = 0;  // duration * (bid - ask) * scale
  std::vector<TimeSlot> starts;
};

struct IndexedMarket {
  /// Only bids that may trade: bid >= ask and at least one candidate start.
  std::vector<IndexedBid> bids;
  std::vector<BuyerId> group_buyer;                     // groups sorted by buyer
  std::vector<std::vector<std::size_t>> group_bids;     // bid indices, by seller
  std::vector<SellerId> sellers;                        // ask order, by seller id
  std::vector<TimeSlot> seller_start;
  std::vector<TimeSlot> seller_end;
  std::vector<std::vector<std::size_t>> seller_bids;
  std::int64_t scale = 1;

  Money to_money(std::int64_t scaled) const { return Money(scaled, scale); }
};

IndexedMarket index_market(const RoundMarket& market);

/// One trade: bid index and start slot.
struct Placement {
  std::size_t bid = 0;
  TimeSlot start = 0;
};

WdSolution make_solution(const IndexedMarket& market, const std::vector<Placement>& placements,
                         SolverKind solver, std::uint64_t seed);

}  // namespace pida::detail
