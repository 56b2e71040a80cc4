#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pida/domain.hpp"
#include "pida/money.hpp"

namespace pida {

/// A seller's report in one round: offered window [start, end) and unit price.
struct Ask {
  SellerId seller = 0;
  TimeSlot start = 0;
  TimeSlot end = 0;
  Money unit_price;

  friend bool operator==(const Ask&, const Ask&) = default;
};

/// A buyer's report for one seller in one round.
struct Bid {
  BuyerId buyer = 0;
  SellerId seller = 0;
  TimeSlot arrival = 0;
  TimeSlot departure = 0;
  std::int32_t duration = 1;
  Money unit_price;

  Money total() const { return Money(duration) * unit_price; }

  friend bool operator==(const Bid&, const Bid&) = default;
};

/// Alternative bids of one buyer; at most one member may trade. A single bid
/// is a group of size one; an empty group means the buyer abstains.
struct XorGroup {
  BuyerId buyer = 0;
  std::vector<Bid> bids;

  friend bool operator==(const XorGroup&, const XorGroup&) = default;
};

struct RoundMarket {
  std::vector<Ask> asks;
  std::vector<XorGroup> groups;
  TimeSlot horizon = 0;

  const Ask* ask(SellerId seller) const;
  /// Throws StructuralError on duplicate sellers/buyers, bids naming an
  /// absent seller, buyers bidding twice on one seller, negative prices or
  /// malformed windows.
  void validate() const;
  RoundPrices prices() const;
};

enum class TieBreak { deterministic, seeded_random };
enum class SolverKind { exact, sa };

struct SaParams {
  std::int32_t iterations = 1000;    // R
  std::int32_t permutations = 32;    // neighbours per iteration
  /// Defaults to the largest single-bid surplus (or 1 without positive surplus).
  std::optional<double> initial_temperature;
  double cooling_factor = 0.95;
  std::uint64_t seed = 0;
};

struct WdSolution {
  Schedule schedule;
  Money objective;  // sum of duration * (bid price - ask price) over trades
  std::int32_t trade_count = 0;
  SolverKind solver = SolverKind::exact;
  std::uint64_t seed_used = 0;
};

/// Every integer start t with max(arrival, ask start) <= t and
/// t + duration <= min(departure, ask end), ascending.
std::vector<TimeSlot> enumerate_candidate_starts(const Ask& ask, const Bid& bid);

/// Exact winner determination. Maximizes round surplus, then the number of
/// trades. Remaining ties: in deterministic mode the buyer -> seller
/// assignment that is lexicographically first in (buyer, seller) order with
/// the smallest start times in buyer order; in seeded mode a seed-driven
/// search order picks among the optimal assignments. Bids priced below the
/// ask never trade.
WdSolution solve_exact(const RoundMarket& market, TieBreak tie_break = TieBreak::deterministic,
                       std::uint64_t seed = 0);

/// Simulated-annealing winner determination; always feasible, reproducible
/// from params.seed, never better than solve_exact.
WdSolution solve_sa(const RoundMarket& market, const SaParams& params);

/// Feasibility of a schedule against the round's reports: windows, XOR
/// groups, seller overlap and bid >= ask. Pairs without a submitted bid are a
/// structural error.
FeasibilityReport validate_market_schedule(const RoundMarket& market, const Schedule& schedule);

/// Objective recomputed from a schedule and the market's prices.
Money market_objective(const RoundMarket& market, const Schedule& schedule);

/// Market where every buyer bids its full true type set as one XOR group at
/// unit price value/duration and every seller asks its true cost. Its
/// objective equals social welfare, so solve_exact on it is the welfare
/// optimum.
RoundMarket truthful_market(const Instance& instance);

}  // namespace pida
