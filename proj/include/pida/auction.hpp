#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pida/agents.hpp"
#include "pida/domain.hpp"
#include "pida/money.hpp"
#include "pida/winner_determination.hpp"

namespace pida {

struct AuctionConfig {
  Money epsilon{1, 5};
  Money w{1};
  Money b_min{1, 10};
  Money a_max{7};
  Strategy strategy = Strategy::single_bid;
  SolverKind wd_solver = SolverKind::exact;
  SaParams sa;  // seed is overridden per round from `seed`
  TieBreak tie_break = TieBreak::deterministic;
  std::uint64_t seed = 0;
  /// Defaults to ceil(10 * (a_max - b_min) / (w * epsilon)).
  std::optional<std::int32_t> max_rounds;

  /// Throws std::invalid_argument unless b_min < a_max, epsilon > 0,
  /// 0 < w <= 1 and max_rounds >= 1.
  void validate() const;
  std::int32_t round_cap() const;
};

/// Private-type misreports, restricted to shrinking windows or lengthening
/// durations. Absent agents report truthfully.
struct ReportedTypes {
  std::map<SellerId, std::pair<TimeSlot, TimeSlot>> seller_windows;
  std::map<BuyerId, std::map<SellerId, ReportedWindow>> buyer_windows;
};

struct RoundRecord {
  std::int32_t round = 0;
  std::vector<Ask> asks;
  std::vector<XorGroup> groups;  // one per buyer, empty when abstaining
  Schedule provisional;
  Money objective;
  std::int32_t trades = 0;
  std::vector<std::vector<SellerId>> buyer_frozen;  // frozen sellers per buyer
  std::vector<bool> seller_frozen;

  RoundMarket market(TimeSlot horizon) const;
};

enum class Termination { t1, round_cap };

/// One settled trade at final-round prices.
struct Trade {
  BuyerId buyer = 0;
  SellerId seller = 0;
  TimeSlot start = 0;
  std::int32_t duration = 0;  // reported
  Money unit_price;           // final bid price per slot
  Money payment;
};

struct Settlement {
  std::vector<Trade> trades;
  std::vector<Money> payments;        // per buyer
  std::vector<Money> reimbursements;  // per seller
  std::vector<Money> buyer_utilities;
  std::vector<Money> seller_utilities;
};

struct AuctionOutcome {
  Schedule final_schedule;
  Settlement settlement;
  std::int32_t rounds = 0;  // winner-determination rounds run
  Termination terminated_by = Termination::t1;
  std::vector<RoundRecord> trace;
};

/// Called once per completed round, in order.
using RoundObserver = std::function<void(const RoundRecord&)>;

/// Runs the iterative double auction until two consecutive rounds carry
/// identical reports or the round cap is hit. The auctioneer side only sees
/// the submitted asks and bids; true values and costs enter through the
/// agents and through settlement.
AuctionOutcome run_auction(const Instance& instance, const AuctionConfig& config,
                           const ReportedTypes* reports = nullptr, const RoundObserver& observer = {});

/// True iff every ask and every bid group (windows, durations, prices and
/// XOR membership) equals the previous round's.
bool check_termination(const RoundRecord& previous, const std::vector<Ask>& asks,
                       const std::vector<XorGroup>& groups);

/// Buyers pay their final bid total; each seller receives its buyers'
/// payments. Utilities use true values and costs.
Settlement settle(const RoundRecord& final_round, const Instance& instance);

std::string to_string(Termination t);

}  // namespace pida
