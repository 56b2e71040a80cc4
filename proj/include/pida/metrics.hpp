#pragma once

#include <cstdint>
#include <optional>

#include "pida/auction.hpp"
#include "pida/domain.hpp"
#include "pida/money.hpp"

namespace pida {

/// welfare(final) / welfare(optimal); nullopt when the optimum is not
/// positive. Both schedules must be feasible (InfeasibleSchedule otherwise).
std::optional<Money> efficiency(const Schedule& final_schedule, const Schedule& optimal, const Instance& instance);

/// Sellers' realized payoff, the sum over trades of (bid price - cost) times
/// the reported duration, over the optimal welfare; nullopt as for efficiency.
std::optional<Money> profit_ratio(const AuctionOutcome& outcome, const Schedule& optimal, const Instance& instance);

struct MetricsReport {
  std::optional<double> efficiency;
  std::optional<double> profit_ratio;
  std::int32_t rounds = 0;
  double runtime_seconds = 0.0;
  Money welfare_auction;
  std::optional<Money> welfare_optimal;
  Money welfare_fcfs;
  Money welfare_greedy;
  std::optional<double> fcfs_efficiency;
  std::optional<double> greedy_efficiency;
};

/// Fills every field from one auction outcome. `optimal` is the welfare
/// optimum when known; without it the ratios stay empty.
MetricsReport measure(const Instance& instance, const AuctionOutcome& outcome, const std::optional<Schedule>& optimal,
                      double runtime_seconds, std::uint64_t fcfs_seed = 0);

}  // namespace pida
