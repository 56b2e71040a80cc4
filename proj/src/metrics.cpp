#include "pida/metrics.hpp"

#include "pida/baselines.hpp"

namespace pida {

std::optional<Money> efficiency(const Schedule& final_schedule, const Schedule& optimal, const Instance& instance) {
  const Money best = social_welfare(instance, optimal);
  const Money got = social_welfare(instance, final_schedule);
  if (best <= Money(0)) return std::nullopt;
  return got / best;
}

std::optional<Money> profit_ratio(const AuctionOutcome& outcome, const Schedule& optimal, const Instance& instance) {
  const Money best = social_welfare(instance, optimal);
  if (best <= Money(0)) return std::nullopt;
  Money payoff(0);
  for (const auto& t : outcome.settlement.trades) {
    payoff += (t.unit_price - instance.seller(t.seller).unit_cost) * Money(t.duration);
  }
  return payoff / best;
}

MetricsReport measure(const Instance& instance, const AuctionOutcome& outcome, const std::optional<Schedule>& optimal,
                      double runtime_seconds, std::uint64_t fcfs_seed) {
  MetricsReport r;
  r.rounds = outcome.rounds;
  r.runtime_seconds = runtime_seconds;
  r.welfare_auction = social_welfare(instance, outcome.final_schedule);
  r.welfare_fcfs = social_welfare(instance, fcfs_allocate(instance, fcfs_seed));
  r.welfare_greedy = social_welfare(instance, greedy_allocate(instance));
  if (optimal) {
    r.welfare_optimal = social_welfare(instance, *optimal);
    if (auto e = efficiency(outcome.final_schedule, *optimal, instance)) r.efficiency = e->to_double();
    if (auto p = profit_ratio(outcome, *optimal, instance)) r.profit_ratio = p->to_double();
    if (*r.welfare_optimal > Money(0)) {
      r.fcfs_efficiency = (r.welfare_fcfs / *r.welfare_optimal).to_double();
      r.greedy_efficiency = (r.welfare_greedy / *r.welfare_optimal).to_double();
    }
  }
  return r;
}

}  // namespace pida
