#include "pida/deviation.hpp"

#include <stdexcept>

#include "pida/rng.hpp"

namespace pida {

Money DeviationReport::max_gain() const {
  Money best(0);
  for (const auto& s : samples) best = max(best, Money(0) - s.gain);
  return best;
}

std::int32_t DeviationReport::violations() const {
  std::int32_t n = 0;
  for (const auto& s : samples) n += s.gain.is_negative() ? 1 : 0;
  return n;
}

Money utility_under(const Instance& instance, const AuctionConfig& config, const AgentRef& agent,
                    const ReportedTypes& reports) {
  const AuctionOutcome outcome = run_auction(instance, config, &reports);
  const auto i = static_cast<std::size_t>(agent.id);
  if (agent.role == AgentRef::Role::buyer) {
    instance.buyer(agent.id);
    return outcome.settlement.buyer_utilities[i];
  }
  instance.seller(agent.id);
  return outcome.settlement.seller_utilities[i];
}

ReportedTypes sample_misreport(const Instance& instance, const AgentRef& agent, std::uint64_t seed) {
  Rng rng(seed);
  ReportedTypes r;
  if (agent.role == AgentRef::Role::seller) {
    const auto& s = instance.seller(agent.id);
    const auto start = static_cast<TimeSlot>(rng.uniform_int(s.service_start, s.service_end - 1));
    const auto end = static_cast<TimeSlot>(rng.uniform_int(start + 1, s.service_end));
    r.seller_windows[agent.id] = {start, end};
    return r;
  }
  auto& windows = r.buyer_windows[agent.id];
  for (const auto& e : instance.buyer(agent.id).entries) {
    const auto a = static_cast<TimeSlot>(rng.uniform_int(e.arrival, e.departure - e.duration));
    const auto d = static_cast<TimeSlot>(rng.uniform_int(a + e.duration, e.departure));
    const auto dur = static_cast<std::int32_t>(rng.uniform_int(e.duration, d - a));
    windows[e.seller] = {a, d, dur};
  }
  return r;
}

DeviationReport deviation_test(const Instance& instance, AuctionConfig config, const AgentRef& agent,
                               std::int32_t samples, std::uint64_t seed) {
  if (samples < 0) throw std::invalid_argument("sample count must be non-negative");
  config.tie_break = TieBreak::deterministic;
  DeviationReport report;
  report.agent = agent;
  report.truthful_utility = utility_under(instance, config, agent, ReportedTypes{});
  for (std::int32_t k = 0; k < samples; ++k) {
    DeviationSample s;
    s.reports = sample_misreport(instance, agent, derive_seed(seed, 0xDE, static_cast<std::uint64_t>(k)));
    s.utility = utility_under(instance, config, agent, s.reports);
    s.gain = report.truthful_utility - s.utility;
    s.description = describe(s.reports);
    report.samples.push_back(std::move(s));
  }
  return report;
}

std::string describe(const ReportedTypes& reports) {
  std::string out;
  for (const auto& [m, w] : reports.seller_windows) {
    out += "seller " + std::to_string(m) + " [" + std::to_string(w.first) + "," + std::to_string(w.second) + ") ";
  }
  for (const auto& [n, entries] : reports.buyer_windows) {
    out += "buyer " + std::to_string(n);
    for (const auto& [m, w] : entries) {
      out += " s" + std::to_string(m) + ":[" + std::to_string(w.arrival) + "," + std::to_string(w.departure) +
             ") r=" + std::to_string(w.duration);
    }
    out += " ";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

}  // namespace pida
