#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pida/auction.hpp"
#include "pida/domain.hpp"
#include "pida/money.hpp"

namespace pida {

struct AgentRef {
  enum class Role { buyer, seller } role = Role::buyer;
  std::int32_t id = 0;
};

struct DeviationSample {
  ReportedTypes reports;  // the misreport, only for the deviating agent
  Money utility;
  Money gain;             // truthful utility minus misreport utility
  std::string description;
};

struct DeviationReport {
  AgentRef agent;
  Money truthful_utility;
  std::vector<DeviationSample> samples;
  /// Largest misreport utility above the truthful one (0 when none helps).
  Money max_gain() const;
  /// Samples in which the misreport strictly paid off.
  std::int32_t violations() const;
};

/// Auction utility of `agent` under `reports`, with everything else fixed.
/// Misreports outside the restricted set throw std::invalid_argument.
Money utility_under(const Instance& instance, const AuctionConfig& config, const AgentRef& agent,
                    const ReportedTypes& reports);

/// Draws a restricted misreport: per entry a later-or-equal arrival, an
/// earlier-or-equal departure and a longer-or-equal duration for buyers, a
/// shrunk service window for sellers.
ReportedTypes sample_misreport(const Instance& instance, const AgentRef& agent, std::uint64_t seed);

/// Runs the auction truthfully and once per sampled misreport with all other
/// agents and seeds held fixed; the tie-break is forced to deterministic.
DeviationReport deviation_test(const Instance& instance, AuctionConfig config, const AgentRef& agent,
                               std::int32_t samples, std::uint64_t seed);

std::string describe(const ReportedTypes& reports);

}  // namespace pida
