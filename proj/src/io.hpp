#pragma once

// JSON documents shared by the C API and tests. Money travels as decimal
// strings ("1.5", or "n/d" when not terminating), times as slot integers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pida/auction.hpp"
#include "pida/deviation.hpp"
#include "pida/domain.hpp"
#include "pida/experiments.hpp"
#include "pida/generator.hpp"
#include "pida/metrics.hpp"

namespace pida::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Raised for documents that are well-formed JSON but have the wrong shape.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

json money_json(const Money& m);
Money money_from(const json& j, const std::string& what);

json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& j);
/// FNV-1a over the canonical serialization, as 16 hex digits.
std::string fingerprint(const Instance& instance);

json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const json& j);

json config_to_json(const AuctionConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
AuctionConfig config_from_json(const json& j);

json generator_to_json(const GeneratorConfig& config);
GeneratorConfig generator_from_json(const json& j);

json round_to_json(const RoundRecord& record);
json outcome_to_json(const AuctionOutcome& outcome, bool include_trace);
json metrics_to_json(const MetricsReport& metrics, bool timing);

struct AuditIssue {
  std::string check;             // "feasibility", "budget-balance", ...
  std::optional<std::string> constraint;  // roman tag for feasibility issues
  std::string detail;
};

struct AuditReport {
  std::vector<AuditIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Re-checks a result document against its instance: fingerprint, schedule
/// feasibility, trade consistency, budget balance and individual rationality.
AuditReport audit_result(const Instance& instance, const json& result);
json audit_to_json(const AuditReport& report);

json suite_spec_to_json(const SuiteSpec& spec);
SuiteSpec suite_spec_from_json(const json& j);

json deviation_to_json(const DeviationReport& report);

}  // namespace pida::io
