#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pida/auction.hpp"
#include "pida/generator.hpp"
#include "pida/metrics.hpp"

namespace pida {

struct LabeledConfig {
  std::string label;
  AuctionConfig config;
};

struct SuiteSpec {
  std::vector<GroupShape> groups;
  std::vector<LabeledConfig> configs;
  std::uint64_t seed = 0;
  /// Exact welfare optimum per instance; ratios need it. Only tractable for
  /// small markets.
  bool compute_optimal = true;
  std::uint64_t fcfs_seed = 0;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
  /// Template for every instance; sizes and seed are overwritten per cell.
  GeneratorConfig generator;
};

/// One (instance, config) run. `error` is set instead of `metrics` when the
/// run threw.
struct CellResult {
  std::int32_t group = 0;
  std::int32_t instance = 0;
  std::size_t config = 0;
  std::uint64_t instance_seed = 0;
  std::optional<MetricsReport> metrics;
  std::string error;
};

/// Means over the successful cells of one group (or all groups when
/// `group` is 0) under one config. Ratio means cover only cells where the
/// ratio is defined; `ratio_cells` counts them.
struct Aggregate {
  std::int32_t group = 0;
  std::size_t config = 0;
  std::int32_t cells = 0;
  std::int32_t failures = 0;
  std::int32_t ratio_cells = 0;
  std::optional<double> efficiency;
  std::optional<double> profit_ratio;
  std::optional<double> fcfs_efficiency;
  std::optional<double> greedy_efficiency;
  double rounds = 0.0;
  double runtime_seconds = 0.0;
  double welfare_auction = 0.0;
  std::optional<double> welfare_optimal;
  double welfare_fcfs = 0.0;
  double welfare_greedy = 0.0;
};

struct SuiteResult {
  std::vector<std::string> labels;
  std::vector<CellResult> cells;         // ordered by group, instance, config
  std::vector<Aggregate> per_group;      // ordered by group, config
  std::vector<Aggregate> overall;        // one per config
  std::vector<std::string> warnings;

  const Aggregate& overall_for(std::size_t config) const { return overall.at(config); }
  /// Comma-separated tables with a header row. Runtime columns appear only
  /// with `timing`, so that untimed output is byte-identical across runs.
  std::string cells_csv(bool timing = false) const;
  std::string summary_csv(bool timing = false) const;
};

/// Seed of instance `index` (0-based) of a group; independent of the configs.
std::uint64_t instance_seed(std::uint64_t suite_seed, std::int32_t group, std::int32_t index);

/// Generates every instance, runs every config on it and aggregates. Results
/// do not depend on the thread count.
SuiteResult run_experiment_suite(const SuiteSpec& spec);

}  // namespace pida
