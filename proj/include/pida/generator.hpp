#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pida/domain.hpp"
#include "pida/money.hpp"

namespace pida {

/// Half-open slot range [first, last).
struct SlotRange {
  TimeSlot first = 0;
  TimeSlot last = 0;
};

enum class OffPeakArrivals {
  outside_peaks,  // uniform over slots not covered by any peak window
  whole_horizon,  // uniform over every arrival slot
};

/// Random market shape. Times are 30-minute slots from 07:00; money grids are
/// inclusive ranges walked in fixed steps.
struct GeneratorConfig {
  std::int32_t n_sellers = 4;
  std::int32_t n_buyers = 5;
  std::uint64_t seed = 0;

  TimeSlot horizon = 30;
  std::int32_t slot_minutes = 30;
  std::int32_t origin_minutes = 7 * 60;

  TimeSlot seller_start_last = 14;     // s uniform in [0, 14] (07:00-14:00)
  std::int32_t min_service_slots = 16;
  Money cost_min{1};
  Money cost_max{5, 2};
  Money cost_step{1, 10};

  TimeSlot arrival_last = 29;          // a uniform in [0, 29] (07:00-21:30)
  std::int32_t min_stay_slots = 2;     // d >= a + 1h
  std::int32_t max_stay_slots = 16;    // d <= a + 8h
  std::int32_t min_duration_slots = 2; // r >= 1h
  std::int32_t battery_kwh = 80;
  std::int32_t charge_rate_kw = 10;
  Money unit_value_min{1, 10};
  Money unit_value_max{5};
  Money unit_value_step{1, 10};

  std::vector<SlotRange> peaks{{2, 6}, {10, 14}, {22, 26}};
  double peak_fraction = 0.2;          // share of buyers arriving in each peak
  OffPeakArrivals off_peak = OffPeakArrivals::outside_peaks;
  double bids_fraction = 0.4;          // bids per buyer uniform in [1, max(1, floor(0.4 M))]
  std::int32_t max_redraws = 32;

  double latitude = 0.0;
  double longitude = 0.0;
  double location_spread = 0.05;       // degrees

  /// Longest charge in slots: battery / rate hours.
  std::int32_t max_duration_slots() const;
  /// Throws std::invalid_argument on empty ranges, peak shares above one or
  /// windows outside the horizon.
  void validate() const;
};

/// Draws a market. Each buyer gets one physical arrival, departure and
/// duration, then an entry per targeted seller with the departure clipped to
/// that seller's closing time; entries that no longer fit are dropped and a
/// buyer left with none is redrawn. Per-pair values are unit value x duration
/// with the unit value drawn independently per pair. Deterministic per seed.
/// A buyer still empty after `max_redraws` is dropped (later ids shift down)
/// and reported in `warnings`.
Instance generate_instance(const GeneratorConfig& config, std::vector<std::string>* warnings = nullptr);

/// Named market size used by experiment sweeps.
struct GroupShape {
  std::int32_t group = 0;
  std::int32_t sellers = 0;
  std::int32_t buyers = 0;
  std::int32_t instances = 10;
};

/// The fifteen standard test groups: 1-12 small (4-6 sellers, 5-20 buyers),
/// 13-15 large (20 sellers, 50-150 buyers).
const std::vector<GroupShape>& standard_groups();
const GroupShape& standard_group(std::int32_t group);

}  // namespace pida
