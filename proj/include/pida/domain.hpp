#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pida/money.hpp"

namespace pida {

/// Integer count of base slots from the start of the scheduling horizon.
using TimeSlot = std::int32_t;

using BuyerId = std::int32_t;
using SellerId = std::int32_t;

/// Raised for malformed market data: unknown ids, duplicate pairs, broken
/// type invariants. Distinct from feasibility violations of a schedule.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Location {
  double latitude = 0.0;
  double longitude = 0.0;

  friend bool operator==(const Location&, const Location&) = default;
};

struct SellerProfile {
  SellerId id = 0;
  Location location;
  TimeSlot service_start = 0;
  TimeSlot service_end = 0;
  Money unit_cost;  // per slot

  friend bool operator==(const SellerProfile&, const SellerProfile&) = default;
};

/// One buyer's type for one seller: window, required duration and total value.
struct BuyerTypeEntry {
  BuyerId buyer = 0;
  SellerId seller = 0;
  TimeSlot arrival = 0;
  TimeSlot departure = 0;
  std::int32_t duration = 1;
  Money value;

  friend bool operator==(const BuyerTypeEntry&, const BuyerTypeEntry&) = default;
};

struct BuyerProfile {
  BuyerId id = 0;
  std::vector<BuyerTypeEntry> entries;

  friend bool operator==(const BuyerProfile&, const BuyerProfile&) = default;
};

/// A full market. Ids are dense and positional: sellers()[m].id == m and
/// buyers()[n].id == n. Construction validates every invariant and throws
/// StructuralError on the first breach.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<SellerProfile> sellers, std::vector<BuyerProfile> buyers,
           TimeSlot horizon, std::int32_t slot_minutes = 30, std::int32_t origin_minutes = 7 * 60);

  const std::vector<SellerProfile>& sellers() const { return sellers_; }
  const std::vector<BuyerProfile>& buyers() const { return buyers_; }
  TimeSlot horizon() const { return horizon_; }
  std::int32_t slot_minutes() const { return slot_minutes_; }
  /// Wall-clock minutes after midnight at slot 0; used only for display.
  std::int32_t origin_minutes() const { return origin_minutes_; }

  const SellerProfile& seller(SellerId m) const;
  const BuyerProfile& buyer(BuyerId n) const;
  /// nullptr when buyer n has no entry for seller m.
  const BuyerTypeEntry* entry(BuyerId n, SellerId m) const;

  /// "HH:MM" rendering of a slot.
  std::string clock(TimeSlot t) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<SellerProfile> sellers_;
  std::vector<BuyerProfile> buyers_;
  TimeSlot horizon_ = 0;
  std::int32_t slot_minutes_ = 30;
  std::int32_t origin_minutes_ = 7 * 60;
};

struct Allocation {
  BuyerId buyer = 0;
  SellerId seller = 0;
  TimeSlot start = 0;

  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

/// Start times keyed by (buyer, seller); absent pairs are unallocated.
/// More than one pair per buyer is representable so that the validator can
/// report it; solvers never produce that.
class Schedule {
 public:
  void assign(BuyerId buyer, SellerId seller, TimeSlot start);
  void unassign(BuyerId buyer, SellerId seller);

  std::optional<TimeSlot> start_of(BuyerId buyer, SellerId seller) const;
  /// First allocation of the buyer in seller order, if any.
  std::optional<Allocation> allocation_of(BuyerId buyer) const;

  bool empty() const { return starts_.empty(); }
  std::size_t size() const { return starts_.size(); }
  /// Sorted by (buyer, seller).
  std::vector<Allocation> allocations() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::map<std::pair<BuyerId, SellerId>, TimeSlot> starts_;
};

/// Per-slot prices of one bidding round.
struct RoundPrices {
  std::map<std::pair<BuyerId, SellerId>, Money> bid_unit;
  std::map<SellerId, Money> ask_unit;
};

enum class Constraint {
  arrival = 1,           // (i)   start >= arrival
  departure = 2,         // (ii)  start + duration <= departure
  single_allocation = 3, // (iii) one seller per buyer
  seller_overlap = 4,    // (iv)  no overlap on a seller
  service_window = 5,    // (v)   inside the seller's service window
  value_covers_cost = 6, // (vi)  value >= duration * cost (or bid >= ask)
};

/// Roman-numeral tag, e.g. "iv".
std::string constraint_tag(Constraint c);

struct Violation {
  Constraint constraint;
  BuyerId buyer = 0;
  SellerId seller = 0;
  std::optional<BuyerId> other_buyer;
  std::string detail;
};

struct FeasibilityReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool violates(Constraint c) const;
};

/// Checks every feasibility constraint and lists every violation. With
/// `prices`, the value-covers-cost check compares the round's bid unit price
/// against the ask unit price instead of true value and cost.
/// Throws StructuralError when the schedule names a pair the instance lacks.
FeasibilityReport validate_schedule(const Instance& instance, const Schedule& schedule,
                                    const RoundPrices* prices = nullptr);

class InfeasibleSchedule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sum over allocated pairs of value minus duration times seller cost.
/// Throws InfeasibleSchedule for schedules that fail validation.
Money social_welfare(const Instance& instance, const Schedule& schedule);

/// Welfare contribution of one pair without any feasibility check.
Money pair_surplus(const Instance& instance, BuyerId buyer, SellerId seller);

}  // namespace pida
