#include "pida/domain.hpp"

#include <algorithm>
#include <limits>
#include <cstdio>
#include <set>

namespace pida {

namespace {

std::string pair_name(BuyerId n, SellerId m) {
  return "(buyer " + std::to_string(n) + ", seller " + std::to_string(m) + ")";
}

}  // namespace

Instance::Instance(std::vector<SellerProfile> sellers, std::vector<BuyerProfile> buyers,
                   TimeSlot horizon, std::int32_t slot_minutes, std::int32_t origin_minutes)
    : sellers_(std::move(sellers)),
      buyers_(std::move(buyers)),
      horizon_(horizon),
      slot_minutes_(slot_minutes),
      origin_minutes_(origin_minutes) {
  if (horizon_ < 0) throw StructuralError("horizon must be non-negative");
  if (slot_minutes_ <= 0) throw StructuralError("slot_minutes must be positive");

  for (std::size_t m = 0; m < sellers_.size(); ++m) {
    const auto& s = sellers_[m];
    const std::string who = "seller " + std::to_string(m);
    if (s.id != static_cast<SellerId>(m)) throw StructuralError(who + ": id must equal its position");
    if (s.service_start < 0) throw StructuralError(who + ": negative service start");
    if (s.service_start >= s.service_end) throw StructuralError(who + ": service_start must precede service_end");
    if (s.service_end > horizon_) throw StructuralError(who + ": service window exceeds horizon");
    if (s.unit_cost <= Money(0)) throw StructuralError(who + ": unit cost must be positive");
  }

  for (std::size_t n = 0; n < buyers_.size(); ++n) {
    auto& b = buyers_[n];
    const std::string who = "buyer " + std::to_string(n);
    if (b.id != static_cast<BuyerId>(n)) throw StructuralError(who + ": id must equal its position");
    if (b.entries.empty()) throw StructuralError(who + ": needs at least one type entry");
    std::set<SellerId> seen;
    for (const auto& e : b.entries) {
      const std::string pair = pair_name(e.buyer, e.seller);
      if (e.buyer != b.id) throw StructuralError(who + ": entry names buyer " + std::to_string(e.buyer));
      if (e.seller < 0 || e.seller >= static_cast<SellerId>(sellers_.size()))
        throw StructuralError(pair + ": unknown seller");
      if (!seen.insert(e.seller).second) throw StructuralError(pair + ": duplicate entry");
      if (e.duration < 1) throw StructuralError(pair + ": duration must be at least one slot");
      if (e.arrival < 0 || e.departure > horizon_)
        throw StructuralError(pair + ": window outside horizon");
      if (e.arrival + e.duration > e.departure)
        throw StructuralError(pair + ": arrival + duration exceeds departure");
      if (e.value.is_negative()) throw StructuralError(pair + ": negative value");
    }
    std::sort(b.entries.begin(), b.entries.end(),
              [](const BuyerTypeEntry& x, const BuyerTypeEntry& y) { return x.seller < y.seller; });
  }
}

const SellerProfile& Instance::seller(SellerId m) const {
  if (m < 0 || m >= static_cast<SellerId>(sellers_.size()))
    throw StructuralError("unknown seller " + std::to_string(m));
  return sellers_[static_cast<std::size_t>(m)];
}

const BuyerProfile& Instance::buyer(BuyerId n) const {
  if (n < 0 || n >= static_cast<BuyerId>(buyers_.size()))
    throw StructuralError("unknown buyer " + std::to_string(n));
  return buyers_[static_cast<std::size_t>(n)];
}

const BuyerTypeEntry* Instance::entry(BuyerId n, SellerId m) const {
  for (const auto& e : buyer(n).entries) {
    if (e.seller == m) return &e;
  }
  return nullptr;
}

std::string Instance::clock(TimeSlot t) const {
  const int minutes = origin_minutes_ + t * slot_minutes_;
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

void Schedule::assign(BuyerId buyer, SellerId seller, TimeSlot start) {
  starts_[{buyer, seller}] = start;
}

void Schedule::unassign(BuyerId buyer, SellerId seller) { starts_.erase({buyer, seller}); }

std::optional<TimeSlot> Schedule::start_of(BuyerId buyer, SellerId seller) const {
  auto it = starts_.find({buyer, seller});
  if (it == starts_.end()) return std::nullopt;
  return it->second;
}

std::optional<Allocation> Schedule::allocation_of(BuyerId buyer) const {
  auto it = starts_.lower_bound({buyer, std::numeric_limits<SellerId>::min()});
  if (it == starts_.end() || it->first.first != buyer) return std::nullopt;
  return Allocation{buyer, it->first.second, it->second};
}

std::vector<Allocation> Schedule::allocations() const {
  std::vector<Allocation> out;
  out.reserve(starts_.size());
  for (const auto& [key, start] : starts_) out.push_back({key.first, key.second, start});
  return out;
}

std::string constraint_tag(Constraint c) {
  switch (c) {
    case Constraint::arrival: return "i";
    case Constraint::departure: return "ii";
    case Constraint::single_allocation: return "iii";
    case Constraint::seller_overlap: return "iv";
    case Constraint::service_window: return "v";
    case Constraint::value_covers_cost: return "vi";
  }
  return "?";
}

bool FeasibilityReport::violates(Constraint c) const {
  return std::any_of(violations.begin(), violations.end(),
                     [c](const Violation& v) { return v.constraint == c; });
}

FeasibilityReport validate_schedule(const Instance& instance, const Schedule& schedule,
                                    const RoundPrices* prices) {
  FeasibilityReport report;
  auto add = [&](Constraint c, BuyerId n, SellerId m, std::string detail,
                 std::optional<BuyerId> other = std::nullopt) {
    report.violations.push_back({c, n, m, other, std::move(detail)});
  };

  const auto allocations = schedule.allocations();
  for (const auto& a : allocations) {
    const auto* e = instance.entry(a.buyer, a.seller);
    if (e == nullptr) {
      throw StructuralError("schedule references " + pair_name(a.buyer, a.seller) +
                            " which the instance does not contain");
    }
    const auto& s = instance.seller(a.seller);
    const TimeSlot finish = a.start + e->duration;
    if (a.start < e->arrival)
      add(Constraint::arrival, a.buyer, a.seller,
          "start " + std::to_string(a.start) + " < arrival " + std::to_string(e->arrival));
    if (finish > e->departure)
      add(Constraint::departure, a.buyer, a.seller,
          "finish " + std::to_string(finish) + " > departure " + std::to_string(e->departure));
    if (a.start < s.service_start || finish > s.service_end)
      add(Constraint::service_window, a.buyer, a.seller,
          "[" + std::to_string(a.start) + "," + std::to_string(finish) + ") outside service window [" +
              std::to_string(s.service_start) + "," + std::to_string(s.service_end) + ")");
    if (prices != nullptr) {
      auto bid = prices->bid_unit.find({a.buyer, a.seller});
      auto ask = prices->ask_unit.find(a.seller);
      if (bid == prices->bid_unit.end() || ask == prices->ask_unit.end())
        throw StructuralError("no round price for " + pair_name(a.buyer, a.seller));
      if (bid->second < ask->second)
        add(Constraint::value_covers_cost, a.buyer, a.seller,
            "bid unit price " + bid->second.to_string() + " < ask unit price " + ask->second.to_string());
    } else {
      const Money cost = Money(e->duration) * s.unit_cost;
      if (e->value < cost)
        add(Constraint::value_covers_cost, a.buyer, a.seller,
            "value " + e->value.to_string() + " < duration * cost " + cost.to_string());
    }
  }

  for (std::size_t i = 1; i < allocations.size(); ++i) {
    if (allocations[i].buyer == allocations[i - 1].buyer) {
      add(Constraint::single_allocation, allocations[i].buyer, allocations[i].seller,
          "buyer also allocated to seller " + std::to_string(allocations[i - 1].seller));
    }
  }

  std::map<SellerId, std::vector<std::pair<TimeSlot, const Allocation*>>> by_seller;
  for (const auto& a : allocations) by_seller[a.seller].push_back({a.start, &a});
  for (auto& [m, jobs] : by_seller) {
    std::sort(jobs.begin(), jobs.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first < y.first : x.second->buyer < y.second->buyer;
    });
    // Sweep keeps the allocation with the latest finish seen so far.
    const Allocation* reach = nullptr;
    TimeSlot reach_end = 0;
    for (const auto& [start, a] : jobs) {
      const TimeSlot end = start + instance.entry(a->buyer, m)->duration;
      if (reach != nullptr && start < reach_end) {
        add(Constraint::seller_overlap, a->buyer, m,
            "overlaps buyer " + std::to_string(reach->buyer) + " on seller " + std::to_string(m),
            reach->buyer);
      }
      if (reach == nullptr || end > reach_end) {
        reach = a;
        reach_end = end;
      }
    }
  }
  return report;
}

Money pair_surplus(const Instance& instance, BuyerId buyer, SellerId seller) {
  const auto* e = instance.entry(buyer, seller);
  if (e == nullptr) throw StructuralError("no entry for " + pair_name(buyer, seller));
  return e->value - Money(e->duration) * instance.seller(seller).unit_cost;
}

Money social_welfare(const Instance& instance, const Schedule& schedule) {
  const auto report = validate_schedule(instance, schedule);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw InfeasibleSchedule("welfare of an infeasible schedule: constraint (" +
                             constraint_tag(v.constraint) + ") " + v.detail);
  }
  Money total;
  for (const auto& a : schedule.allocations()) total += pair_surplus(instance, a.buyer, a.seller);
  return total;
}

}  // namespace pida
