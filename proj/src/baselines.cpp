#include "pida/baselines.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

#include "pida/rng.hpp"

namespace pida {
namespace {

// Busy intervals per seller, kept unsorted; instances are small per seller.
class Occupancy {
 public:
  explicit Occupancy(const Instance& instance) : instance_(instance), busy_(instance.sellers().size()) {}

  std::optional<TimeSlot> earliest_start(const BuyerTypeEntry& e) const {
    const auto& s = instance_.seller(e.seller);
    const TimeSlot lo = std::max(e.arrival, s.service_start);
    const TimeSlot hi = std::min(e.departure, s.service_end) - e.duration;
    for (TimeSlot t = lo; t <= hi; ++t) {
      if (free(e.seller, t, t + e.duration)) return t;
    }
    return std::nullopt;
  }

  void book(SellerId m, TimeSlot start, TimeSlot end) {
    busy_[static_cast<std::size_t>(m)].emplace_back(start, end);
  }

 private:
  bool free(SellerId m, TimeSlot start, TimeSlot end) const {
    for (const auto& [a, b] : busy_[static_cast<std::size_t>(m)]) {
      if (start < b && a < end) return false;
    }
    return true;
  }

  const Instance& instance_;
  std::vector<std::vector<std::pair<TimeSlot, TimeSlot>>> busy_;
};

}  // namespace

Schedule fcfs_allocate(const Instance& instance, std::uint64_t seed) {
  struct Arrival {
    TimeSlot at;
    BuyerId buyer;
  };
  std::vector<Arrival> order;
  for (const auto& b : instance.buyers()) {
    if (b.entries.empty()) continue;
    TimeSlot at = b.entries.front().arrival;
    for (const auto& e : b.entries) at = std::min(at, e.arrival);
    order.push_back({at, b.id});
  }
  if (seed != 0) {
    Rng rng(derive_seed(seed, 0xFCF5));
    rng.shuffle(order);
    std::stable_sort(order.begin(), order.end(), [](const Arrival& x, const Arrival& y) { return x.at < y.at; });
  } else {
    std::sort(order.begin(), order.end(),
              [](const Arrival& x, const Arrival& y) { return std::tie(x.at, x.buyer) < std::tie(y.at, y.buyer); });
  }

  Schedule schedule;
  Occupancy occupancy(instance);
  for (const auto& [at, n] : order) {
    // Entries are stored by ascending seller id.
    for (const auto& e : instance.buyer(n).entries) {
      if (e.value < Money(e.duration) * instance.seller(e.seller).unit_cost) continue;
      if (auto t = occupancy.earliest_start(e)) {
        schedule.assign(n, e.seller, *t);
        occupancy.book(e.seller, *t, *t + e.duration);
        break;
      }
    }
  }
  return schedule;
}

Schedule greedy_allocate(const Instance& instance) {
  struct Candidate {
    Money unit_surplus;
    Money surplus;
    const BuyerTypeEntry* entry;
  };
  std::vector<Candidate> pairs;
  for (const auto& b : instance.buyers()) {
    for (const auto& e : b.entries) {
      const Money c = instance.seller(e.seller).unit_cost;
      const Money surplus = e.value - Money(e.duration) * c;
      if (surplus.is_negative()) continue;
      pairs.push_back({e.value / Money(e.duration) - c, surplus, &e});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Candidate& x, const Candidate& y) {
    if (x.unit_surplus != y.unit_surplus) return x.unit_surplus > y.unit_surplus;
    if (x.surplus != y.surplus) return x.surplus > y.surplus;
    if (x.entry->buyer != y.entry->buyer) return x.entry->buyer < y.entry->buyer;
    return x.entry->seller < y.entry->seller;
  });

  Schedule schedule;
  Occupancy occupancy(instance);
  std::vector<bool> placed(instance.buyers().size(), false);
  for (const auto& c : pairs) {
    const auto& e = *c.entry;
    if (placed[static_cast<std::size_t>(e.buyer)]) continue;
    if (auto t = occupancy.earliest_start(e)) {
      schedule.assign(e.buyer, e.seller, *t);
      occupancy.book(e.seller, *t, *t + e.duration);
      placed[static_cast<std::size_t>(e.buyer)] = true;
    }
  }
  return schedule;
}

}  // namespace pida
