#pragma once

// Shared instances and hand-rolled random generators for property tests.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pida/domain.hpp"
#include "pida/rng.hpp"
#include "pida/winner_determination.hpp"

namespace fixtures {

using namespace pida;

/// Two sellers, one buyer, hourly slots from midnight.
/// Seller 0: 13:00-17:00 at $1.5; seller 1: 15:00-19:00 at $1.
/// Buyer 0: seller 0 window 12:00-16:00, 2h, $4; seller 1 window 16:00-20:00, 3h, $5.
inline Instance example_one() {
  std::vector<SellerProfile> sellers{
      {0, {}, 13, 17, Money::parse("1.5")},
      {1, {}, 15, 19, Money(1)},
  };
  std::vector<BuyerProfile> buyers{{0, {{0, 0, 12, 16, 2, Money(4)}, {0, 1, 16, 20, 3, Money(5)}}}};
  return Instance(sellers, buyers, 24, 60, 0);
}

/// Small random market: up to `max_sellers` sellers, `max_buyers` buyers,
/// horizon `horizon`, prices on a 0.5 grid.
inline Instance random_instance(std::uint64_t seed, int max_sellers = 4, int max_buyers = 6, int horizon = 12) {
  Rng rng(seed);
  const int ns = static_cast<int>(rng.uniform_int(1, max_sellers));
  const int nb = static_cast<int>(rng.uniform_int(0, max_buyers));
  std::vector<SellerProfile> sellers;
  for (int m = 0; m < ns; ++m) {
    const auto s = static_cast<TimeSlot>(rng.uniform_int(0, horizon - 2));
    const auto e = static_cast<TimeSlot>(rng.uniform_int(s + 1, horizon));
    sellers.push_back({m, {}, s, e, Money(rng.uniform_int(1, 6), 2)});
  }
  std::vector<BuyerProfile> buyers;
  for (int n = 0; n < nb; ++n) {
    BuyerProfile b{n, {}};
    for (int m = 0; m < ns; ++m) {
      if (rng.uniform_int(0, 2) == 0 && !(m == ns - 1 && b.entries.empty())) continue;
      const auto r = static_cast<std::int32_t>(rng.uniform_int(1, 4));
      const auto a = static_cast<TimeSlot>(rng.uniform_int(0, horizon - r));
      const auto d = static_cast<TimeSlot>(rng.uniform_int(a + r, horizon));
      b.entries.push_back({n, m, a, d, r, Money(rng.uniform_int(0, 12 * r), 2)});
    }
    buyers.push_back(std::move(b));
  }
  return Instance(sellers, buyers, horizon, 30, 0);
}

/// Random round market over a random instance: every buyer's entries form
/// one XOR group with bid prices on a 0.5 grid; asks on the same grid.
inline RoundMarket random_market(std::uint64_t seed, int max_sellers = 4, int max_buyers = 6, int horizon = 12) {
  const Instance inst = random_instance(seed, max_sellers, max_buyers, horizon);
  Rng rng(derive_seed(seed, 99));
  RoundMarket market;
  market.horizon = inst.horizon();
  for (const auto& s : inst.sellers()) {
    market.asks.push_back({s.id, s.service_start, s.service_end, Money(rng.uniform_int(0, 8), 2)});
  }
  for (const auto& b : inst.buyers()) {
    XorGroup g{b.id, {}};
    for (const auto& e : b.entries) {
      if (rng.uniform_int(0, 3) == 0) continue;
      g.bids.push_back({b.id, e.seller, e.arrival, e.departure, e.duration, Money(rng.uniform_int(0, 8), 2)});
    }
    if (!g.bids.empty()) market.groups.push_back(std::move(g));
  }
  return market;
}

}  // namespace fixtures
