#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pida/agents.hpp"

using namespace pida;

namespace {

const Instance ex = fixtures::example_one();

BuyerProfile single_entry(Money value, std::int32_t duration) {
  return {0, {{0, 0, 0, 10, duration, value}}};
}

SellerProfile seller(Money cost) { return {0, {}, 0, 10, cost}; }

Schedule allocate(BuyerId n, SellerId m, TimeSlot t) {
  Schedule s;
  s.assign(n, m, t);
  return s;
}

}  // namespace

TEST(Strategy, ParsesNames) {
  EXPECT_EQ(parse_strategy("xor-bid"), Strategy::xor_bid);
  EXPECT_EQ(parse_strategy("xor-bid-repeating"), Strategy::xor_bid_repeating);
  EXPECT_EQ(to_string(Strategy::single_bid), "single-bid");
  EXPECT_THROW(parse_strategy("vickrey"), std::invalid_argument);
}

TEST(BuyerBestResponse, ExampleOneStartsOnSellerTwo) {
  const auto b = make_buyer(ex.buyer(0), Strategy::xor_bid, Money(1, 10), 1);
  // Utilities 4 - 2(0.1) = 3.8 and 5 - 3(0.1) = 4.7.
  const auto g = buyer_best_response(b);
  ASSERT_EQ(g.bids.size(), 1u);
  EXPECT_EQ(g.bids[0].seller, 1);
  EXPECT_EQ(g.bids[0].unit_price, Money(1, 10));
  EXPECT_EQ(g.bids[0].total(), Money(3, 10));
}

TEST(BuyerBestResponse, TiesFormXorGroupOrSingleDraw) {
  BuyerProfile p{0, {{0, 0, 0, 10, 2, Money(4)}, {0, 1, 0, 10, 2, Money(4)}}};
  auto x = make_buyer(p, Strategy::xor_bid, Money(1), 7);
  EXPECT_EQ(buyer_best_response(x).bids.size(), 2u);
  std::set<SellerId> picks;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto s = make_buyer(p, Strategy::single_bid, Money(1), seed);
    const auto g = buyer_best_response(s);
    ASSERT_EQ(g.bids.size(), 1u);
    picks.insert(g.bids[0].seller);
    EXPECT_EQ(buyer_best_response(s), g);  // same stream, same round
  }
  EXPECT_EQ(picks.size(), 2u);
}

TEST(BuyerBestResponse, AllNegativeUtilitiesAbstain) {
  auto b = make_buyer(single_entry(Money(1), 4), Strategy::xor_bid, Money(1), 0);
  EXPECT_TRUE(buyer_best_response(b).bids.empty());
  b = buyer_commit(std::move(b), XorGroup{0, {}});
  EXPECT_EQ(b.frozen.count(0), 1u);
}

TEST(BuyerBestResponse, ZeroUtilityFinalBidStays) {
  auto b = make_buyer(single_entry(Money(4), 2), Strategy::xor_bid, Money(2), 0);
  const auto g = buyer_best_response(b);
  ASSERT_EQ(g.bids.size(), 1u);
  EXPECT_EQ(g.bids[0].total(), Money(4));
}

TEST(BuyerUpdatePrices, UnallocatedRaisesByStep) {
  auto b = make_buyer(single_entry(Money(10), 2), Strategy::single_bid, Money(1), 0);
  b = buyer_commit(std::move(b), buyer_submission(b));
  b = buyer_update_prices(std::move(b), Schedule{}, Money(1, 5), Money(1));
  EXPECT_EQ(b.unit_prices.at(0), Money::parse("1.2"));
  EXPECT_FALSE(b.frozen.count(0));
}

TEST(BuyerUpdatePrices, CapBindsAndFreezes) {
  auto b = make_buyer(single_entry(Money(4), 2), Strategy::single_bid, Money::parse("1.95"), 0);
  b = buyer_commit(std::move(b), buyer_submission(b));
  b = buyer_update_prices(std::move(b), Schedule{}, Money(1, 5), Money(1));
  EXPECT_EQ(b.unit_prices.at(0), Money(2));
  EXPECT_TRUE(b.frozen.count(0));
  // Frozen stays frozen and the price stays put.
  b = buyer_commit(std::move(b), buyer_submission(b));
  b = buyer_update_prices(std::move(b), Schedule{}, Money(1, 5), Money(1));
  EXPECT_EQ(b.unit_prices.at(0), Money(2));
  EXPECT_TRUE(b.frozen.count(0));
}

TEST(BuyerUpdatePrices, AllocatedKeepsPrices) {
  auto b = make_buyer(single_entry(Money(10), 2), Strategy::single_bid, Money(1), 0);
  b = buyer_commit(std::move(b), buyer_submission(b));
  const auto before = b;
  b = buyer_update_prices(std::move(b), allocate(0, 0, 3), Money(1, 5), Money(1));
  EXPECT_EQ(b.unit_prices, before.unit_prices);
  EXPECT_EQ(b.frozen, before.frozen);
  ASSERT_TRUE(b.last_allocation.has_value());
  EXPECT_EQ(b.last_allocation->start, 3);
}

TEST(BuyerUpdatePrices, PartialStepWeightFreezes) {
  auto b = make_buyer(single_entry(Money(10), 2), Strategy::single_bid, Money(1), 0);
  b = buyer_commit(std::move(b), buyer_submission(b));
  b = buyer_update_prices(std::move(b), Schedule{}, Money(1, 5), Money(1, 2));
  EXPECT_EQ(b.unit_prices.at(0), Money::parse("1.1"));
  EXPECT_TRUE(b.frozen.count(0));
}

TEST(BuyerUpdatePrices, RejectsBadSteps) {
  auto b = make_buyer(single_entry(Money(10), 2), Strategy::single_bid, Money(1), 0);
  EXPECT_THROW(buyer_update_prices(b, Schedule{}, Money(0), Money(1)), std::invalid_argument);
  EXPECT_THROW(buyer_update_prices(b, Schedule{}, Money(1, 5), Money(2)), std::invalid_argument);
  EXPECT_THROW(buyer_update_prices(b, Schedule{}, Money(1, 5), Money(0)), std::invalid_argument);
}

TEST(BuyerSubmission, AllocatedRepeatsAwardedOrWholeGroup) {
  BuyerProfile p{0, {{0, 0, 0, 10, 2, Money(4)}, {0, 1, 0, 10, 2, Money(4)}}};
  for (auto strategy : {Strategy::xor_bid, Strategy::xor_bid_repeating}) {
    auto b = make_buyer(p, strategy, Money(1), 0);
    const auto g = buyer_submission(b);
    ASSERT_EQ(g.bids.size(), 2u);
    b = buyer_commit(std::move(b), g);
    b = buyer_update_prices(std::move(b), allocate(0, 1, 0), Money(1, 5), Money(1));
    const auto next = buyer_submission(b);
    if (strategy == Strategy::xor_bid) {
      ASSERT_EQ(next.bids.size(), 1u);
      EXPECT_EQ(next.bids[0].seller, 1);
    } else {
      EXPECT_EQ(next, g);
    }
  }
}

TEST(MakeBuyer, RestrictedReportsOnly) {
  std::map<SellerId, ReportedWindow> ok{{0, {1, 9, 3}}};
  const auto b = make_buyer(single_entry(Money(10), 2), Strategy::single_bid, Money(1), 0, &ok);
  EXPECT_EQ(buyer_best_response(b).bids.at(0).duration, 3);
  std::map<SellerId, ReportedWindow> early{{0, {0, 11, 2}}};
  EXPECT_THROW(make_buyer(single_entry(Money(10), 2), Strategy::single_bid, Money(1), 0, &early),
               std::invalid_argument);
  std::map<SellerId, ReportedWindow> shorter{{0, {0, 10, 1}}};
  EXPECT_THROW(make_buyer(single_entry(Money(10), 2), Strategy::single_bid, Money(1), 0, &shorter),
               std::invalid_argument);
  std::map<SellerId, ReportedWindow> other{{3, {0, 10, 2}}};
  EXPECT_THROW(make_buyer(single_entry(Money(10), 2), Strategy::single_bid, Money(1), 0, &other),
               std::invalid_argument);
}

TEST(SellerUpdatePrice, IdleSellerSteps) {
  auto s = make_seller(seller(Money(1)), Money(7));
  s = seller_update_price(std::move(s), {}, Money(1, 5), Money(1));
  EXPECT_EQ(s.unit_price, Money::parse("6.8"));
  EXPECT_FALSE(s.frozen);
}

TEST(SellerUpdatePrice, FloorAtCostFreezes) {
  auto s = make_seller(seller(Money(1)), Money::parse("1.1"));
  s = seller_update_price(std::move(s), {}, Money(1, 5), Money(1));
  EXPECT_EQ(s.unit_price, Money(1));
  EXPECT_TRUE(s.frozen);
  EXPECT_EQ(make_ask(s).unit_price, Money(1));
}

TEST(SellerUpdatePrice, FullyBookedKeepsPrice) {
  auto s = make_seller(seller(Money(1)), Money(7));
  const std::vector<Interval> booked{{4, 10}, {0, 4}};
  s = seller_update_price(std::move(s), booked, Money(1, 5), Money(1));
  EXPECT_EQ(s.unit_price, Money(7));
  const std::vector<Interval> gap{{0, 4}, {5, 10}};
  s = seller_update_price(std::move(s), gap, Money(1, 5), Money(1));
  EXPECT_EQ(s.unit_price, Money::parse("6.8"));
}

TEST(MakeAsk, CarriesReportedWindow) {
  const auto s = make_seller(ex.seller(0), Money::parse("1.5"));
  const Ask a = make_ask(s);
  EXPECT_EQ(a.start, 13);
  EXPECT_EQ(a.end, 17);
  EXPECT_EQ(a.unit_price, Money::parse("1.5"));
  EXPECT_EQ(make_ask(make_seller(ex.seller(0), Money(7), std::pair{14, 16})).start, 14);
  EXPECT_THROW(make_seller(ex.seller(0), Money(7), std::pair{12, 16}), std::invalid_argument);
  EXPECT_THROW(make_seller(ex.seller(0), Money(7), std::pair{14, 18}), std::invalid_argument);
}

TEST(MakeSeller, CostAboveCeilingOpensFrozenAtCost) {
  const auto s = make_seller(seller(Money(8)), Money(7));
  EXPECT_EQ(s.unit_price, Money(8));
  EXPECT_TRUE(s.frozen);
}

// Property: over random price walks, buyer prices only rise, never pass the
// value cap, frozen sets only grow, and every best response is exactly the
// argmax set of non-negative utilities (or one member of it under single-bid).
TEST(AgentsProperty, MonotoneBoundedAndArgmax) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = fixtures::random_instance(seed, 4, 3, 12);
    Rng rng(seed);
    for (const auto& profile : inst.buyers()) {
      const auto strategy = static_cast<Strategy>(rng.uniform_int(0, 2));
      auto b = make_buyer(profile, strategy, Money(1, 4), seed);
      for (int round = 0; round < 30; ++round) {
        const auto g = buyer_submission(b);
        if (!b.last_allocation) {
          std::optional<Money> best;
          for (const auto& e : profile.entries) {
            const Money u = e.value - Money(e.duration) * b.unit_prices.at(e.seller);
            if (!u.is_negative() && (!best || u > *best)) best = u;
          }
          std::set<SellerId> argmax;
          for (const auto& e : profile.entries) {
            if (best && e.value - Money(e.duration) * b.unit_prices.at(e.seller) == *best) argmax.insert(e.seller);
          }
          std::set<SellerId> got;
          for (const auto& bid : g.bids) got.insert(bid.seller);
          if (strategy == Strategy::single_bid) {
            ASSERT_EQ(got.size(), argmax.empty() ? 0u : 1u);
            for (SellerId m : got) ASSERT_TRUE(argmax.count(m));
          } else {
            ASSERT_EQ(got, argmax);
          }
        }
        const auto prices = b.unit_prices;
        const auto frozen = b.frozen;
        b = buyer_commit(std::move(b), g);
        Schedule s;
        if (!g.bids.empty() && rng.uniform_int(0, 3) == 0) s.assign(profile.id, g.bids[0].seller, 0);
        b = buyer_update_prices(std::move(b), s, Money(1, 5), Money(1));
        for (const auto& e : profile.entries) {
          ASSERT_GE(b.unit_prices.at(e.seller), prices.at(e.seller));
          if (prices.at(e.seller) * Money(e.duration) <= e.value) {
            ASSERT_LE(b.unit_prices.at(e.seller) * Money(e.duration), e.value);
          }
        }
        for (SellerId m : frozen) ASSERT_TRUE(b.frozen.count(m));
      }
    }
    for (const auto& profile : inst.sellers()) {
      auto s = make_seller(profile, Money(5));
      for (int round = 0; round < 40; ++round) {
        const Money before = s.unit_price;
        const bool was_frozen = s.frozen;
        s = seller_update_price(std::move(s), {}, Money(1, 5), Money(1));
        ASSERT_LE(s.unit_price, before);
        ASSERT_GE(s.unit_price, profile.unit_cost);
        if (was_frozen) ASSERT_TRUE(s.frozen);
      }
      EXPECT_TRUE(s.frozen);
    }
  }
}
