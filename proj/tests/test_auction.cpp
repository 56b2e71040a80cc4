#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "io.hpp"
#include "pida/auction.hpp"
#include "pida/generator.hpp"

using namespace pida;

namespace {

void expect_mechanism_properties(const Instance& inst, const AuctionOutcome& out) {
  const auto& s = out.settlement;
  Money paid(0), received(0);
  for (const Money& p : s.payments) paid += p;
  for (const Money& r : s.reimbursements) received += r;
  EXPECT_EQ(paid, received);
  for (const Money& u : s.buyer_utilities) EXPECT_FALSE(u.is_negative()) << u.to_string();
  for (const Money& u : s.seller_utilities) EXPECT_FALSE(u.is_negative()) << u.to_string();
  EXPECT_TRUE(validate_schedule(inst, out.final_schedule).ok());
}

}  // namespace

TEST(RunAuction, ExampleOneAllocatesSellerTwo) {
  const Instance inst = fixtures::example_one();
  const AuctionOutcome out = run_auction(inst, AuctionConfig{});
  EXPECT_EQ(out.terminated_by, Termination::t1);
  const auto a = out.final_schedule.allocation_of(0);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->seller, 1);
  EXPECT_EQ(a->start, 16);
  ASSERT_EQ(out.settlement.trades.size(), 1u);
  expect_mechanism_properties(inst, out);
  EXPECT_EQ(out.rounds, static_cast<std::int32_t>(out.trace.size()));
  EXPECT_LE(out.rounds, AuctionConfig{}.round_cap());
}

TEST(RunAuction, NoProfitableTradeEndsEmpty) {
  std::vector<SellerProfile> sellers{{0, {}, 0, 10, Money(3)}, {1, {}, 0, 10, Money(4)}};
  std::vector<BuyerProfile> buyers{{0, {{0, 0, 0, 10, 2, Money(5)}, {0, 1, 0, 10, 2, Money(5)}}},
                                   {1, {{1, 1, 2, 8, 3, Money(1)}}}};
  const Instance inst(sellers, buyers, 10);
  for (auto strategy : {Strategy::single_bid, Strategy::xor_bid, Strategy::xor_bid_repeating}) {
    AuctionConfig config;
    config.strategy = strategy;
    const AuctionOutcome out = run_auction(inst, config);
    EXPECT_TRUE(out.final_schedule.empty());
    EXPECT_EQ(out.terminated_by, Termination::t1);
    for (const Money& u : out.settlement.buyer_utilities) EXPECT_EQ(u, Money(0));
    for (const Money& u : out.settlement.seller_utilities) EXPECT_EQ(u, Money(0));
    // Asks walked down to cost; the freeze follows once they cannot move.
    const RoundRecord& last = out.trace.back();
    for (const auto& a : last.asks) EXPECT_EQ(a.unit_price, inst.seller(a.seller).unit_cost);
  }
}

TEST(RunAuction, SeededReplayIsIdentical) {
  GeneratorConfig g;
  g.n_sellers = 5;
  g.n_buyers = 10;
  g.seed = 11;
  const Instance inst = generate_instance(g);
  for (auto solver : {SolverKind::exact, SolverKind::sa}) {
    AuctionConfig config;
    config.strategy = Strategy::single_bid;
    config.tie_break = TieBreak::seeded_random;
    config.wd_solver = solver;
    config.sa.iterations = 200;
    config.seed = 99;
    const auto a = io::outcome_to_json(run_auction(inst, config), true).dump();
    const auto b = io::outcome_to_json(run_auction(inst, config), true).dump();
    EXPECT_EQ(a, b);
  }
}

TEST(RunAuction, RoundCapIsFlagged) {
  AuctionConfig config;
  config.max_rounds = 1;
  const AuctionOutcome out = run_auction(fixtures::example_one(), config);
  EXPECT_EQ(out.terminated_by, Termination::round_cap);
  EXPECT_EQ(out.rounds, 1);
  EXPECT_EQ(to_string(out.terminated_by), "round-cap");
}

TEST(RunAuction, ObserverSeesEveryRound) {
  std::vector<std::int32_t> seen;
  const auto out = run_auction(fixtures::example_one(), AuctionConfig{}, nullptr,
                               [&](const RoundRecord& r) { seen.push_back(r.round); });
  ASSERT_EQ(seen.size(), out.trace.size());
  for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], static_cast<std::int32_t>(i + 1));
}

TEST(AuctionConfig, RejectsBadParameters) {
  AuctionConfig c;
  c.b_min = Money(7);
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(run_auction(fixtures::example_one(), c), std::invalid_argument);
  c = {};
  c.epsilon = Money(0);
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.w = Money(3, 2);
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.max_rounds = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.wd_solver = SolverKind::sa;
  c.sa.cooling_factor = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(AuctionConfig, DefaultCapCoversFullPriceWalk) {
  AuctionConfig c;
  // 10 * (7 - 0.1) / 0.2 = 345.
  EXPECT_EQ(c.round_cap(), 345);
  c.epsilon = Money(3, 10);
  EXPECT_EQ(c.round_cap(), 230);
  c.epsilon = Money(1, 7);
  EXPECT_EQ(c.round_cap(), 483);
}

TEST(CheckTermination, StructuralEquality) {
  RoundRecord prev;
  prev.asks = {{0, 0, 10, Money(2)}};
  prev.groups = {{0, {{0, 0, 0, 10, 2, Money(1)}}}, {1, {}}};
  EXPECT_TRUE(check_termination(prev, prev.asks, prev.groups));
  auto raised = prev.groups;
  raised[0].bids[0].unit_price = Money::parse("1.2");
  EXPECT_FALSE(check_termination(prev, prev.asks, raised));
  auto asks = prev.asks;
  asks[0].unit_price = Money::parse("1.8");
  EXPECT_FALSE(check_termination(prev, asks, prev.groups));
  auto switched = prev.groups;
  switched[0].bids[0].seller = 1;  // same price, other XOR member
  EXPECT_FALSE(check_termination(prev, prev.asks, switched));
}

TEST(Settle, PaysFinalBidTimesDuration) {
  std::vector<SellerProfile> sellers{{0, {}, 0, 10, Money(1)}, {1, {}, 0, 10, Money(1)}};
  std::vector<BuyerProfile> buyers{{0, {{0, 0, 0, 10, 3, Money(5)}}}, {1, {{1, 1, 0, 10, 2, Money(3)}}}};
  const Instance inst(sellers, buyers, 10);
  RoundRecord r;
  r.asks = {{0, 0, 10, Money(1)}, {1, 0, 10, Money(1)}};
  r.groups = {{0, {{0, 0, 0, 10, 3, Money::parse("1.4")}}}, {1, {{1, 1, 0, 10, 2, Money::parse("1.6")}}}};
  r.provisional.assign(0, 0, 2);
  const Settlement s = settle(r, inst);
  ASSERT_EQ(s.trades.size(), 1u);
  EXPECT_EQ(s.trades[0].payment, Money::parse("4.2"));
  EXPECT_EQ(s.payments[0], Money::parse("4.2"));
  EXPECT_EQ(s.reimbursements[0], Money::parse("4.2"));
  EXPECT_EQ(s.buyer_utilities[0], Money::parse("0.8"));
  EXPECT_EQ(s.seller_utilities[0], Money::parse("1.2"));
  EXPECT_EQ(s.payments[1], Money(0));
  EXPECT_EQ(s.reimbursements[1], Money(0));
}

TEST(Settle, RejectsAllocationWithoutBid) {
  const Instance inst = fixtures::example_one();
  RoundRecord r;
  r.groups = {{0, {}}};
  r.provisional.assign(0, 1, 16);
  EXPECT_THROW(settle(r, inst), StructuralError);
}

// Property: on random small markets under every strategy, settlement is budget
// balanced and individually rational, each trace round's objective matches
// its schedule under the round's prices, and prices move monotonically.
TEST(AuctionProperty, BalancedRationalAndConsistent) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = fixtures::random_instance(seed, 4, 5, 12);
    for (auto strategy : {Strategy::single_bid, Strategy::xor_bid, Strategy::xor_bid_repeating}) {
      AuctionConfig config;
      config.strategy = strategy;
      config.seed = seed;
      const AuctionOutcome out = run_auction(inst, config);
      ASSERT_EQ(out.terminated_by, Termination::t1) << seed;
      expect_mechanism_properties(inst, out);
      for (std::size_t t = 0; t < out.trace.size(); ++t) {
        const RoundRecord& r = out.trace[t];
        const RoundMarket market = r.market(inst.horizon());
        const RoundPrices prices = market.prices();
        ASSERT_TRUE(validate_schedule(inst, r.provisional, &prices).ok());
        Money obj(0);
        for (const auto& a : r.provisional.allocations()) {
          const Bid* bid = nullptr;
          for (const auto& b : r.groups[static_cast<std::size_t>(a.buyer)].bids) {
            if (b.seller == a.seller) bid = &b;
          }
          ASSERT_NE(bid, nullptr);
          obj += bid->total() - Money(bid->duration) * market.ask(a.seller)->unit_price;
        }
        ASSERT_EQ(obj, r.objective);
        ASSERT_EQ(r.trades, static_cast<std::int32_t>(r.provisional.size()));
        if (t > 0) {
          for (std::size_t m = 0; m < r.asks.size(); ++m) {
            ASSERT_LE(r.asks[m].unit_price, out.trace[t - 1].asks[m].unit_price);
          }
        }
      }
    }
  }
}
