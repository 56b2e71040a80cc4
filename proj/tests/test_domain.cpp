#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pida/domain.hpp"

using namespace pida;

namespace {

const Instance ex = fixtures::example_one();

Schedule one(BuyerId n, SellerId m, TimeSlot t) {
  Schedule s;
  s.assign(n, m, t);
  return s;
}

}  // namespace

TEST(ValidateSchedule, ExampleOneStartAtThirteenIsFeasible) {
  EXPECT_TRUE(validate_schedule(ex, one(0, 0, 13)).ok());
}

TEST(ValidateSchedule, ExampleOneStartAtFifteenOverrunsDeparture) {
  const auto r = validate_schedule(ex, one(0, 0, 15));
  EXPECT_TRUE(r.violates(Constraint::departure));
  EXPECT_FALSE(r.violates(Constraint::arrival));
  EXPECT_FALSE(r.violates(Constraint::service_window));
}

TEST(ValidateSchedule, EmptyScheduleIsFeasible) { EXPECT_TRUE(validate_schedule(ex, Schedule{}).ok()); }

TEST(ValidateSchedule, FlagsEachConstraint) {
  EXPECT_TRUE(validate_schedule(ex, one(0, 0, 11)).violates(Constraint::arrival));
  EXPECT_TRUE(validate_schedule(ex, one(0, 0, 12)).violates(Constraint::service_window));
  Schedule both;
  both.assign(0, 0, 13);
  both.assign(0, 1, 16);
  EXPECT_TRUE(validate_schedule(ex, both).violates(Constraint::single_allocation));

  // Two buyers on one seller overlapping; the second value is below cost.
  Instance two({{0, {}, 0, 10, Money(2)}},
               {{0, {{0, 0, 0, 10, 3, Money(9)}}}, {1, {{1, 0, 0, 10, 3, Money(1)}}}}, 10);
  Schedule clash;
  clash.assign(0, 0, 0);
  clash.assign(1, 0, 2);
  const auto r = validate_schedule(two, clash);
  EXPECT_TRUE(r.violates(Constraint::seller_overlap));
  EXPECT_TRUE(r.violates(Constraint::value_covers_cost));
  EXPECT_EQ(constraint_tag(Constraint::seller_overlap), "iv");
}

TEST(ValidateSchedule, RoundPricesReplaceValuesAndCosts) {
  RoundPrices prices;
  prices.bid_unit[{0, 0}] = Money(1);
  prices.ask_unit[0] = Money(2);
  EXPECT_TRUE(validate_schedule(ex, one(0, 0, 13), &prices).violates(Constraint::value_covers_cost));
  prices.bid_unit[{0, 0}] = Money(2);
  EXPECT_TRUE(validate_schedule(ex, one(0, 0, 13), &prices).ok());
}

TEST(ValidateSchedule, UnknownPairIsStructural) {
  EXPECT_THROW(validate_schedule(ex, one(0, 5, 13)), StructuralError);
  EXPECT_THROW(validate_schedule(ex, one(3, 0, 13)), StructuralError);
}

TEST(SocialWelfare, ExampleOneValues) {
  EXPECT_EQ(social_welfare(ex, one(0, 1, 16)), Money(2));
  EXPECT_EQ(social_welfare(ex, one(0, 0, 13)), Money(1));
  EXPECT_EQ(social_welfare(ex, Schedule{}), Money(0));
  EXPECT_THROW(social_welfare(ex, one(0, 0, 15)), InfeasibleSchedule);
}

TEST(Instance, RejectsBrokenInvariants) {
  EXPECT_THROW(Instance({{1, {}, 0, 5, Money(1)}}, {}, 10), StructuralError);
  EXPECT_THROW(Instance({{0, {}, 5, 5, Money(1)}}, {}, 10), StructuralError);
  EXPECT_THROW(Instance({{0, {}, 0, 11, Money(1)}}, {}, 10), StructuralError);
  EXPECT_THROW(Instance({{0, {}, 0, 5, Money(1)}}, {{0, {{0, 0, 0, 2, 3, Money(1)}}}}, 10), StructuralError);
  EXPECT_THROW(Instance({{0, {}, 0, 5, Money(1)}}, {{0, {{0, 1, 0, 4, 1, Money(1)}}}}, 10), StructuralError);
  EXPECT_THROW(Instance({{0, {}, 0, 5, Money(1)}},
                        {{0, {{0, 0, 0, 4, 1, Money(1)}, {0, 0, 0, 4, 1, Money(1)}}}}, 10),
               StructuralError);
}

TEST(Instance, ClockRendersSlots) {
  EXPECT_EQ(ex.clock(13), "13:00");
  Instance half({{0, {}, 0, 30, Money(1)}}, {}, 30);
  EXPECT_EQ(half.clock(0), "07:00");
  EXPECT_EQ(half.clock(3), "08:30");
}

// Property: the validator's overlap verdict equals a pairwise brute force,
// and welfare is additive over single-pair sub-schedules.
TEST(ValidateScheduleProperty, OverlapMatchesPairwiseOracleAndWelfareIsAdditive) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Instance inst = fixtures::random_instance(seed, 3, 6, 12);
    Rng rng(derive_seed(seed, 5));
    Schedule s;
    std::vector<bool> used(inst.buyers().size(), false);
    for (const auto& b : inst.buyers()) {
      if (rng.uniform_int(0, 3) == 0) continue;
      const auto& e = b.entries[rng.index(b.entries.size())];
      const auto& sel = inst.seller(e.seller);
      const TimeSlot lo = std::max(e.arrival, sel.service_start);
      const TimeSlot hi = std::min(e.departure, sel.service_end) - e.duration;
      if (hi < lo) continue;
      s.assign(b.id, e.seller, static_cast<TimeSlot>(rng.uniform_int(lo, hi)));
    }
    const auto report = validate_schedule(inst, s);
    ASSERT_EQ(report.violates(Constraint::seller_overlap), oracles::brute_force_overlap(inst, s)) << "seed " << seed;
    if (report.ok()) {
      Money sum(0);
      for (const auto& a : s.allocations()) sum += social_welfare(inst, one(a.buyer, a.seller, a.start));
      ASSERT_EQ(social_welfare(inst, s), sum);
    }
  }
}
