#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>

#include "pida/money.hpp"

using pida::Money;

TEST(Money, ParsesDecimalsAndFractions) {
  EXPECT_EQ(Money::parse("1.5"), Money(3, 2));
  EXPECT_EQ(Money::parse("-0.25"), Money(-1, 4));
  EXPECT_EQ(Money::parse("3/4"), Money(3, 4));
  EXPECT_EQ(Money::parse("7"), Money(7));
  EXPECT_THROW(Money::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Money::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Money::parse(""), std::invalid_argument);
}

TEST(Money, FormatsTerminatingFractionsAsDecimals) {
  EXPECT_EQ(Money(3, 2).to_string(), "1.5");
  EXPECT_EQ(Money(-1, 4).to_string(), "-0.25");
  EXPECT_EQ(Money(4).to_string(), "4");
  EXPECT_EQ(Money(1, 3).to_string(), "1/3");
  std::ostringstream os;
  os << Money(21, 5);
  EXPECT_EQ(os.str(), "4.2");
}

TEST(Money, ArithmeticIsExact) {
  Money sum(0);
  for (int i = 0; i < 10; ++i) sum += Money(1, 10);
  EXPECT_EQ(sum, Money(1));
  EXPECT_EQ(Money(3) * Money::parse("1.4"), Money::parse("4.2"));
  EXPECT_EQ(Money(5) / Money(3) - Money(1), Money(2, 3));
  EXPECT_EQ(Money(2, 4).denominator(), 2);
  EXPECT_EQ(Money(1, -2), Money(-1, 2));
}

TEST(Money, OrdersByValue) {
  EXPECT_LT(Money(1, 3), Money(1, 2));
  EXPECT_GT(Money::parse("0.67"), Money(2, 3));
  EXPECT_EQ(pida::min(Money(1), Money(2)), Money(1));
  EXPECT_EQ(pida::max(Money(1), Money(2)), Money(2));
  EXPECT_TRUE(Money(-1, 5).is_negative());
  EXPECT_TRUE(Money(0).is_zero());
}

TEST(Money, OverflowIsReported) {
  const Money big(INT64_MAX / 2);
  EXPECT_THROW(big * Money(4), std::overflow_error);
  EXPECT_THROW(Money(1, 0), std::domain_error);
}
