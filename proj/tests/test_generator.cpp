#include <gtest/gtest.h>

#include <cmath>

#include "pida/generator.hpp"

using namespace pida;

namespace {

bool in_peak(const GeneratorConfig& c, TimeSlot t) {
  for (const auto& p : c.peaks) {
    if (t >= p.first && t < p.last) return true;
  }
  return false;
}

bool on_grid(const Money& x, const Money& lo, const Money& hi, const Money& step) {
  if (x < lo || x > hi) return false;
  const Money k = (x - lo) / step;
  return k.denominator() == 1;
}

}  // namespace

TEST(Generator, ChargeLengthBound) {
  // 80 kWh at 10 kW is 8 hours, 16 half-hour slots.
  EXPECT_EQ(GeneratorConfig{}.max_duration_slots(), 16);
}

TEST(Generator, SeedReplayIsIdentical) {
  GeneratorConfig c;
  c.n_sellers = 6;
  c.n_buyers = 20;
  c.seed = 1234;
  EXPECT_EQ(generate_instance(c), generate_instance(c));
  c.seed = 1235;
  EXPECT_NE(generate_instance(c), generate_instance(GeneratorConfig{c.n_sellers, c.n_buyers, 1234}));
}

TEST(Generator, StandardGroups) {
  const auto& groups = standard_groups();
  ASSERT_EQ(groups.size(), 15u);
  EXPECT_EQ(standard_group(1).sellers, 4);
  EXPECT_EQ(standard_group(1).buyers, 5);
  EXPECT_EQ(standard_group(1).instances, 10);
  for (std::int32_t g = 1; g <= 12; ++g) {
    EXPECT_GE(standard_group(g).sellers, 4);
    EXPECT_LE(standard_group(g).sellers, 6);
    EXPECT_LE(standard_group(g).buyers, 20);
  }
  EXPECT_EQ(standard_group(13).sellers, 20);
  EXPECT_EQ(standard_group(13).buyers, 50);
  EXPECT_EQ(standard_group(14).buyers, 100);
  EXPECT_EQ(standard_group(15).buyers, 150);
  EXPECT_THROW(standard_group(0), std::invalid_argument);
  EXPECT_THROW(standard_group(16), std::invalid_argument);
}

TEST(Generator, RejectsBadConfigs) {
  GeneratorConfig c;
  c.peak_fraction = 0.4;  // three peaks at 40% each
  EXPECT_THROW(generate_instance(c), std::invalid_argument);
  c = {};
  c.peaks = {{28, 34}};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.cost_min = Money(3);
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

// Property: every generated market respects the drawing ranges and instance
// invariants, with exactly round(0.2 N) arrivals inside each peak window when
// no buyer was dropped.
TEST(GeneratorProperty, RangesAndPeakShares) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto& shape = standard_groups()[seed % 15];
    GeneratorConfig c;
    c.n_sellers = shape.sellers;
    c.n_buyers = shape.buyers;
    c.seed = seed;
    std::vector<std::string> warnings;
    const Instance inst = generate_instance(c, &warnings);
    ASSERT_EQ(inst.sellers().size(), static_cast<std::size_t>(shape.sellers));
    ASSERT_EQ(inst.buyers().size() + warnings.size(), static_cast<std::size_t>(shape.buyers));
    for (const auto& s : inst.sellers()) {
      ASSERT_GE(s.service_start, 0);
      ASSERT_LE(s.service_start, 14);
      ASSERT_GE(s.service_end - s.service_start, 16);
      ASSERT_LE(s.service_end, 30);
      ASSERT_TRUE(on_grid(s.unit_cost, Money(1), Money(5, 2), Money(1, 10))) << s.unit_cost.to_string();
    }
    std::vector<std::int32_t> per_peak(c.peaks.size(), 0);
    const auto max_bids = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(0.4 * shape.sellers)));
    for (const auto& b : inst.buyers()) {
      ASSERT_FALSE(b.entries.empty());
      ASSERT_LE(b.entries.size(), max_bids);
      const TimeSlot a = b.entries.front().arrival;
      const std::int32_t r = b.entries.front().duration;
      for (const auto& e : b.entries) {
        ASSERT_EQ(e.arrival, a);
        ASSERT_EQ(e.duration, r);
        ASSERT_LE(e.arrival + e.duration, e.departure);
        ASSERT_GE(e.duration, 2);
        ASSERT_LE(e.duration, 16);
        ASSERT_LE(e.departure - e.arrival, 16);
        ASSERT_LE(e.departure, inst.seller(e.seller).service_end);
        ASSERT_TRUE(on_grid(e.value / Money(e.duration), Money(1, 10), Money(5), Money(1, 10)));
      }
      for (std::size_t p = 0; p < c.peaks.size(); ++p) {
        if (a >= c.peaks[p].first && a < c.peaks[p].last) ++per_peak[p];
      }
    }
    if (warnings.empty()) {
      const auto expected = static_cast<std::int32_t>(std::lround(0.2 * shape.buyers));
      for (std::int32_t k : per_peak) ASSERT_EQ(k, expected) << seed;
    }
  }
}

TEST(GeneratorProperty, WholeHorizonOffPeakReachesPeaks) {
  GeneratorConfig c;
  c.n_sellers = 6;
  c.n_buyers = 20;
  c.off_peak = OffPeakArrivals::whole_horizon;
  std::int32_t in_peaks = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    c.seed = seed;
    const Instance inst = generate_instance(c);
    for (const auto& b : inst.buyers()) {
      ++total;
      if (in_peak(c, b.entries.front().arrival)) ++in_peaks;
    }
  }
  // 60% forced plus a share of the uniform remainder lands in peaks too.
  EXPECT_GT(static_cast<double>(in_peaks) / total, 0.62);
}

// Chi-square check that seller start slots are uniform over 0..14.
TEST(GeneratorProperty, SellerStartsUniform) {
  std::vector<double> counts(15, 0.0);
  double n = 0;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    GeneratorConfig c;
    c.n_sellers = 5;
    c.n_buyers = 1;
    c.seed = seed;
    for (const auto& s : generate_instance(c).sellers()) {
      counts[static_cast<std::size_t>(s.service_start)] += 1;
      n += 1;
    }
  }
  double chi2 = 0;
  for (double k : counts) chi2 += (k - n / 15) * (k - n / 15) / (n / 15);
  EXPECT_LT(chi2, 36.12);  // 14 degrees of freedom, p = 0.001
}
