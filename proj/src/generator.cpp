#include "pida/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pida/rng.hpp"

namespace pida {
namespace {

std::int64_t grid_points(const Money& lo, const Money& hi, const Money& step) {
  const Money n = (hi - lo) / step;
  return n.numerator() / n.denominator() + 1;
}

Money draw_grid(Rng& rng, const Money& lo, const Money& hi, const Money& step) {
  return lo + step * Money(rng.uniform_int(0, grid_points(lo, hi, step) - 1));
}

bool in_peak(const GeneratorConfig& c, TimeSlot t) {
  return std::any_of(c.peaks.begin(), c.peaks.end(), [t](const SlotRange& p) { return p.first <= t && t < p.last; });
}

}  // namespace

std::int32_t GeneratorConfig::max_duration_slots() const {
  return battery_kwh * 60 / (charge_rate_kw * slot_minutes);
}

void GeneratorConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("generator: " + what); };
  if (n_sellers < 1) fail("need at least one seller");
  if (n_buyers < 0) fail("buyer count must be non-negative");
  if (horizon < 1 || slot_minutes < 1) fail("horizon and slot length must be positive");
  if (seller_start_last < 0 || seller_start_last + min_service_slots > horizon) fail("seller start range leaves no room");
  if (min_service_slots < 1) fail("minimum service length must be positive");
  if (cost_step <= Money(0) || cost_max < cost_min || cost_min.is_negative()) fail("empty cost grid");
  if (unit_value_step <= Money(0) || unit_value_max < unit_value_min || unit_value_min.is_negative())
    fail("empty unit value grid");
  if (arrival_last < 0 || arrival_last >= horizon) fail("arrival range outside horizon");
  if (min_stay_slots < 1 || max_stay_slots < min_stay_slots) fail("empty stay range");
  if (min_duration_slots < 1 || battery_kwh < 1 || charge_rate_kw < 1 || max_duration_slots() < min_duration_slots)
    fail("empty duration range");
  if (peak_fraction < 0.0 || peak_fraction * static_cast<double>(peaks.size()) > 1.0) fail("peak shares exceed one");
  for (const auto& p : peaks) {
    if (p.first < 0 || p.last <= p.first || p.last > arrival_last + 1) fail("peak window outside arrival range");
  }
  if (bids_fraction < 0.0) fail("bids fraction must be non-negative");
  if (max_redraws < 0) fail("redraw bound must be non-negative");
  if (off_peak == OffPeakArrivals::outside_peaks) {
    bool any = false;
    for (TimeSlot t = 0; t <= arrival_last; ++t) any = any || !in_peak(*this, t);
    if (!any) fail("peaks cover every arrival slot");
  }
}

Instance generate_instance(const GeneratorConfig& config, std::vector<std::string>* warnings) {
  config.validate();
  Rng rng(derive_seed(config.seed, 0x6E4E));

  std::vector<SellerProfile> sellers;
  for (SellerId m = 0; m < config.n_sellers; ++m) {
    SellerProfile s;
    s.id = m;
    s.location = {config.latitude + config.location_spread * (2.0 * rng.uniform01() - 1.0),
                  config.longitude + config.location_spread * (2.0 * rng.uniform01() - 1.0)};
    s.service_start = static_cast<TimeSlot>(rng.uniform_int(0, config.seller_start_last));
    const auto units = rng.uniform_int(config.min_service_slots, config.horizon - s.service_start);
    s.service_end = s.service_start + static_cast<TimeSlot>(units);
    s.unit_cost = draw_grid(rng, config.cost_min, config.cost_max, config.cost_step);
    sellers.push_back(s);
  }

  // Arrival class per buyer: peak index, or -1 for off-peak.
  const auto per_peak = static_cast<std::int32_t>(std::lround(config.peak_fraction * config.n_buyers));
  std::vector<std::int32_t> arrival_class(static_cast<std::size_t>(config.n_buyers), -1);
  {
    std::size_t next = 0;
    for (std::size_t p = 0; p < config.peaks.size(); ++p) {
      for (std::int32_t k = 0; k < per_peak && next < arrival_class.size(); ++k) {
        arrival_class[next++] = static_cast<std::int32_t>(p);
      }
    }
    rng.shuffle(arrival_class);
  }
  std::vector<TimeSlot> off_peak_slots;
  for (TimeSlot t = 0; t <= config.arrival_last; ++t) {
    if (config.off_peak == OffPeakArrivals::whole_horizon || !in_peak(config, t)) off_peak_slots.push_back(t);
  }

  const auto max_bids =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(config.bids_fraction * config.n_sellers)));
  std::vector<SellerId> seller_ids(sellers.size());
  for (std::size_t m = 0; m < seller_ids.size(); ++m) seller_ids[m] = static_cast<SellerId>(m);

  std::vector<BuyerProfile> buyers;
  for (BuyerId n = 0; n < config.n_buyers; ++n) {
    BuyerProfile b;
    b.id = n;
    const std::int32_t cls = arrival_class[static_cast<std::size_t>(n)];
    for (std::int32_t attempt = 0; attempt <= config.max_redraws && b.entries.empty(); ++attempt) {
      TimeSlot a;
      if (cls >= 0) {
        const auto& p = config.peaks[static_cast<std::size_t>(cls)];
        a = static_cast<TimeSlot>(rng.uniform_int(p.first, p.last - 1));
      } else {
        a = off_peak_slots[rng.index(off_peak_slots.size())];
      }
      const TimeSlot d_hi = std::min(a + config.max_stay_slots, config.horizon);
      if (a + config.min_stay_slots > d_hi) continue;
      const auto d = static_cast<TimeSlot>(rng.uniform_int(a + config.min_stay_slots, d_hi));
      const auto r_hi = std::min(d - a, config.max_duration_slots());
      if (r_hi < config.min_duration_slots) continue;
      const auto r = static_cast<std::int32_t>(rng.uniform_int(config.min_duration_slots, r_hi));

      std::vector<SellerId> targets = seller_ids;
      rng.shuffle(targets);
      targets.resize(static_cast<std::size_t>(rng.uniform_int(1, std::min<std::int64_t>(max_bids, config.n_sellers))));
      std::sort(targets.begin(), targets.end());
      for (SellerId m : targets) {
        const auto& s = sellers[static_cast<std::size_t>(m)];
        const Money unit_value = draw_grid(rng, config.unit_value_min, config.unit_value_max, config.unit_value_step);
        const TimeSlot dm = std::min(d, s.service_end);
        if (std::max(a, s.service_start) + r > dm) continue;
        b.entries.push_back({n, m, a, dm, r, unit_value * Money(r)});
      }
    }
    if (b.entries.empty()) {
      if (warnings != nullptr) {
        warnings->push_back("buyer draw " + std::to_string(n) + " dropped: no feasible seller after " +
                            std::to_string(config.max_redraws) + " redraws");
      }
      continue;
    }
    // Ids stay dense when a draw is dropped.
    b.id = static_cast<BuyerId>(buyers.size());
    for (auto& e : b.entries) e.buyer = b.id;
    buyers.push_back(std::move(b));
  }
  return Instance(std::move(sellers), std::move(buyers), config.horizon, config.slot_minutes, config.origin_minutes);
}

const std::vector<GroupShape>& standard_groups() {
  static const std::vector<GroupShape> groups = [] {
    std::vector<GroupShape> g;
    std::int32_t id = 1;
    for (std::int32_t sellers : {4, 5, 6}) {
      for (std::int32_t buyers : {5, 10, 15, 20}) g.push_back({id++, sellers, buyers, 10});
    }
    for (std::int32_t buyers : {50, 100, 150}) g.push_back({id++, 20, buyers, 10});
    return g;
  }();
  return groups;
}

const GroupShape& standard_group(std::int32_t group) {
  if (group < 1 || group > static_cast<std::int32_t>(standard_groups().size())) {
    throw std::invalid_argument("unknown group " + std::to_string(group));
  }
  return standard_groups()[static_cast<std::size_t>(group - 1)];
}

}  // namespace pida
