#include "market_index.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pida {

const Ask* RoundMarket::ask(SellerId seller) const {
  for (const auto& a : asks) {
    if (a.seller == seller) return &a;
  }
  return nullptr;
}

void RoundMarket::validate() const {
  std::set<SellerId> sellers;
  for (const auto& a : asks) {
    if (!sellers.insert(a.seller).second)
      throw StructuralError("duplicate ask for seller " + std::to_string(a.seller));
    if (a.start >= a.end) throw StructuralError("ask window is empty for seller " + std::to_string(a.seller));
    if (a.unit_price.is_negative()) throw StructuralError("negative ask price");
  }
  std::set<BuyerId> buyers;
  for (const auto& g : groups) {
    if (!buyers.insert(g.buyer).second)
      throw StructuralError("buyer " + std::to_string(g.buyer) + " submitted two groups");
    std::set<SellerId> targets;
    for (const auto& b : g.bids) {
      if (b.buyer != g.buyer) throw StructuralError("bid inside another buyer's group");
      if (!sellers.count(b.seller))
        throw StructuralError("bid on seller " + std::to_string(b.seller) + " without an ask");
      if (!targets.insert(b.seller).second)
        throw StructuralError("buyer " + std::to_string(g.buyer) + " bid twice on one seller");
      if (b.duration < 1 || b.arrival + b.duration > b.departure)
        throw StructuralError("malformed bid window");
      if (b.unit_price.is_negative()) throw StructuralError("negative bid price");
    }
  }
}

RoundPrices RoundMarket::prices() const {
  RoundPrices p;
  for (const auto& a : asks) p.ask_unit[a.seller] = a.unit_price;
  for (const auto& g : groups) {
    for (const auto& b : g.bids) p.bid_unit[{b.buyer, b.seller}] = b.unit_price;
  }
  return p;
}

std::vector<TimeSlot> enumerate_candidate_starts(const Ask& ask, const Bid& bid) {
  std::vector<TimeSlot> out;
  const TimeSlot first = std::max(bid.arrival, ask.start);
  const TimeSlot last = std::min(bid.departure, ask.end) - bid.duration;
  for (TimeSlot t = first; t <= last; ++t) out.push_back(t);
  return out;
}

namespace detail {

namespace {

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  __int128 r = static_cast<__int128>(a / g) * b;
  if (r > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("price denominators too large");
  return static_cast<std::int64_t>(r);
}

std::int64_t scaled(const Money& m, std::int64_t scale) {
  __int128 v = static_cast<__int128>(m.numerator()) * (scale / m.denominator());
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("scaled surplus overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace

IndexedMarket index_market(const RoundMarket& market) {
  market.validate();
  IndexedMarket out;

  std::vector<const Ask*> asks;
  for (const auto& a : market.asks) asks.push_back(&a);
  std::sort(asks.begin(), asks.end(), [](const Ask* x, const Ask* y) { return x->seller < y->seller; });
  std::map<SellerId, std::size_t> seller_index;
  for (const Ask* a : asks) {
    seller_index[a->seller] = out.sellers.size();
    out.sellers.push_back(a->seller);
    out.seller_start.push_back(a->start);
    out.seller_end.push_back(a->end);
  }
  out.seller_bids.resize(out.sellers.size());

  std::vector<const XorGroup*> groups;
  for (const auto& g : market.groups) groups.push_back(&g);
  std::sort(groups.begin(), groups.end(),
            [](const XorGroup* x, const XorGroup* y) { return x->buyer < y->buyer; });

  struct Pending {
    IndexedBid bid;
    Money surplus;
  };
  std::vector<Pending> pending;
  std::int64_t scale = 1;
  for (const XorGroup* g : groups) {
    const std::size_t gi = out.group_buyer.size();
    out.group_buyer.push_back(g->buyer);
    for (std::size_t k = 0; k < g->bids.size(); ++k) {
      const Bid& b = g->bids[k];
      const std::size_t si = seller_index.at(b.seller);
      const Ask& a = *asks[si];
      if (b.unit_price < a.unit_price) continue;
      auto starts = enumerate_candidate_starts(a, b);
      if (starts.empty()) continue;
      IndexedBid ib;
      ib.group = gi;
      ib.member = k;
      ib.buyer = b.buyer;
      ib.seller = b.seller;
      ib.seller_index = si;
      ib.release = starts.front();
      ib.deadline = starts.back() + b.duration;
      ib.duration = b.duration;
      ib.starts = std::move(starts);
      Money surplus = Money(b.duration) * (b.unit_price - a.unit_price);
      scale = checked_lcm(scale, surplus.denominator());
      pending.push_back({std::move(ib), surplus});
    }
  }
  out.scale = scale;
  out.group_bids.resize(out.group_buyer.size());
  for (auto& p : pending) {
    p.bid.surplus = scaled(p.surplus, scale);
    const std::size_t idx = out.bids.size();
    p.bid.local = out.seller_bids[p.bid.seller_index].size();
    out.seller_bids[p.bid.seller_index].push_back(idx);
    out.group_bids[p.bid.group].push_back(idx);
    out.bids.push_back(std::move(p.bid));
  }
  for (auto& gb : out.group_bids) {
    std::sort(gb.begin(), gb.end(), [&](std::size_t x, std::size_t y) {
      return out.bids[x].seller < out.bids[y].seller;
    });
  }
  return out;
}

WdSolution make_solution(const IndexedMarket& market, const std::vector<Placement>& placements,
                         SolverKind solver, std::uint64_t seed) {
  WdSolution sol;
  sol.solver = solver;
  sol.seed_used = seed;
  std::int64_t total = 0;
  for (const auto& p : placements) {
    const auto& b = market.bids[p.bid];
    sol.schedule.assign(b.buyer, b.seller, p.start);
    total += b.surplus;
  }
  sol.objective = market.to_money(total);
  sol.trade_count = static_cast<std::int32_t>(placements.size());
  return sol;
}

}  // namespace detail

FeasibilityReport validate_market_schedule(const RoundMarket& market, const Schedule& schedule) {
  FeasibilityReport report;
  std::map<std::pair<BuyerId, SellerId>, const Bid*> bids;
  for (const auto& g : market.groups) {
    for (const auto& b : g.bids) bids[{b.buyer, b.seller}] = &b;
  }
  auto add = [&](Constraint c, BuyerId n, SellerId m, std::string detail,
                 std::optional<BuyerId> other = std::nullopt) {
    report.violations.push_back({c, n, m, other, std::move(detail)});
  };
  const auto allocs = schedule.allocations();
  std::map<SellerId, std::vector<std::pair<TimeSlot, const Allocation*>>> by_seller;
  for (const auto& a : allocs) {
    auto it = bids.find({a.buyer, a.seller});
    const Ask* ask = market.ask(a.seller);
    if (it == bids.end() || ask == nullptr)
      throw StructuralError("allocation of buyer " + std::to_string(a.buyer) + " to seller " +
                            std::to_string(a.seller) + " has no submitted bid");
    const Bid& b = *it->second;
    if (a.start < b.arrival) add(Constraint::arrival, a.buyer, a.seller, "start before reported arrival");
    if (a.start + b.duration > b.departure)
      add(Constraint::departure, a.buyer, a.seller, "finish after reported departure");
    if (a.start < ask->start || a.start + b.duration > ask->end)
      add(Constraint::service_window, a.buyer, a.seller, "outside the ask window");
    if (b.unit_price < ask->unit_price)
      add(Constraint::value_covers_cost, a.buyer, a.seller, "bid below ask");
    by_seller[a.seller].push_back({a.start, &a});
  }
  for (std::size_t i = 1; i < allocs.size(); ++i) {
    if (allocs[i].buyer == allocs[i - 1].buyer)
      add(Constraint::single_allocation, allocs[i].buyer, allocs[i].seller, "two members of one XOR group");
  }
  for (auto& [m, jobs] : by_seller) {
    std::sort(jobs.begin(), jobs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    TimeSlot reach = std::numeric_limits<TimeSlot>::min();
    BuyerId reach_buyer = 0;
    for (const auto& [start, a] : jobs) {
      const TimeSlot end = start + bids.at({a->buyer, m})->duration;
      if (start < reach) add(Constraint::seller_overlap, a->buyer, m, "overlap on seller", reach_buyer);
      if (end > reach) {
        reach = end;
        reach_buyer = a->buyer;
      }
    }
  }
  return report;
}

Money market_objective(const RoundMarket& market, const Schedule& schedule) {
  Money total;
  for (const auto& a : schedule.allocations()) {
    const Ask* ask = market.ask(a.seller);
    const Bid* bid = nullptr;
    for (const auto& g : market.groups) {
      if (g.buyer != a.buyer) continue;
      for (const auto& b : g.bids) {
        if (b.seller == a.seller) bid = &b;
      }
    }
    if (ask == nullptr || bid == nullptr) throw StructuralError("allocation without a submitted bid");
    total += Money(bid->duration) * (bid->unit_price - ask->unit_price);
  }
  return total;
}

RoundMarket truthful_market(const Instance& instance) {
  RoundMarket market;
  market.horizon = instance.horizon();
  for (const auto& s : instance.sellers()) {
    market.asks.push_back({s.id, s.service_start, s.service_end, s.unit_cost});
  }
  for (const auto& b : instance.buyers()) {
    XorGroup g{b.id, {}};
    for (const auto& e : b.entries) {
      g.bids.push_back({b.id, e.seller, e.arrival, e.departure, e.duration, e.value / Money(e.duration)});
    }
    market.groups.push_back(std::move(g));
  }
  return market;
}

}  // namespace pida
