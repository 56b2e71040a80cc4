#include "pida/auction.hpp"

#include <cmath>
#include <stdexcept>

#include "pida/rng.hpp"

namespace pida {

void AuctionConfig::validate() const {
  if (!(b_min < a_max)) throw std::invalid_argument("b_min must be below a_max");
  if (b_min.is_negative()) throw std::invalid_argument("b_min must be non-negative");
  if (epsilon <= Money(0)) throw std::invalid_argument("epsilon must be positive");
  if (w <= Money(0) || w > Money(1)) throw std::invalid_argument("w must lie in (0, 1]");
  if (max_rounds && *max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  if (wd_solver == SolverKind::sa) {
    if (sa.iterations < 1 || sa.permutations < 1) throw std::invalid_argument("SA iterations/permutations must be >= 1");
    if (!(sa.cooling_factor > 0.0 && sa.cooling_factor < 1.0)) throw std::invalid_argument("SA cooling factor must lie in (0, 1)");
  }
}

std::int32_t AuctionConfig::round_cap() const {
  if (max_rounds) return *max_rounds;
  const Money walk = Money(10) * (a_max - b_min) / (w * epsilon);
  const std::int64_t q = walk.numerator() / walk.denominator();
  return static_cast<std::int32_t>(walk.numerator() % walk.denominator() == 0 ? q : q + 1);
}

std::string to_string(Termination t) { return t == Termination::t1 ? "T1" : "round-cap"; }

RoundMarket RoundRecord::market(TimeSlot horizon) const {
  RoundMarket m;
  m.asks = asks;
  m.horizon = horizon;
  for (const auto& g : groups) {
    if (!g.bids.empty()) m.groups.push_back(g);
  }
  return m;
}

bool check_termination(const RoundRecord& previous, const std::vector<Ask>& asks,
                       const std::vector<XorGroup>& groups) {
  return previous.asks == asks && previous.groups == groups;
}

Settlement settle(const RoundRecord& final_round, const Instance& instance) {
  Settlement s;
  s.payments.assign(instance.buyers().size(), Money(0));
  s.buyer_utilities.assign(instance.buyers().size(), Money(0));
  s.reimbursements.assign(instance.sellers().size(), Money(0));
  s.seller_utilities.assign(instance.sellers().size(), Money(0));
  for (const auto& a : final_round.provisional.allocations()) {
    const Bid* bid = nullptr;
    for (const auto& g : final_round.groups) {
      if (g.buyer != a.buyer) continue;
      for (const auto& b : g.bids) {
        if (b.seller == a.seller) bid = &b;
      }
    }
    if (bid == nullptr) throw StructuralError("final schedule allocates a pair without a final bid");
    const auto* truth = instance.entry(a.buyer, a.seller);
    if (truth == nullptr) throw StructuralError("final schedule allocates a pair absent from the instance");
    const Money payment = bid->total();
    s.trades.push_back({a.buyer, a.seller, a.start, bid->duration, bid->unit_price, payment});
    const auto n = static_cast<std::size_t>(a.buyer);
    const auto m = static_cast<std::size_t>(a.seller);
    s.payments[n] += payment;
    s.buyer_utilities[n] += truth->value - payment;
    s.reimbursements[m] += payment;
    s.seller_utilities[m] += payment - Money(bid->duration) * instance.seller(a.seller).unit_cost;
  }
  return s;
}

namespace {

// Auctioneer side: sees reports only.
WdSolution determine_winners(const RoundMarket& market, const AuctionConfig& config, std::int32_t round) {
  const std::uint64_t round_seed = derive_seed(config.seed, 0xA0C7, static_cast<std::uint64_t>(round));
  if (config.wd_solver == SolverKind::sa) {
    SaParams p = config.sa;
    p.seed = round_seed;
    return solve_sa(market, p);
  }
  return solve_exact(market, config.tie_break, round_seed);
}

}  // namespace

AuctionOutcome run_auction(const Instance& instance, const AuctionConfig& config, const ReportedTypes* reports,
                           const RoundObserver& observer) {
  config.validate();
  const std::int32_t cap = config.round_cap();

  std::vector<BuyerAgentState> buyers;
  for (const auto& b : instance.buyers()) {
    const std::map<SellerId, ReportedWindow>* r = nullptr;
    if (reports != nullptr) {
      if (auto it = reports->buyer_windows.find(b.id); it != reports->buyer_windows.end()) r = &it->second;
    }
    buyers.push_back(make_buyer(b, config.strategy, config.b_min,
                                derive_seed(config.seed, 0xB0, static_cast<std::uint64_t>(b.id)), r));
  }
  std::vector<SellerAgentState> sellers;
  for (const auto& s : instance.sellers()) {
    std::optional<std::pair<TimeSlot, TimeSlot>> window;
    if (reports != nullptr) {
      if (auto it = reports->seller_windows.find(s.id); it != reports->seller_windows.end()) window = it->second;
    }
    sellers.push_back(make_seller(s, config.a_max, window));
  }
  if (reports != nullptr) {
    for (const auto& [m, w] : reports->seller_windows) instance.seller(m);
    for (const auto& [n, w] : reports->buyer_windows) instance.buyer(n);
  }

  AuctionOutcome outcome;
  for (std::int32_t t = 1;; ++t) {
    if (t > 1) {
      const RoundRecord& last = outcome.trace.back();
      std::vector<std::vector<Interval>> booked(sellers.size());
      for (const auto& a : last.provisional.allocations()) {
        const Bid* bid = nullptr;
        for (const auto& b : last.groups[static_cast<std::size_t>(a.buyer)].bids) {
          if (b.seller == a.seller) bid = &b;
        }
        booked[static_cast<std::size_t>(a.seller)].push_back({a.start, a.start + bid->duration});
      }
      for (auto& b : buyers) b = buyer_update_prices(std::move(b), last.provisional, config.epsilon, config.w);
      for (std::size_t m = 0; m < sellers.size(); ++m) {
        sellers[m] = seller_update_price(std::move(sellers[m]), booked[m], config.epsilon, config.w);
      }
    }

    std::vector<XorGroup> groups;
    groups.reserve(buyers.size());
    for (auto& b : buyers) {
      XorGroup g = buyer_submission(b);
      b = buyer_commit(std::move(b), g);
      groups.push_back(std::move(g));
    }
    std::vector<Ask> asks;
    asks.reserve(sellers.size());
    for (const auto& s : sellers) asks.push_back(make_ask(s));

    if (t > 1 && check_termination(outcome.trace.back(), asks, groups)) {
      outcome.terminated_by = Termination::t1;
      break;
    }
    if (t > cap) {
      outcome.terminated_by = Termination::round_cap;
      break;
    }

    RoundRecord record;
    record.round = t;
    record.asks = std::move(asks);
    record.groups = std::move(groups);
    const WdSolution sol = determine_winners(record.market(instance.horizon()), config, t);
    record.provisional = sol.schedule;
    record.objective = sol.objective;
    record.trades = sol.trade_count;
    for (const auto& b : buyers) record.buyer_frozen.emplace_back(b.frozen.begin(), b.frozen.end());
    for (const auto& s : sellers) record.seller_frozen.push_back(s.frozen);
    if (observer) observer(record);
    outcome.trace.push_back(std::move(record));
  }

  const RoundRecord& final_round = outcome.trace.back();
  outcome.rounds = static_cast<std::int32_t>(outcome.trace.size());
  outcome.final_schedule = final_round.provisional;
  outcome.settlement = settle(final_round, instance);
  return outcome;
}

}  // namespace pida
