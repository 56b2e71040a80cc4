#include "io.hpp"

#include <cstdio>
#include <map>
#include <set>

namespace pida::io {
namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where + ": missing '" + key + "'");
  return *it;
}

std::int64_t integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + ": expected an integer");
  return j.get<std::int64_t>();
}

std::int32_t int32(const json& j, const std::string& what) {
  const auto v = integer(j, what);
  if (v < INT32_MIN || v > INT32_MAX) bad(what + ": out of range");
  return static_cast<std::int32_t>(v);
}

std::uint64_t seed_from(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) bad(what + ": seeds are non-negative");
    return static_cast<std::uint64_t>(v);
  }
  bad(what + ": expected a non-negative integer");
}

double real(const json& j, const std::string& what) {
  if (!j.is_number()) bad(what + ": expected a number");
  return j.get<double>();
}

std::string text(const json& j, const std::string& what) {
  if (!j.is_string()) bad(what + ": expected a string");
  return j.get<std::string>();
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) bad(where + ": expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) bad(where + ": unknown key '" + it.key() + "'");
  }
}

json allocation_json(const Allocation& a) { return {{"buyer", a.buyer}, {"seller", a.seller}, {"start", a.start}}; }

std::string strategy_name(Strategy s) { return to_string(s); }

std::string solver_name(SolverKind k) { return k == SolverKind::exact ? "exact" : "sa"; }

SolverKind parse_solver(const std::string& s) {
  if (s == "exact") return SolverKind::exact;
  if (s == "sa") return SolverKind::sa;
  bad("unknown winner-determination solver '" + s + "'");
}

std::string tie_break_name(TieBreak t) { return t == TieBreak::deterministic ? "deterministic" : "seeded"; }

TieBreak parse_tie_break(const std::string& s) {
  if (s == "deterministic") return TieBreak::deterministic;
  if (s == "seeded" || s == "seeded-random") return TieBreak::seeded_random;
  bad("unknown tie-break mode '" + s + "'");
}

json optional_double(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

json money_json(const Money& m) { return m.to_string(); }

Money money_from(const json& j, const std::string& what) {
  if (j.is_string()) {
    try {
      return Money::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      bad(what + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Money(j.get<std::int64_t>());
  bad(what + ": expected a decimal string");
}

json instance_to_json(const Instance& instance) {
  json sellers = json::array();
  for (const auto& s : instance.sellers()) {
    sellers.push_back({{"id", s.id},
                       {"lat", s.location.latitude},
                       {"lon", s.location.longitude},
                       {"s", s.service_start},
                       {"e", s.service_end},
                       {"c", money_json(s.unit_cost)}});
  }
  json buyers = json::array();
  for (const auto& b : instance.buyers()) {
    json entries = json::array();
    for (const auto& e : b.entries) {
      entries.push_back({{"seller", e.seller},
                         {"a", e.arrival},
                         {"d", e.departure},
                         {"r", e.duration},
                         {"v", money_json(e.value)}});
    }
    buyers.push_back({{"id", b.id}, {"entries", std::move(entries)}});
  }
  return {{"header",
           {{"format_version", kFormatVersion},
            {"horizon", instance.horizon()},
            {"slot_minutes", instance.slot_minutes()},
            {"origin_minutes", instance.origin_minutes()}}},
          {"sellers", std::move(sellers)},
          {"buyers", std::move(buyers)}};
}

Instance instance_from_json(const json& j) {
  const json& header = field(j, "header", "instance");
  const auto version = int32(field(header, "format_version", "header"), "format_version");
  if (version != kFormatVersion) bad("unsupported instance format_version " + std::to_string(version));
  const auto horizon = int32(field(header, "horizon", "header"), "horizon");
  const auto slot_minutes = header.contains("slot_minutes") ? int32(header["slot_minutes"], "slot_minutes") : 30;
  const auto origin = header.contains("origin_minutes") ? int32(header["origin_minutes"], "origin_minutes") : 420;

  const json& sj = field(j, "sellers", "instance");
  if (!sj.is_array()) bad("sellers: expected an array");
  std::vector<SellerProfile> sellers;
  for (std::size_t i = 0; i < sj.size(); ++i) {
    const std::string where = "sellers[" + std::to_string(i) + "]";
    const json& s = sj[i];
    SellerProfile p;
    p.id = int32(field(s, "id", where), where + ".id");
    if (s.contains("lat")) p.location.latitude = real(s["lat"], where + ".lat");
    if (s.contains("lon")) p.location.longitude = real(s["lon"], where + ".lon");
    p.service_start = int32(field(s, "s", where), where + ".s");
    p.service_end = int32(field(s, "e", where), where + ".e");
    p.unit_cost = money_from(field(s, "c", where), where + ".c");
    sellers.push_back(p);
  }

  const json& bj = field(j, "buyers", "instance");
  if (!bj.is_array()) bad("buyers: expected an array");
  std::vector<BuyerProfile> buyers;
  for (std::size_t i = 0; i < bj.size(); ++i) {
    const std::string where = "buyers[" + std::to_string(i) + "]";
    const json& b = bj[i];
    BuyerProfile p;
    p.id = int32(field(b, "id", where), where + ".id");
    const json& ej = field(b, "entries", where);
    if (!ej.is_array()) bad(where + ".entries: expected an array");
    for (std::size_t k = 0; k < ej.size(); ++k) {
      const std::string ew = where + ".entries[" + std::to_string(k) + "]";
      const json& e = ej[k];
      BuyerTypeEntry t;
      t.buyer = p.id;
      t.seller = int32(field(e, "seller", ew), ew + ".seller");
      t.arrival = int32(field(e, "a", ew), ew + ".a");
      t.departure = int32(field(e, "d", ew), ew + ".d");
      t.duration = int32(field(e, "r", ew), ew + ".r");
      t.value = money_from(field(e, "v", ew), ew + ".v");
      p.entries.push_back(t);
    }
    buyers.push_back(std::move(p));
  }
  return Instance(std::move(sellers), std::move(buyers), horizon, slot_minutes, origin);
}

std::string fingerprint(const Instance& instance) {
  const std::string canonical = instance_to_json(instance).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json schedule_to_json(const Schedule& schedule) {
  json out = json::array();
  for (const auto& a : schedule.allocations()) out.push_back(allocation_json(a));
  return out;
}

Schedule schedule_from_json(const json& j) {
  if (!j.is_array()) bad("schedule: expected an array");
  Schedule s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "schedule[" + std::to_string(i) + "]";
    s.assign(int32(field(j[i], "buyer", where), where + ".buyer"), int32(field(j[i], "seller", where), where + ".seller"),
             int32(field(j[i], "start", where), where + ".start"));
  }
  return s;
}

json config_to_json(const AuctionConfig& c) {
  json sa = {{"iterations", c.sa.iterations},
             {"permutations", c.sa.permutations},
             {"cooling_factor", c.sa.cooling_factor},
             {"initial_temperature", c.sa.initial_temperature ? json(*c.sa.initial_temperature) : json(nullptr)}};
  return {{"epsilon", money_json(c.epsilon)},
          {"w", money_json(c.w)},
          {"b_min", money_json(c.b_min)},
          {"a_max", money_json(c.a_max)},
          {"strategy", strategy_name(c.strategy)},
          {"wd", solver_name(c.wd_solver)},
          {"tie_break", tie_break_name(c.tie_break)},
          {"seed", c.seed},
          {"max_rounds", c.max_rounds ? json(*c.max_rounds) : json(nullptr)},
          {"round_cap", c.round_cap()},
          {"sa", std::move(sa)}};
}

AuctionConfig config_from_json(const json& j) {
  only_keys(j, {"epsilon", "w", "b_min", "a_max", "strategy", "wd", "tie_break", "seed", "max_rounds", "round_cap", "sa"},
            "config");
  AuctionConfig c;
  if (j.contains("epsilon")) c.epsilon = money_from(j["epsilon"], "config.epsilon");
  if (j.contains("w")) c.w = money_from(j["w"], "config.w");
  if (j.contains("b_min")) c.b_min = money_from(j["b_min"], "config.b_min");
  if (j.contains("a_max")) c.a_max = money_from(j["a_max"], "config.a_max");
  if (j.contains("strategy")) {
    try {
      c.strategy = parse_strategy(text(j["strategy"], "config.strategy"));
    } catch (const std::invalid_argument& e) {
      bad(std::string("config.strategy: ") + e.what());
    }
  }
  if (j.contains("wd")) c.wd_solver = parse_solver(text(j["wd"], "config.wd"));
  if (j.contains("tie_break")) c.tie_break = parse_tie_break(text(j["tie_break"], "config.tie_break"));
  if (j.contains("seed")) c.seed = seed_from(j["seed"], "config.seed");
  if (j.contains("max_rounds") && !j["max_rounds"].is_null()) c.max_rounds = int32(j["max_rounds"], "config.max_rounds");
  if (j.contains("sa")) {
    const json& sa = j["sa"];
    only_keys(sa, {"iterations", "permutations", "cooling_factor", "initial_temperature"}, "config.sa");
    if (sa.contains("iterations")) c.sa.iterations = int32(sa["iterations"], "config.sa.iterations");
    if (sa.contains("permutations")) c.sa.permutations = int32(sa["permutations"], "config.sa.permutations");
    if (sa.contains("cooling_factor")) c.sa.cooling_factor = real(sa["cooling_factor"], "config.sa.cooling_factor");
    if (sa.contains("initial_temperature") && !sa["initial_temperature"].is_null())
      c.sa.initial_temperature = real(sa["initial_temperature"], "config.sa.initial_temperature");
  }
  c.validate();
  if (j.contains("round_cap") && int32(j["round_cap"], "config.round_cap") != c.round_cap())
    bad("config.round_cap disagrees with the other fields");
  return c;
}

json generator_to_json(const GeneratorConfig& c) {
  json peaks = json::array();
  for (const auto& p : c.peaks) peaks.push_back({p.first, p.last});
  return {{"sellers", c.n_sellers},
          {"buyers", c.n_buyers},
          {"seed", c.seed},
          {"horizon", c.horizon},
          {"slot_minutes", c.slot_minutes},
          {"origin_minutes", c.origin_minutes},
          {"peaks", std::move(peaks)},
          {"peak_fraction", c.peak_fraction},
          {"off_peak", c.off_peak == OffPeakArrivals::outside_peaks ? "outside-peaks" : "whole-horizon"},
          {"bids_fraction", c.bids_fraction},
          {"battery_kwh", c.battery_kwh},
          {"charge_rate_kw", c.charge_rate_kw}};
}

GeneratorConfig generator_from_json(const json& j) {
  only_keys(j,
            {"sellers", "buyers", "seed", "group", "horizon", "slot_minutes", "origin_minutes", "peaks", "peak_fraction",
             "off_peak", "bids_fraction", "battery_kwh", "charge_rate_kw"},
            "generator");
  GeneratorConfig c;
  if (j.contains("group")) {
    try {
      const auto& g = standard_group(int32(j["group"], "generator.group"));
      c.n_sellers = g.sellers;
      c.n_buyers = g.buyers;
    } catch (const std::invalid_argument& e) {
      bad(e.what());
    }
  }
  if (j.contains("sellers")) c.n_sellers = int32(j["sellers"], "generator.sellers");
  if (j.contains("buyers")) c.n_buyers = int32(j["buyers"], "generator.buyers");
  if (j.contains("seed")) c.seed = seed_from(j["seed"], "generator.seed");
  if (j.contains("horizon")) c.horizon = int32(j["horizon"], "generator.horizon");
  if (j.contains("slot_minutes")) c.slot_minutes = int32(j["slot_minutes"], "generator.slot_minutes");
  if (j.contains("origin_minutes")) c.origin_minutes = int32(j["origin_minutes"], "generator.origin_minutes");
  if (j.contains("peaks")) {
    c.peaks.clear();
    if (!j["peaks"].is_array()) bad("generator.peaks: expected an array of [first, last) pairs");
    for (const auto& p : j["peaks"]) {
      if (!p.is_array() || p.size() != 2) bad("generator.peaks: expected [first, last) pairs");
      c.peaks.push_back({int32(p[0], "generator.peaks"), int32(p[1], "generator.peaks")});
    }
  }
  if (j.contains("peak_fraction")) c.peak_fraction = real(j["peak_fraction"], "generator.peak_fraction");
  if (j.contains("off_peak")) {
    const auto mode = text(j["off_peak"], "generator.off_peak");
    if (mode == "outside-peaks") c.off_peak = OffPeakArrivals::outside_peaks;
    else if (mode == "whole-horizon") c.off_peak = OffPeakArrivals::whole_horizon;
    else bad("generator.off_peak: expected 'outside-peaks' or 'whole-horizon'");
  }
  if (j.contains("bids_fraction")) c.bids_fraction = real(j["bids_fraction"], "generator.bids_fraction");
  if (j.contains("battery_kwh")) c.battery_kwh = int32(j["battery_kwh"], "generator.battery_kwh");
  if (j.contains("charge_rate_kw")) c.charge_rate_kw = int32(j["charge_rate_kw"], "generator.charge_rate_kw");
  c.validate();
  return c;
}

json round_to_json(const RoundRecord& r) {
  json asks = json::array();
  for (const auto& a : r.asks) {
    asks.push_back({{"seller", a.seller}, {"start", a.start}, {"end", a.end}, {"unit_price", money_json(a.unit_price)}});
  }
  json groups = json::array();
  for (const auto& g : r.groups) {
    json bids = json::array();
    for (const auto& b : g.bids) {
      bids.push_back({{"seller", b.seller},
                      {"arrival", b.arrival},
                      {"departure", b.departure},
                      {"duration", b.duration},
                      {"unit_price", money_json(b.unit_price)}});
    }
    groups.push_back({{"buyer", g.buyer}, {"bids", std::move(bids)}});
  }
  return {{"round", r.round},
          {"asks", std::move(asks)},
          {"groups", std::move(groups)},
          {"schedule", schedule_to_json(r.provisional)},
          {"objective", money_json(r.objective)},
          {"trades", r.trades},
          {"frozen_buyers", r.buyer_frozen},
          {"frozen_sellers", r.seller_frozen}};
}

json outcome_to_json(const AuctionOutcome& o, bool include_trace) {
  auto money_list = [](const std::vector<Money>& v) {
    json out = json::array();
    for (const auto& m : v) out.push_back(money_json(m));
    return out;
  };
  json trades = json::array();
  for (const auto& t : o.settlement.trades) {
    trades.push_back({{"buyer", t.buyer},
                      {"seller", t.seller},
                      {"start", t.start},
                      {"duration", t.duration},
                      {"unit_price", money_json(t.unit_price)},
                      {"payment", money_json(t.payment)}});
  }
  json out = {{"schedule", schedule_to_json(o.final_schedule)},
              {"trades", std::move(trades)},
              {"payments", money_list(o.settlement.payments)},
              {"reimbursements", money_list(o.settlement.reimbursements)},
              {"buyer_utilities", money_list(o.settlement.buyer_utilities)},
              {"seller_utilities", money_list(o.settlement.seller_utilities)},
              {"rounds", o.rounds},
              {"terminated_by", to_string(o.terminated_by)}};
  if (include_trace) {
    json trace = json::array();
    for (const auto& r : o.trace) trace.push_back(round_to_json(r));
    out["trace"] = std::move(trace);
  }
  return out;
}

json metrics_to_json(const MetricsReport& m, bool timing) {
  json out = {{"efficiency", optional_double(m.efficiency)},
              {"profit_ratio", optional_double(m.profit_ratio)},
              {"rounds", m.rounds},
              {"welfare_auction", money_json(m.welfare_auction)},
              {"welfare_optimal", m.welfare_optimal ? money_json(*m.welfare_optimal) : json(nullptr)},
              {"welfare_fcfs", money_json(m.welfare_fcfs)},
              {"welfare_greedy", money_json(m.welfare_greedy)},
              {"fcfs_efficiency", optional_double(m.fcfs_efficiency)},
              {"greedy_efficiency", optional_double(m.greedy_efficiency)}};
  if (timing) out["runtime_seconds"] = m.runtime_seconds;
  return out;
}

AuditReport audit_result(const Instance& instance, const json& result) {
  AuditReport report;
  auto issue = [&](std::string check, std::string detail, std::optional<std::string> constraint = std::nullopt) {
    report.issues.push_back({std::move(check), std::move(constraint), std::move(detail)});
  };

  if (result.contains("instance") && result["instance"].contains("fingerprint")) {
    const auto expected = text(result["instance"]["fingerprint"], "instance.fingerprint");
    if (expected != fingerprint(instance)) {
      issue("instance", "fingerprint " + expected + " does not match the supplied instance");
      return report;
    }
  }
  const json& outcome = field(result, "outcome", "result");
  const Schedule schedule = schedule_from_json(field(outcome, "schedule", "outcome"));

  FeasibilityReport feasibility;
  try {
    feasibility = validate_schedule(instance, schedule);
  } catch (const StructuralError& e) {
    issue("feasibility", e.what());
    return report;
  }
  for (const auto& v : feasibility.violations) {
    issue("feasibility", v.detail, constraint_tag(v.constraint));
  }

  const auto nb = instance.buyers().size();
  const auto ns = instance.sellers().size();
  std::vector<Money> paid(nb, Money(0)), received(ns, Money(0)), bu(nb, Money(0)), su(ns, Money(0));
  std::map<SellerId, std::vector<std::pair<TimeSlot, TimeSlot>>> booked;
  std::set<std::pair<BuyerId, SellerId>> traded;

  const json& trades = field(outcome, "trades", "outcome");
  if (!trades.is_array()) bad("outcome.trades: expected an array");
  for (std::size_t i = 0; i < trades.size(); ++i) {
    const std::string where = "trades[" + std::to_string(i) + "]";
    const json& t = trades[i];
    const auto n = int32(field(t, "buyer", where), where + ".buyer");
    const auto m = int32(field(t, "seller", where), where + ".seller");
    const auto start = int32(field(t, "start", where), where + ".start");
    const auto dur = int32(field(t, "duration", where), where + ".duration");
    const Money price = money_from(field(t, "unit_price", where), where + ".unit_price");
    const Money payment = money_from(field(t, "payment", where), where + ".payment");
    const auto* e = instance.entry(n, m);
    if (e == nullptr) {
      issue("trades", where + " names a pair absent from the instance");
      continue;
    }
    traded.insert({n, m});
    if (schedule.start_of(n, m) != start) issue("trades", where + " disagrees with the schedule");
    if (dur < e->duration) issue("trades", where + " is shorter than the required duration");
    if (payment != price * Money(dur)) issue("payments", where + " payment differs from unit price x duration");
    if (start < e->arrival || start + dur > e->departure) {
      issue("feasibility", where + " reported occupancy leaves the buyer window", "ii");
    }
    const auto& s = instance.seller(m);
    if (start < s.service_start || start + dur > s.service_end) {
      issue("feasibility", where + " reported occupancy leaves the service window", "v");
    }
    for (const auto& [a, b] : booked[m]) {
      if (start < b && a < start + dur) issue("feasibility", where + " overlaps another trade on seller " + std::to_string(m), "iv");
    }
    booked[m].emplace_back(start, start + dur);
    paid[static_cast<std::size_t>(n)] += payment;
    received[static_cast<std::size_t>(m)] += payment;
    bu[static_cast<std::size_t>(n)] += e->value - payment;
    su[static_cast<std::size_t>(m)] += payment - Money(dur) * s.unit_cost;
  }
  for (const auto& a : schedule.allocations()) {
    if (!traded.count({a.buyer, a.seller})) {
      issue("trades", "allocation of buyer " + std::to_string(a.buyer) + " to seller " + std::to_string(a.seller) +
                          " has no trade record");
    }
  }

  auto compare = [&](const char* key, const std::vector<Money>& expect, const std::string& check) {
    const json& list = field(outcome, key, "outcome");
    if (!list.is_array() || list.size() != expect.size()) {
      issue(check, std::string(key) + " has the wrong length");
      return std::vector<Money>{};
    }
    std::vector<Money> got;
    for (std::size_t i = 0; i < list.size(); ++i) {
      got.push_back(money_from(list[i], std::string(key) + "[" + std::to_string(i) + "]"));
      if (got.back() != expect[i]) {
        issue(check, std::string(key) + "[" + std::to_string(i) + "] is " + got.back().to_string() + ", expected " +
                         expect[i].to_string());
      }
    }
    return got;
  };
  const auto payments = compare("payments", paid, "payments");
  const auto reimbursements = compare("reimbursements", received, "budget-balance");
  compare("buyer_utilities", bu, "utilities");
  compare("seller_utilities", su, "utilities");

  Money total_paid(0), total_reimbursed(0);
  for (const auto& p : payments) total_paid += p;
  for (const auto& r : reimbursements) total_reimbursed += r;
  if (total_paid != total_reimbursed) {
    issue("budget-balance", "payments total " + total_paid.to_string() + " but reimbursements total " +
                                total_reimbursed.to_string());
  }
  for (std::size_t n = 0; n < nb; ++n) {
    if (bu[n].is_negative()) issue("individual-rationality", "buyer " + std::to_string(n) + " utility " + bu[n].to_string());
  }
  for (std::size_t m = 0; m < ns; ++m) {
    if (su[m].is_negative()) issue("individual-rationality", "seller " + std::to_string(m) + " utility " + su[m].to_string());
  }
  return report;
}

json audit_to_json(const AuditReport& report) {
  json issues = json::array();
  for (const auto& i : report.issues) {
    json item = {{"check", i.check}, {"detail", i.detail}};
    if (i.constraint) item["constraint"] = *i.constraint;
    issues.push_back(std::move(item));
  }
  return {{"ok", report.ok()}, {"issues", std::move(issues)}};
}

json suite_spec_to_json(const SuiteSpec& spec) {
  json groups = json::array();
  for (const auto& g : spec.groups) {
    groups.push_back({{"group", g.group}, {"sellers", g.sellers}, {"buyers", g.buyers}, {"instances", g.instances}});
  }
  json configs = json::array();
  for (const auto& c : spec.configs) {
    json cj = config_to_json(c.config);
    cj["label"] = c.label;
    configs.push_back(std::move(cj));
  }
  return {{"groups", std::move(groups)},
          {"configs", std::move(configs)},
          {"seed", spec.seed},
          {"optimal", spec.compute_optimal},
          {"fcfs_seed", spec.fcfs_seed},
          {"threads", spec.threads},
          {"generator", generator_to_json(spec.generator)}};
}

SuiteSpec suite_spec_from_json(const json& j) {
  only_keys(j, {"groups", "instances", "configs", "seed", "optimal", "fcfs_seed", "threads", "generator"}, "suite");
  SuiteSpec spec;
  const json& groups = field(j, "groups", "suite");
  if (!groups.is_array() || groups.empty()) bad("suite.groups: expected a non-empty array");
  for (const auto& g : groups) {
    if (g.is_number_integer()) {
      try {
        spec.groups.push_back(standard_group(int32(g, "suite.groups")));
      } catch (const std::invalid_argument& e) {
        bad(e.what());
      }
    } else {
      only_keys(g, {"group", "sellers", "buyers", "instances"}, "suite.groups[]");
      GroupShape s;
      s.group = int32(field(g, "group", "suite.groups[]"), "group");
      s.sellers = int32(field(g, "sellers", "suite.groups[]"), "sellers");
      s.buyers = int32(field(g, "buyers", "suite.groups[]"), "buyers");
      if (g.contains("instances")) s.instances = int32(g["instances"], "instances");
      spec.groups.push_back(s);
    }
  }
  if (j.contains("instances")) {
    const auto k = int32(j["instances"], "suite.instances");
    if (k < 1) bad("suite.instances must be positive");
    for (auto& g : spec.groups) g.instances = k;
  }
  std::set<std::int32_t> ids;
  for (const auto& g : spec.groups) {
    if (g.group < 1) bad("suite.groups: group ids must be positive");
    if (!ids.insert(g.group).second) bad("suite.groups: duplicate group " + std::to_string(g.group));
  }
  const json& configs = field(j, "configs", "suite");
  if (!configs.is_array() || configs.empty()) bad("suite.configs: expected a non-empty array");
  for (std::size_t i = 0; i < configs.size(); ++i) {
    json cj = configs[i];
    std::string label = "config" + std::to_string(i);
    if (cj.is_object() && cj.contains("label")) {
      label = text(cj["label"], "suite.configs[].label");
      cj.erase("label");
    }
    spec.configs.push_back({label, config_from_json(cj)});
  }
  if (j.contains("seed")) spec.seed = seed_from(j["seed"], "suite.seed");
  if (j.contains("optimal")) {
    if (!j["optimal"].is_boolean()) bad("suite.optimal: expected a boolean");
    spec.compute_optimal = j["optimal"].get<bool>();
  }
  if (j.contains("fcfs_seed")) spec.fcfs_seed = seed_from(j["fcfs_seed"], "suite.fcfs_seed");
  if (j.contains("threads")) spec.threads = static_cast<unsigned>(seed_from(j["threads"], "suite.threads"));
  if (j.contains("generator")) spec.generator = generator_from_json(j["generator"]);
  return spec;
}

json deviation_to_json(const DeviationReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"misreport", s.description}, {"utility", money_json(s.utility)}, {"gain", money_json(s.gain)}});
  }
  return {{"agent",
           {{"role", r.agent.role == AgentRef::Role::buyer ? "buyer" : "seller"}, {"id", r.agent.id}}},
          {"truthful_utility", money_json(r.truthful_utility)},
          {"max_gain", money_json(r.max_gain())},
          {"violations", r.violations()},
          {"samples", std::move(samples)}};
}

}  // namespace pida::io
