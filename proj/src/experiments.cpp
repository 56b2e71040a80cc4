#include "pida/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <thread>

#include "pida/rng.hpp"

namespace pida {
namespace {

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string num(const std::optional<double>& x) { return x ? num(*x) : ""; }

class Mean {
 public:
  void add(double x) {
    sum_ += x;
    ++n_;
  }
  void add(const std::optional<double>& x) {
    if (x) add(*x);
  }
  std::optional<double> value() const { return n_ == 0 ? std::nullopt : std::optional<double>(sum_ / n_); }
  double or_zero() const { return value().value_or(0.0); }

 private:
  double sum_ = 0.0;
  std::int32_t n_ = 0;
};

struct Accumulator {
  std::int32_t cells = 0;
  std::int32_t failures = 0;
  std::int32_t ratio_cells = 0;
  Mean efficiency, profit, fcfs, greedy, rounds, runtime, w_auction, w_optimal, w_fcfs, w_greedy;

  void add(const CellResult& c) {
    if (!c.metrics) {
      ++failures;
      return;
    }
    const auto& m = *c.metrics;
    ++cells;
    if (m.efficiency) ++ratio_cells;
    efficiency.add(m.efficiency);
    profit.add(m.profit_ratio);
    fcfs.add(m.fcfs_efficiency);
    greedy.add(m.greedy_efficiency);
    rounds.add(static_cast<double>(m.rounds));
    runtime.add(m.runtime_seconds);
    w_auction.add(m.welfare_auction.to_double());
    if (m.welfare_optimal) w_optimal.add(m.welfare_optimal->to_double());
    w_fcfs.add(m.welfare_fcfs.to_double());
    w_greedy.add(m.welfare_greedy.to_double());
  }

  Aggregate result(std::int32_t group, std::size_t config) const {
    Aggregate a;
    a.group = group;
    a.config = config;
    a.cells = cells;
    a.failures = failures;
    a.ratio_cells = ratio_cells;
    a.efficiency = efficiency.value();
    a.profit_ratio = profit.value();
    a.fcfs_efficiency = fcfs.value();
    a.greedy_efficiency = greedy.value();
    a.rounds = rounds.or_zero();
    a.runtime_seconds = runtime.or_zero();
    a.welfare_auction = w_auction.or_zero();
    a.welfare_optimal = w_optimal.value();
    a.welfare_fcfs = w_fcfs.or_zero();
    a.welfare_greedy = w_greedy.or_zero();
    return a;
  }
};

}  // namespace

std::uint64_t instance_seed(std::uint64_t suite_seed, std::int32_t group, std::int32_t index) {
  return derive_seed(suite_seed, static_cast<std::uint64_t>(group), static_cast<std::uint64_t>(index));
}

SuiteResult run_experiment_suite(const SuiteSpec& spec) {
  for (const auto& c : spec.configs) c.config.validate();
  SuiteResult result;
  for (const auto& c : spec.configs) result.labels.push_back(c.label);

  struct Slot {
    std::int32_t group;
    std::int32_t index;
    std::uint64_t seed;
    std::optional<Instance> instance;
    std::optional<Schedule> optimal;
    std::string error;
    std::vector<std::string> warnings;
  };
  std::vector<Slot> slots;
  for (const auto& g : spec.groups) {
    for (std::int32_t i = 0; i < g.instances; ++i) slots.push_back({g.group, i, instance_seed(spec.seed, g.group, i), {}, {}, {}, {}});
  }
  std::map<std::int32_t, const GroupShape*> shape;
  for (const auto& g : spec.groups) shape[g.group] = &g;

  parallel_for(slots.size(), spec.threads, [&](std::size_t k) {
    Slot& s = slots[k];
    try {
      GeneratorConfig gc = spec.generator;
      gc.n_sellers = shape[s.group]->sellers;
      gc.n_buyers = shape[s.group]->buyers;
      gc.seed = s.seed;
      s.instance = generate_instance(gc, &s.warnings);
      if (spec.compute_optimal) s.optimal = solve_exact(truthful_market(*s.instance)).schedule;
    } catch (const std::exception& e) {
      s.error = e.what();
    }
  });

  const std::size_t nc = spec.configs.size();
  result.cells.resize(slots.size() * nc);
  parallel_for(result.cells.size(), spec.threads, [&](std::size_t k) {
    const Slot& s = slots[k / nc];
    CellResult& cell = result.cells[k];
    cell.group = s.group;
    cell.instance = s.index;
    cell.config = k % nc;
    cell.instance_seed = s.seed;
    if (!s.instance) {
      cell.error = s.error;
      return;
    }
    try {
      AuctionConfig config = spec.configs[cell.config].config;
      config.seed = derive_seed(config.seed, 0xA0, s.seed);
      const auto t0 = std::chrono::steady_clock::now();
      const AuctionOutcome outcome = run_auction(*s.instance, config);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
      cell.metrics = measure(*s.instance, outcome, s.optimal, elapsed.count(), spec.fcfs_seed);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });

  for (const auto& s : slots) {
    for (const auto& w : s.warnings) {
      result.warnings.push_back("group " + std::to_string(s.group) + " instance " + std::to_string(s.index) + ": " + w);
    }
  }

  std::map<std::pair<std::int32_t, std::size_t>, Accumulator> groups;
  std::vector<Accumulator> overall(nc);
  for (const auto& c : result.cells) {
    groups[{c.group, c.config}].add(c);
    overall[c.config].add(c);
  }
  for (const auto& [key, acc] : groups) result.per_group.push_back(acc.result(key.first, key.second));
  for (std::size_t c = 0; c < nc; ++c) result.overall.push_back(overall[c].result(0, c));
  return result;
}

std::string SuiteResult::cells_csv(bool timing) const {
  std::string out =
      "group,instance,config,seed,efficiency,profit_ratio,rounds,welfare_auction,welfare_optimal,"
      "welfare_fcfs,welfare_greedy,fcfs_efficiency,greedy_efficiency";
  out += timing ? ",runtime_s,error\n" : ",error\n";
  for (const auto& c : cells) {
    out += std::to_string(c.group) + "," + std::to_string(c.instance) + "," + labels.at(c.config) + "," +
           std::to_string(c.instance_seed) + ",";
    if (c.metrics) {
      const auto& m = *c.metrics;
      out += num(m.efficiency) + "," + num(m.profit_ratio) + "," + std::to_string(m.rounds) + "," +
             m.welfare_auction.to_string() + "," + (m.welfare_optimal ? m.welfare_optimal->to_string() : "") + "," +
             m.welfare_fcfs.to_string() + "," + m.welfare_greedy.to_string() + "," + num(m.fcfs_efficiency) + "," +
             num(m.greedy_efficiency);
      if (timing) out += "," + num(m.runtime_seconds);
      out += ",\n";
    } else {
      out += ",,,,,,,,";
      if (timing) out += ",";
      std::string e = c.error;
      for (char& ch : e) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out += "," + e + "\n";
    }
  }
  return out;
}

std::string SuiteResult::summary_csv(bool timing) const {
  std::string out =
      "group,config,cells,failures,ratio_cells,mean_efficiency,mean_profit_ratio,mean_fcfs_efficiency,"
      "mean_greedy_efficiency,mean_rounds,mean_welfare_auction,mean_welfare_optimal,mean_welfare_fcfs,"
      "mean_welfare_greedy";
  out += timing ? ",mean_runtime_s\n" : "\n";
  auto row = [&](const Aggregate& a) {
    out += (a.group == 0 ? std::string("all") : std::to_string(a.group)) + "," + labels.at(a.config) + "," +
           std::to_string(a.cells) + "," + std::to_string(a.failures) + "," + std::to_string(a.ratio_cells) + "," +
           num(a.efficiency) + "," + num(a.profit_ratio) + "," + num(a.fcfs_efficiency) + "," +
           num(a.greedy_efficiency) + "," + num(a.rounds) + "," + num(a.welfare_auction) + "," +
           num(a.welfare_optimal) + "," + num(a.welfare_fcfs) + "," + num(a.welfare_greedy);
    if (timing) out += "," + num(a.runtime_seconds);
    out += "\n";
  };
  for (const auto& a : per_group) row(a);
  for (const auto& a : overall) row(a);
  return out;
}

}  // namespace pida
