// Command-line front end over the C API.
//
// Exit codes: 0 ok, 1 usage, 2 parse or validation failure, 3 audit failure.
// Errors go to stderr as {"error": {"code": ..., "message": ...}}.

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pida/pida.h"

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kAudit = 3 };

struct Failure {
  int exit_code;
  std::string code;
  std::string message;
};

[[noreturn]] void raise(int exit_code, std::string code, std::string message) {
  throw Failure{exit_code, std::move(code), std::move(message)};
}

void check(pida_status status) {
  switch (status) {
    case PIDA_OK: return;
    case PIDA_ERR_ARGUMENT: raise(kUsage, "argument", pida_last_error());
    case PIDA_ERR_PARSE: raise(kInvalid, "parse", pida_last_error());
    case PIDA_ERR_VALIDATION: raise(kInvalid, "validation", pida_last_error());
    case PIDA_ERR_AUDIT: raise(kAudit, "audit", pida_last_error());
    case PIDA_ERR_INTERNAL: raise(kInvalid, "internal", pida_last_error());
  }
  raise(kInvalid, "internal", "unknown status");
}

// Owns a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  pida_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(kInvalid, "io", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Whole-file atomic replace: write a sibling temp file, then rename it.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(kInvalid, "io", "cannot write " + tmp.string());
    out << content;
    if (!content.empty() && content.back() != '\n') out << '\n';
    out.flush();
    if (!out) raise(kInvalid, "io", "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    raise(kInvalid, "io", "cannot replace " + path + ": " + ec.message());
  }
}

class Instance {
 public:
  explicit Instance(const std::string& path) { check(pida_instance_from_json(read_file(path).c_str(), &h_)); }
  explicit Instance(pida_instance* h) : h_(h) {}
  ~Instance() { pida_instance_free(h_); }
  Instance(const Instance&) = delete;
  Instance& operator=(const Instance&) = delete;
  const pida_instance* get() const { return h_; }

 private:
  pida_instance* h_ = nullptr;
};

std::uint64_t default_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PIDA_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') raise(kUsage, "argument", "PIDA_SEED must be a non-negative integer");
    return v;
  }
  return 0;
}

// Auction flags shared by auction, bench and deviate.
struct AuctionFlags {
  std::string epsilon = "0.2";
  std::string w = "1";
  std::string bmin = "0.1";
  std::string amax = "7";
  std::string strategy = "single-bid";
  std::string wd = "exact";
  std::string tie_break = "deterministic";
  std::optional<std::uint64_t> seed;
  std::optional<int> max_rounds;
  int sa_iters = 1000;
  int sa_perms = 32;

  void add(CLI::App* app, bool sweep) {
    if (!sweep) {
      app->add_option("--epsilon", epsilon, "Price step per round")->capture_default_str();
      app->add_option("--amax", amax, "Highest ask price per slot")->capture_default_str();
      app->add_option("--strategy", strategy, "single-bid | xor-bid | xor-bid-repeating")->capture_default_str();
    }
    app->add_option("--w", w, "Step weight in (0, 1]")->capture_default_str();
    app->add_option("--bmin", bmin, "Lowest bid price per slot")->capture_default_str();
    app->add_option("--wd", wd, "Winner determination: exact | sa")->capture_default_str();
    app->add_option("--tie-break", tie_break, "deterministic | seeded")->capture_default_str();
    app->add_option("--seed", seed, "Seed (default: $PIDA_SEED, else 0)");
    app->add_option("--max-rounds", max_rounds, "Round cap (default: 10 (amax - bmin) / (w epsilon), rounded up)");
    app->add_option("--sa-iters", sa_iters, "SA iterations")->capture_default_str();
    app->add_option("--sa-perms", sa_perms, "SA neighbours per iteration")->capture_default_str();
  }

  json to_json() const {
    json j = {{"epsilon", epsilon}, {"w", w},         {"b_min", bmin},           {"a_max", amax},
              {"strategy", strategy}, {"wd", wd},     {"tie_break", tie_break},  {"seed", default_seed(seed)},
              {"sa", {{"iterations", sa_iters}, {"permutations", sa_perms}}}};
    if (max_rounds) j["max_rounds"] = *max_rounds;
    return j;
  }
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "1-12" or "1,3,5-7".
std::vector<int> parse_groups(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s)) {
    try {
      const auto dash = part.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoi(part));
      } else {
        const int lo = std::stoi(part.substr(0, dash));
        const int hi = std::stoi(part.substr(dash + 1));
        if (hi < lo) raise(kUsage, "argument", "empty group range '" + part + "'");
        for (int g = lo; g <= hi; ++g) out.push_back(g);
      }
    } catch (const std::logic_error&) {
      raise(kUsage, "argument", "bad group list '" + s + "'");
    }
  }
  if (out.empty()) raise(kUsage, "argument", "no groups selected");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative double auction for shared EV chargers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pida_version()));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random market instance");
  std::optional<int> gen_group, gen_sellers, gen_buyers;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_off_peak = "outside-peaks", gen_out;
  gen->add_option("--group", gen_group, "Standard group 1-15 (sets sellers and buyers)");
  gen->add_option("--sellers", gen_sellers, "Number of sellers");
  gen->add_option("--buyers", gen_buyers, "Number of buyers");
  gen->add_option("--seed", gen_seed, "Seed (default: $PIDA_SEED, else 0)");
  gen->add_option("--off-peak", gen_off_peak, "outside-peaks | whole-horizon")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "Output file (default: stdout)");

  // auction
  auto* auction = app.add_subcommand("auction", "Run the auction on an instance file");
  std::string auction_in, auction_out, auction_optimum = "auto";
  bool auction_trace = false, auction_timing = false;
  AuctionFlags auction_flags;
  auction->add_option("instance", auction_in, "Instance file")->required();
  auction_flags.add(auction, false);
  auction->add_flag("--trace", auction_trace, "Include the per-round trace");
  auction->add_flag("--timing", auction_timing, "Include wall-clock runtime in the metrics");
  auction->add_option("--optimum", auction_optimum, "Welfare optimum for metrics: auto | always | never")
      ->capture_default_str();
  auction->add_option("-o,--out", auction_out, "Result file (default: stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Welfare-maximizing schedule under truthful reports");
  std::string solve_in, solve_out, solve_wd = "exact", solve_tie = "deterministic";
  std::optional<std::uint64_t> solve_seed;
  int solve_iters = 1000, solve_perms = 32;
  solve->add_option("instance", solve_in, "Instance file")->required();
  solve->add_option("--wd", solve_wd, "exact | sa")->capture_default_str();
  solve->add_option("--tie-break", solve_tie, "deterministic | seeded")->capture_default_str();
  solve->add_option("--seed", solve_seed, "Seed (default: $PIDA_SEED, else 0)");
  solve->add_option("--sa-iters", solve_iters, "SA iterations")->capture_default_str();
  solve->add_option("--sa-perms", solve_perms, "SA neighbours per iteration")->capture_default_str();
  solve->add_option("-o,--out", solve_out, "Output file (default: stdout)");

  // baseline
  auto* baseline = app.add_subcommand("baseline", "FCFS or greedy allocation");
  std::string baseline_kind, baseline_in, baseline_out;
  std::optional<std::uint64_t> baseline_seed;
  baseline->add_option("kind", baseline_kind, "fcfs | greedy")->required();
  baseline->add_option("instance", baseline_in, "Instance file")->required();
  baseline->add_option("--seed", baseline_seed, "FCFS arrival tie shuffle (0 = by id)");
  baseline->add_option("-o,--out", baseline_out, "Output file (default: stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Experiment sweep over generated groups");
  std::string bench_groups = "1-12", bench_strategies = "single-bid,xor-bid,xor-bid-repeating";
  std::string bench_eps = "0.2", bench_amax = "7", bench_out, bench_cells, bench_off_peak = "outside-peaks";
  std::optional<int> bench_instances;
  unsigned bench_threads = 0;
  bool bench_no_optimum = false, bench_timing = false;
  AuctionFlags bench_flags;
  bench->add_option("--groups", bench_groups, "Groups, e.g. 1-12 or 13,14")->capture_default_str();
  bench->add_option("--instances", bench_instances, "Instances per group (default 10)");
  bench->add_option("--strategies", bench_strategies, "Comma-separated strategies")->capture_default_str();
  bench->add_option("--epsilon", bench_eps, "Comma-separated price steps")->capture_default_str();
  bench->add_option("--amax", bench_amax, "Comma-separated highest ask prices")->capture_default_str();
  bench->add_option("--off-peak", bench_off_peak, "outside-peaks | whole-horizon")->capture_default_str();
  bench_flags.add(bench, true);
  bench->add_option("--threads", bench_threads, "Worker threads (0 = all cores)")->capture_default_str();
  bench->add_flag("--no-optimum", bench_no_optimum, "Skip exact optima (required for large groups)");
  bench->add_flag("--timing", bench_timing, "Add runtime columns (output no longer reproducible)");
  bench->add_option("--cells", bench_cells, "Also write per-instance rows to this file");
  bench->add_option("-o,--out", bench_out, "Summary table file (default: stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Audit a result file against its instance");
  std::string verify_instance, verify_result;
  verify->add_option("instance", verify_instance, "Instance file")->required();
  verify->add_option("result", verify_result, "Result file")->required();

  // deviate
  auto* deviate = app.add_subcommand("deviate", "Probe one agent with sampled time-window misreports");
  std::string deviate_in, deviate_out, deviate_role = "buyer";
  int deviate_id = 0, deviate_samples = 200;
  AuctionFlags deviate_flags;
  deviate->add_option("instance", deviate_in, "Instance file")->required();
  deviate->add_option("--role", deviate_role, "buyer | seller")->capture_default_str();
  deviate->add_option("--id", deviate_id, "Agent id")->capture_default_str();
  deviate->add_option("--samples", deviate_samples, "Number of misreports")->capture_default_str();
  deviate_flags.add(deviate, false);
  deviate->add_option("-o,--out", deviate_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    if (rc == 0) return kOk;
    std::cerr << json{{"error", {{"code", "usage"}, {"message", e.what()}}}}.dump() << '\n';
    return kUsage;
  }

  try {
    if (*gen) {
      json options = {{"seed", default_seed(gen_seed)}, {"off_peak", gen_off_peak}};
      if (gen_group) options["group"] = *gen_group;
      if (gen_sellers) options["sellers"] = *gen_sellers;
      if (gen_buyers) options["buyers"] = *gen_buyers;
      pida_instance* h = nullptr;
      check(pida_instance_generate(options.dump().c_str(), &h));
      Instance inst(h);
      char* out = nullptr;
      check(pida_instance_to_json(inst.get(), &out));
      write_output(gen_out, take(out));
    } else if (*auction) {
      int optimum = 0;
      if (auction_optimum == "auto") optimum = -1;
      else if (auction_optimum == "always") optimum = 1;
      else if (auction_optimum != "never") raise(kUsage, "argument", "--optimum must be auto, always or never");
      Instance inst(auction_in);
      pida_outcome* outcome = nullptr;
      check(pida_run_auction(inst.get(), auction_flags.to_json().dump().c_str(), &outcome));
      char* out = nullptr;
      const pida_status st = pida_outcome_result_json(outcome, auction_in.c_str(), auction_trace ? 1 : 0, optimum,
                                                      auction_timing ? 1 : 0, &out);
      pida_outcome_free(outcome);
      check(st);
      write_output(auction_out, take(out));
    } else if (*solve) {
      Instance inst(solve_in);
      const json params = {{"solver", solve_wd},
                           {"seed", default_seed(solve_seed)},
                           {"tie_break", solve_tie},
                           {"sa", {{"iterations", solve_iters}, {"permutations", solve_perms}}}};
      char* out = nullptr;
      check(pida_solve(inst.get(), params.dump().c_str(), &out));
      write_output(solve_out, take(out));
    } else if (*baseline) {
      Instance inst(baseline_in);
      char* out = nullptr;
      check(pida_baseline(inst.get(), baseline_kind.c_str(), baseline_seed.value_or(0), &out));
      write_output(baseline_out, take(out));
    } else if (*bench) {
      json groups = json::array();
      for (int g : parse_groups(bench_groups)) groups.push_back(g);
      json configs = json::array();
      for (const auto& strategy : split(bench_strategies)) {
        for (const auto& eps : split(bench_eps)) {
          for (const auto& amax : split(bench_amax)) {
            AuctionFlags f = bench_flags;
            f.strategy = strategy;
            f.epsilon = eps;
            f.amax = amax;
            json c = f.to_json();
            c["label"] = strategy + "|eps=" + eps + "|amax=" + amax + "|wd=" + f.wd;
            configs.push_back(std::move(c));
          }
        }
      }
      json suite = {{"groups", groups},
                    {"configs", configs},
                    {"seed", default_seed(bench_flags.seed)},
                    {"optimal", !bench_no_optimum},
                    {"threads", bench_threads},
                    {"generator", {{"off_peak", bench_off_peak}}}};
      if (bench_instances) suite["instances"] = *bench_instances;
      char* out = nullptr;
      check(pida_bench(suite.dump().c_str(), bench_timing ? 1 : 0, &out));
      const json result = json::parse(take(out));
      for (const auto& w : result["warnings"]) std::cerr << json{{"warning", w}}.dump() << '\n';
      if (!bench_cells.empty()) write_output(bench_cells, result["cells_csv"].get<std::string>());
      write_output(bench_out, result["summary_csv"].get<std::string>());
    } else if (*verify) {
      Instance inst(verify_instance);
      char* report = nullptr;
      const pida_status st = pida_verify(inst.get(), read_file(verify_result).c_str(), &report);
      if (report != nullptr) write_output("", take(report));
      check(st);
    } else if (*deviate) {
      Instance inst(deviate_in);
      const json params = {{"role", deviate_role},
                           {"id", deviate_id},
                           {"samples", deviate_samples},
                           {"seed", default_seed(deviate_flags.seed)},
                           {"config", deviate_flags.to_json()}};
      char* out = nullptr;
      check(pida_deviate(inst.get(), params.dump().c_str(), &out));
      const std::string text = take(out);
      write_output(deviate_out, text);
      const int violations = json::parse(text)["violations"].get<int>();
      if (violations > 0) {
        raise(kAudit, "audit", std::to_string(violations) + " misreport(s) strictly increased the agent's utility");
      }
    }
  } catch (const Failure& f) {
    std::cerr << json{{"error", {{"code", f.code}, {"message", f.message}}}}.dump() << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump() << '\n';
    return kInvalid;
  }
  return kOk;
}
