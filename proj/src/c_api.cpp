#include "pida/pida.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "io.hpp"
#include "pida/baselines.hpp"

using pida::io::json;

struct pida_instance {
  pida::Instance instance;
};

struct pida_outcome {
  pida::Instance instance;
  pida::AuctionConfig config;
  pida::AuctionOutcome outcome;
  double runtime_seconds = 0.0;
};

namespace {

thread_local std::string last_error;

pida_status fail(pida_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Fn>
pida_status guarded(Fn&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const json::exception& e) {
    return fail(PIDA_ERR_PARSE, e.what());
  } catch (const pida::io::FormatError& e) {
    return fail(PIDA_ERR_PARSE, e.what());
  } catch (const pida::InfeasibleSchedule& e) {
    return fail(PIDA_ERR_VALIDATION, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PIDA_ERR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    return fail(PIDA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PIDA_ERR_INTERNAL, "unknown failure");
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

json parse_or_empty(const char* text) {
  if (text == nullptr || *text == '\0') return json::object();
  return json::parse(text);
}

bool small_enough_for_optimum(const pida::Instance& instance) {
  return instance.buyers().size() <= 30 && instance.sellers().size() <= 10;
}

}  // namespace

extern "C" {

const char* pida_version(void) { return "1.0.0"; }

const char* pida_last_error(void) { return last_error.c_str(); }

void pida_string_free(char* s) { std::free(s); }

pida_status pida_instance_from_json(const char* text, pida_instance** out) {
  if (text == nullptr || out == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto* h = new pida_instance{pida::io::instance_from_json(json::parse(text))};
    *out = h;
    return PIDA_OK;
  });
}

pida_status pida_instance_generate(const char* options_json, pida_instance** out) {
  if (out == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto config = pida::io::generator_from_json(parse_or_empty(options_json));
    *out = new pida_instance{pida::generate_instance(config)};
    return PIDA_OK;
  });
}

pida_status pida_instance_to_json(const pida_instance* instance, char** out) {
  if (instance == nullptr || out == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_out(pida::io::instance_to_json(instance->instance).dump(2));
    return PIDA_OK;
  });
}

pida_status pida_instance_fingerprint(const pida_instance* instance, char** out) {
  if (instance == nullptr || out == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_out(pida::io::fingerprint(instance->instance));
    return PIDA_OK;
  });
}

int32_t pida_instance_buyer_count(const pida_instance* instance) {
  return instance == nullptr ? -1 : static_cast<int32_t>(instance->instance.buyers().size());
}

int32_t pida_instance_seller_count(const pida_instance* instance) {
  return instance == nullptr ? -1 : static_cast<int32_t>(instance->instance.sellers().size());
}

void pida_instance_free(pida_instance* instance) { delete instance; }

pida_status pida_run_auction(const pida_instance* instance, const char* config_json, pida_outcome** out) {
  if (instance == nullptr || out == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto h = std::make_unique<pida_outcome>();
    h->instance = instance->instance;
    h->config = pida::io::config_from_json(parse_or_empty(config_json));
    const auto t0 = std::chrono::steady_clock::now();
    h->outcome = pida::run_auction(h->instance, h->config);
    h->runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    *out = h.release();
    return PIDA_OK;
  });
}

int32_t pida_outcome_rounds(const pida_outcome* outcome) { return outcome == nullptr ? -1 : outcome->outcome.rounds; }

int32_t pida_outcome_trade_count(const pida_outcome* outcome) {
  return outcome == nullptr ? -1 : static_cast<int32_t>(outcome->outcome.settlement.trades.size());
}

int32_t pida_outcome_terminated_by_t1(const pida_outcome* outcome) {
  return outcome == nullptr ? -1 : outcome->outcome.terminated_by == pida::Termination::t1 ? 1 : 0;
}

pida_status pida_outcome_result_json(const pida_outcome* outcome, const char* instance_path, int include_trace,
                                     int with_optimum, int timing, char** out) {
  if (outcome == nullptr || out == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  if (with_optimum < -1 || with_optimum > 1) return fail(PIDA_ERR_ARGUMENT, "with_optimum must be -1, 0 or 1");
  return guarded([&] {
    const auto& inst = outcome->instance;
    std::optional<pida::Schedule> optimal;
    if (with_optimum == 1 || (with_optimum == -1 && small_enough_for_optimum(inst))) {
      optimal = pida::solve_exact(pida::truthful_market(inst)).schedule;
    }
    const auto metrics = pida::measure(inst, outcome->outcome, optimal, outcome->runtime_seconds);
    json doc = {{"format_version", pida::io::kFormatVersion},
                {"kind", "auction-result"},
                {"instance",
                 {{"path", instance_path ? json(instance_path) : json(nullptr)},
                  {"fingerprint", pida::io::fingerprint(inst)}}},
                {"config", pida::io::config_to_json(outcome->config)},
                {"outcome", pida::io::outcome_to_json(outcome->outcome, include_trace != 0)},
                {"metrics", pida::io::metrics_to_json(metrics, timing != 0)}};
    *out = copy_out(doc.dump(2));
    return PIDA_OK;
  });
}

void pida_outcome_free(pida_outcome* outcome) { delete outcome; }

pida_status pida_solve(const pida_instance* instance, const char* params_json, char** out) {
  if (instance == nullptr || out == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const json params = parse_or_empty(params_json);
    const std::string solver = params.value("solver", std::string("exact"));
    const auto seed = params.value("seed", std::uint64_t{0});
    const auto market = pida::truthful_market(instance->instance);
    pida::WdSolution sol;
    if (solver == "exact") {
      const bool seeded = params.value("tie_break", std::string("deterministic")) != "deterministic";
      sol = pida::solve_exact(market, seeded ? pida::TieBreak::seeded_random : pida::TieBreak::deterministic, seed);
    } else if (solver == "sa") {
      pida::SaParams p;
      if (params.contains("sa")) {
        pida::AuctionConfig c = pida::io::config_from_json({{"wd", "sa"}, {"sa", params["sa"]}});
        p = c.sa;
      }
      p.seed = seed;
      sol = pida::solve_sa(market, p);
    } else {
      return fail(PIDA_ERR_ARGUMENT, "unknown solver '" + solver + "'");
    }
    const json doc = {{"solver", solver},
                      {"seed", seed},
                      {"objective", pida::io::money_json(sol.objective)},
                      {"welfare", pida::io::money_json(pida::social_welfare(instance->instance, sol.schedule))},
                      {"trades", sol.trade_count},
                      {"schedule", pida::io::schedule_to_json(sol.schedule)}};
    *out = copy_out(doc.dump(2));
    return PIDA_OK;
  });
}

pida_status pida_baseline(const pida_instance* instance, const char* kind, uint64_t seed, char** out) {
  if (instance == nullptr || kind == nullptr || out == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string k = kind;
    pida::Schedule s;
    if (k == "fcfs") {
      s = pida::fcfs_allocate(instance->instance, seed);
    } else if (k == "greedy") {
      s = pida::greedy_allocate(instance->instance);
    } else {
      return fail(PIDA_ERR_ARGUMENT, "unknown baseline '" + k + "'");
    }
    const json doc = {{"baseline", k},
                      {"welfare", pida::io::money_json(pida::social_welfare(instance->instance, s))},
                      {"trades", s.size()},
                      {"schedule", pida::io::schedule_to_json(s)}};
    *out = copy_out(doc.dump(2));
    return PIDA_OK;
  });
}

pida_status pida_verify(const pida_instance* instance, const char* result_json, char** report) {
  if (instance == nullptr || result_json == nullptr || report == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto audit = pida::io::audit_result(instance->instance, json::parse(result_json));
    *report = copy_out(pida::io::audit_to_json(audit).dump(2));
    if (audit.ok()) return PIDA_OK;
    std::string first = audit.issues.front().check;
    if (audit.issues.front().constraint) first += " (" + *audit.issues.front().constraint + ")";
    return fail(PIDA_ERR_AUDIT, "audit failed: " + first + ": " + audit.issues.front().detail);
  });
}

pida_status pida_bench(const char* suite_json, int timing, char** out) {
  if (suite_json == nullptr || out == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto spec = pida::io::suite_spec_from_json(json::parse(suite_json));
    const auto result = pida::run_experiment_suite(spec);
    std::int32_t failures = 0;
    for (const auto& c : result.cells) failures += c.metrics ? 0 : 1;
    const json doc = {{"summary_csv", result.summary_csv(timing != 0)},
                      {"cells_csv", result.cells_csv(timing != 0)},
                      {"failures", failures},
                      {"warnings", result.warnings}};
    *out = copy_out(doc.dump(2));
    return PIDA_OK;
  });
}

pida_status pida_deviate(const pida_instance* instance, const char* params_json, char** out) {
  if (instance == nullptr || out == nullptr) return fail(PIDA_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const json params = parse_or_empty(params_json);
    pida::AgentRef agent;
    const std::string role = params.value("role", std::string("buyer"));
    if (role == "buyer") agent.role = pida::AgentRef::Role::buyer;
    else if (role == "seller") agent.role = pida::AgentRef::Role::seller;
    else return fail(PIDA_ERR_ARGUMENT, "role must be 'buyer' or 'seller'");
    agent.id = params.value("id", 0);
    const auto config = pida::io::config_from_json(params.value("config", json::object()));
    const auto report = pida::deviation_test(instance->instance, config, agent, params.value("samples", 200),
                                             params.value("seed", std::uint64_t{0}));
    *out = copy_out(pida::io::deviation_to_json(report).dump(2));
    return PIDA_OK;
  });
}

}  // extern "C"
