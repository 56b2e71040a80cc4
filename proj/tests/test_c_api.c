/* Exercises the shared library through its C header only. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "pida/pida.h"

static int failures = 0;

#define CHECK(cond)                                                    \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: check failed: %s (%s)\n", __FILE__, __LINE__, #cond, pida_last_error()); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static const char* example_one =
    "{\"header\":{\"format_version\":1,\"horizon\":24,\"slot_minutes\":60,\"origin_minutes\":0},"
    "\"sellers\":[{\"id\":0,\"s\":13,\"e\":17,\"c\":\"1.5\"},{\"id\":1,\"s\":15,\"e\":19,\"c\":\"1\"}],"
    "\"buyers\":[{\"id\":0,\"entries\":[{\"seller\":0,\"a\":12,\"d\":16,\"r\":2,\"v\":\"4\"},"
    "{\"seller\":1,\"a\":16,\"d\":20,\"r\":3,\"v\":\"5\"}]}]}";

static void test_example_one(void) {
  pida_instance* inst = NULL;
  pida_outcome* out = NULL;
  char* result = NULL;
  char* report = NULL;
  char* solved = NULL;
  char* fcfs = NULL;

  CHECK(pida_instance_from_json(example_one, &inst) == PIDA_OK);
  if (inst == NULL) return;
  CHECK(pida_instance_buyer_count(inst) == 1);
  CHECK(pida_instance_seller_count(inst) == 2);

  CHECK(pida_run_auction(inst, NULL, &out) == PIDA_OK);
  CHECK(pida_outcome_trade_count(out) == 1);
  CHECK(pida_outcome_terminated_by_t1(out) == 1);
  CHECK(pida_outcome_rounds(out) > 1);

  CHECK(pida_outcome_result_json(out, NULL, 0, 1, 0, &result) == PIDA_OK);
  CHECK(result != NULL && strstr(result, "\"auction-result\"") != NULL);
  CHECK(pida_verify(inst, result, &report) == PIDA_OK);
  CHECK(report != NULL && strstr(report, "\"ok\": true") != NULL);

  CHECK(pida_solve(inst, "{\"solver\":\"exact\"}", &solved) == PIDA_OK);
  CHECK(solved != NULL && strstr(solved, "\"welfare\": \"2\"") != NULL);
  CHECK(pida_baseline(inst, "fcfs", 0, &fcfs) == PIDA_OK);
  CHECK(fcfs != NULL && strstr(fcfs, "\"welfare\": \"1\"") != NULL);

  pida_string_free(result);
  pida_string_free(report);
  pida_string_free(solved);
  pida_string_free(fcfs);
  pida_outcome_free(out);
  pida_instance_free(inst);
}

static void test_errors(void) {
  pida_instance* inst = NULL;
  pida_outcome* out = NULL;
  char* s = NULL;

  CHECK(pida_instance_from_json("{not json", &inst) == PIDA_ERR_PARSE);
  CHECK(inst == NULL);
  CHECK(strlen(pida_last_error()) > 0);
  CHECK(pida_instance_from_json("{\"sellers\":[]}", &inst) == PIDA_ERR_PARSE);
  CHECK(pida_instance_from_json(NULL, &inst) == PIDA_ERR_ARGUMENT);

  CHECK(pida_instance_from_json(example_one, &inst) == PIDA_OK);
  CHECK(pida_run_auction(inst, "{\"b_min\":\"9\"}", &out) == PIDA_ERR_VALIDATION);
  CHECK(out == NULL);
  CHECK(pida_run_auction(inst, "{\"unknown\":1}", &out) == PIDA_ERR_PARSE);
  CHECK(pida_baseline(inst, "lottery", 0, &s) == PIDA_ERR_ARGUMENT);
  CHECK(s == NULL);
  CHECK(pida_verify(inst, "{\"outcome\":{\"schedule\":[{\"buyer\":0,\"seller\":0,\"start\":15}],"
                          "\"trades\":[],\"payments\":[\"0\"],\"reimbursements\":[\"0\",\"0\"],"
                          "\"buyer_utilities\":[\"0\"],\"seller_utilities\":[\"0\",\"0\"]}}",
                    &s) == PIDA_ERR_AUDIT);
  CHECK(s != NULL && strstr(s, "\"ok\": false") != NULL);
  pida_string_free(s);
  pida_instance_free(inst);
}

static void test_generate_and_bench(void) {
  pida_instance* a = NULL;
  pida_instance* b = NULL;
  char* fa = NULL;
  char* fb = NULL;
  char* bench1 = NULL;
  char* bench2 = NULL;
  const char* suite = "{\"groups\":[1],\"instances\":2,\"seed\":3,\"configs\":[{\"label\":\"s\"}]}";

  CHECK(pida_instance_generate("{\"group\":2,\"seed\":7}", &a) == PIDA_OK);
  CHECK(pida_instance_generate("{\"group\":2,\"seed\":7}", &b) == PIDA_OK);
  CHECK(pida_instance_fingerprint(a, &fa) == PIDA_OK);
  CHECK(pida_instance_fingerprint(b, &fb) == PIDA_OK);
  CHECK(fa != NULL && fb != NULL && strcmp(fa, fb) == 0);

  CHECK(pida_bench(suite, 0, &bench1) == PIDA_OK);
  CHECK(pida_bench(suite, 0, &bench2) == PIDA_OK);
  CHECK(bench1 != NULL && bench2 != NULL && strcmp(bench1, bench2) == 0);

  pida_string_free(fa);
  pida_string_free(fb);
  pida_string_free(bench1);
  pida_string_free(bench2);
  pida_instance_free(a);
  pida_instance_free(b);
}

int main(void) {
  CHECK(strlen(pida_version()) > 0);
  test_example_one();
  test_errors();
  test_generate_and_bench();
  if (failures > 0) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("c api ok\n");
  return 0;
}
