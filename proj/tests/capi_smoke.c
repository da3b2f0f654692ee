/* Compiles as plain C against memlab.h; proves the header needs no C++
 * compiler and the happy path works through the shared library alone. */
#include <stdio.h>
#include <string.h>

#include "memlab.h"

/* Deliberate stand-in for assert(): must fire in release builds too. */
#define EXPECT(cond)                                                \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "capi_smoke: %s:%d: expected %s\n", __FILE__, \
              __LINE__, #cond);                                     \
      return 1;                                                     \
    }                                                               \
  } while (0)

static const char* kSource =
    "name SB\n"
    "init v=0 w=0\n"
    "thread T0:\n"
    "  write v 1\n"
    "  read w -> r1\n"
    "thread T1:\n"
    "  write w 1\n"
    "  read v -> r2\n"
    "exists T0:r1=0 /\\ T1:r2=0\n";

int main(void) {
  memlab_test* test = NULL;
  memlab_model* model = NULL;
  memlab_report* report = NULL;
  memlab_options opts;
  char* outcome = NULL;

  EXPECT(memlab_test_parse(kSource, &test) == MEMLAB_OK);
  EXPECT(strcmp(memlab_test_name(test), "SB") == 0);
  EXPECT(memlab_test_thread_count(test) == 2);

  EXPECT(memlab_model_product("TSO", &model) == MEMLAB_OK);
  memlab_options_init(&opts);
  EXPECT(memlab_explore(test, model, &opts, &report) == MEMLAB_OK);

  EXPECT(memlab_report_outcome_count(report) == 4);
  EXPECT(memlab_report_complete(report) == 1);
  EXPECT(memlab_report_assertion_verdict(report, test, 0) ==
         MEMLAB_VERDICT_PASS);
  EXPECT(memlab_report_exit_code(report, test) == 0);

  outcome = memlab_report_outcome(report, test, 0);
  EXPECT(outcome != NULL);
  EXPECT(strchr(outcome, '|') != NULL);
  memlab_string_free(outcome);

  /* Failing calls must leave a readable message behind. */
  {
    memlab_model* bogus = NULL;
    EXPECT(memlab_model_product("XYZ", &bogus) ==
           MEMLAB_ERR_UNKNOWN_PRODUCT);
    EXPECT(bogus == NULL);
    EXPECT(memlab_last_error() != NULL);
    EXPECT(strstr(memlab_last_error(), "unknown product") != NULL);
  }

  memlab_report_free(report);
  memlab_model_free(model);
  memlab_test_free(test);
  printf("capi_smoke: ok\n");
  return 0;
}
