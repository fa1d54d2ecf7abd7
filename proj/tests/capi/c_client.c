/* Plain C client: the header must compile as C and the library must be usable
 * without any C++ on the caller's side. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "crowdship/crowdship.h"

static int failures = 0;

static void expect(int condition, const char* what) {
  if (!condition) {
    fprintf(stderr, "FAILED: %s (%s)\n", what, crowdship_last_error());
    ++failures;
  }
}

int main(void) {
  crowdship_config* config = NULL;
  crowdship_report* report = NULL;
  crowdship_run_options options = {0, 0};
  char value[32];
  double step = 0.0;
  double tsc = -1.0;
  size_t needed = 0;

  expect(crowdship_recommend_timestep(0.15, 0.1, &step) == CROWDSHIP_OK, "timestep");
  expect(fabs(step - sqrt(0.9) / 0.15) < 1e-9, "timestep value");

  expect(crowdship_config_preset("paper-small", &config) == CROWDSHIP_OK, "preset");
  expect(crowdship_config_set(config, "horizon", "30") == CROWDSHIP_OK, "set horizon");
  expect(crowdship_config_set(config, "seeds", "1") == CROWDSHIP_OK, "set seeds");
  expect(crowdship_config_get(config, "horizon", value, sizeof value, &needed) == CROWDSHIP_OK, "get");
  expect(strcmp(value, "30") == 0 && needed == 3, "get value");
  expect(crowdship_config_set(config, "colour", "blue") == CROWDSHIP_ERR_CONFIG, "unknown key");

  expect(crowdship_run(config, &options, &report) == CROWDSHIP_OK, "run");
  expect(crowdship_report_seed_count(report) == 1, "seed count");
  expect(crowdship_report_metric(report, 0, "tsc", &tsc) == CROWDSHIP_OK, "metric");
  expect(tsc >= 0.0, "tsc value");

  crowdship_report_destroy(report);
  crowdship_config_destroy(config);
  if (failures == 0) printf("c client ok\n");
  return failures == 0 ? 0 : 1;
}
