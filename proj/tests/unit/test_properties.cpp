#include <doctest.h>

#include "jetvar/selfcheck.hpp"

using namespace jetvar;

TEST_CASE("seeded invariant suite passes on every small bundle") {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 2; ++m) {
      RunConfig config;
      config.n = n;
      config.m = m;
      config.seed = 7;
      config.cases = 25;
      SelfcheckReport report = run_selfcheck(config, 0);
      INFO("n=" << n << " m=" << m << "\n" << report.render(OutputFormat::text));
      CHECK(report.ok());
      CHECK(report.tallies.size() == selfcheck_identities().size());
      for (const auto& t : report.tallies) {
        CHECK(t.passed + t.skipped == config.cases);
      }
    }
  }
}

TEST_CASE("report does not depend on the thread count") {
  RunConfig config;
  config.n = 2;
  config.m = 2;
  config.seed = 3;
  config.cases = 12;
  const std::string one = run_selfcheck(config, 1).render(OutputFormat::json);
  CHECK(one == run_selfcheck(config, 4).render(OutputFormat::json));
  CHECK(one == run_selfcheck(config, 3).render(OutputFormat::json));
}
