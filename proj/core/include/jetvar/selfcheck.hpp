#pragma once

#include <string>
#include <vector>

#include "jetvar/random.hpp"

namespace jetvar {

struct IdentityTally {
  std::string name;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  /// Lowest failing case index and its description, when any case failed.
  std::string first_failure;
};

struct SelfcheckReport {
  RunConfig config;
  std::vector<IdentityTally> tallies;

  bool ok() const;
  std::string render(OutputFormat format) const;
};

/// Names of every identity, in report order.
std::vector<std::string> selfcheck_identities();

/// Runs every identity on config.cases seeded cases. Cases are spread over
/// `threads` workers; the report does not depend on the thread count.
SelfcheckReport run_selfcheck(const RunConfig& config, unsigned threads = 0);

} // namespace jetvar
