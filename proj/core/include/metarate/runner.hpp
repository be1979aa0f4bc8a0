#pragma once

#include "metarate/scenario.hpp"

namespace metarate {

struct RunOptions {
  Caps caps;
  unsigned jobs = 1;
};

/// Verifies every scenario (in parallel when jobs > 1) and returns the
/// report sorted by scenario id, so the result is deterministic regardless
/// of scheduling.
Report run_scenarios(const std::vector<Scenario>& scenarios,
                     const RunOptions& options);

}  // namespace metarate
