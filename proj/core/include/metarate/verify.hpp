#pragma once

#include "metarate/scenario.hpp"

namespace metarate {

/// Full pipeline for one scenario: hypothesis certification, bound
/// computation, exact run generation, brute-force oracle scan. Never
/// throws for per-scenario conditions; outcomes and details carry them.
ScenarioResult verify_scenario(const Scenario& scenario, const Caps& base_caps);

}  // namespace metarate
