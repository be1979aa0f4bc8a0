#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metarate/scenario.hpp"

namespace metarate {

/// Deterministic seeded corpus: the same (seed, count, theorem, profile)
/// always yields the same scenario list, and every scenario satisfies the
/// chosen theorem's hypotheses by construction (checked at generation
/// time). Profiles: "standard" (random scenarios) and "smoke" (the three
/// fixed reference scenarios; count is ignored).
std::vector<Scenario> generate_corpus(std::uint64_t seed, std::uint64_t count,
                                      Theorem theorem,
                                      const std::string& profile = "standard");

}  // namespace metarate
