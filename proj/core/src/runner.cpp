#include "metarate/runner.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "metarate/verify.hpp"

namespace metarate {

Report run_scenarios(const std::vector<Scenario>& scenarios,
                     const RunOptions& options) {
  Report report;
  report.results.resize(scenarios.size());

  const unsigned jobs =
      std::max(1u, std::min<unsigned>(options.jobs, scenarios.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < scenarios.size(); ++i)
      report.results[i] = verify_scenario(scenarios[i], options.caps);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= scenarios.size()) return;
        report.results[i] = verify_scenario(scenarios[i], options.caps);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  std::sort(report.results.begin(), report.results.end(),
            [](const ScenarioResult& a, const ScenarioResult& b) {
              return a.id < b.id;
            });
  return report;
}

}  // namespace metarate
