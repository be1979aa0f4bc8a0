#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metarate/iterations.hpp"
#include "metarate/numerics.hpp"
#include "metarate/schedules.hpp"

namespace metarate {

/// Evidence that window [window_start, window_start + g(window_start)]
/// spreads wider than eps: a concrete pair of indices realizing the spread.
struct WindowWitness {
  std::uint64_t window_start = 0;
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  Rational gap;  // |x_i - x_j| > eps
};

struct MetastableScan {
  std::optional<std::uint64_t> least_n;  // empty: not found <= cap
  std::uint64_t searched_through = 0;    // last window start examined
  std::vector<WindowWitness> witnesses;  // one per rejected window start
};

/// Exhaustive search for the least N <= search_cap whose window
/// [N, N+g(N)] has diameter <= eps, by tracking window extrema (max-min
/// over the window decides the whole pairwise condition). Written against
/// the metastability definition only; shares no code with the bound
/// calculators. Throws DomainError if xs is too short to cover a window.
MetastableScan least_metastable(std::span<const UnitRational> xs,
                                const PosRational& eps, const CounterFunc& g,
                                std::uint64_t search_cap,
                                bool collect_witnesses = false);

/// Same contract, checking every pair in each window. Quadratic per
/// window; exists to cross-validate the extrema-based scan.
MetastableScan least_metastable_pairwise(std::span<const UnitRational> xs,
                                         const PosRational& eps,
                                         const CounterFunc& g,
                                         std::uint64_t search_cap,
                                         bool collect_witnesses = false);

/// Sequence length a scan up to `bound` needs:
/// max_{N <= bound} (N + g(N)) + 1. Monotone g evaluate in one step;
/// tables fall back to a full scan.
Nat needed_horizon(const Nat& bound, const CounterFunc& g, const Caps& caps);

enum class CheckStatus { pass, fail, skipped_precondition };

struct LemmaCheck {
  CheckStatus status = CheckStatus::pass;
  std::string detail;
  std::uint64_t checked_cases = 0;
};

/// One relaxed step x* = (1-t)x + t f(x) with t <= (2-delta)/(L+1) moves
/// at least a delta-fraction closer to every fixed point of f enclosed
/// between x and x*: |x* - p| <= (1-delta)|x - p|, checked exactly.
LemmaCheck check_step_contraction(const PwlFunction& f, const UnitRational& x,
                                  const UnitRational& t,
                                  const PosRational& delta);

/// For every consecutive pair of finite switching indices q_r < q_{r+1}
/// (r >= 1) of a KM run with t_{q_r - 1}, t_{q_{r+1} - 1} <=
/// (2-delta)/(L+1):
///   (i)  every x_n with n in [q_r, q_{r+1}] lies between x_{q_r - 1} and
///        x_{q_r};
///   (ii) |x_{q_{r+1}-1} - x_{q_{r+1}}| <= (1-delta/2)|x_{q_r-1} - x_{q_r}|.
/// Exact comparisons; vacuous pass when no finite pair exists.
LemmaCheck check_switch_contraction(const IterationRun& run,
                                    const PosRational& delta);

}  // namespace metarate
