#pragma once

#include <cstdint>
#include <vector>

#include "metarate/numerics.hpp"
#include "metarate/schedules.hpp"

namespace metarate {

/// Trace of the ladder recursion behind the KM and Ishikawa metastability
/// bounds. Keeping the whole ladder (not just the final value) lets tests
/// assert the recursion's step invariants directly.
struct LadderTrace {
  Nat subintervals;                  // grid size m of the pigeonhole partition
  PosRational diff_threshold{1, 1};  // 1/(4m), the step tolerance fed first
  std::vector<Nat> ladder;     // u_0 .. u_{2m^2}
  std::vector<PosRational> rate_args;  // tolerance handed to the rates at step n
  Nat bound;                   // ladder.back()
};

/// Trace of the switch-counting recursion behind the Lipschitz KM bound.
struct SwitchBoundTrace {
  std::vector<Nat> anchors;        // P_0 .. P_B, nondecreasing
  std::int64_t contraction_steps;  // T; can drop to <= 0 only when eps >= 1
  Nat switch_budget;               // B
  Nat bound;                       // anchors.back()
  bool eps_at_least_one = false;   // flagged: the formula is degenerate there
};

/// Metastability bound for monotone sequences in [0,1]: the window-end map
/// of g iterated ceil(1/eps) times from 0.
Nat monotone_bound(const PosRational& eps, const CounterFunc& g,
                   const Caps& caps);

/// Metastability bound for sequences with x_{n+1} between x_n and f(x_n),
/// given a modulus of uniform continuity for f and a rate of convergence
/// beta for the consecutive differences.
LadderTrace km_bound(const PosRational& eps, const CounterFunc& g,
                     const Modulus& omega, const Rate& beta, const Caps& caps);

/// Ishikawa variant: y_n between x_n and f(x_n), x_{n+1} between x_n and
/// f(y_n); gamma is a rate of convergence for (x_n - y_n).
LadderTrace ishikawa_bound(const PosRational& eps, const CounterFunc& g,
                           const Modulus& omega, const Rate& beta,
                           const Rate& gamma, const Caps& caps);

/// Bound for KM iterations of an L-Lipschitz map with parameters
/// t_n <= (2-delta)/(L+1); depends only on eps, g and delta.
SwitchBoundTrace lipschitz_bound(const PosRational& eps, const CounterFunc& g,
                                 const PosRational& delta, const Caps& caps);

}  // namespace metarate
