#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "metarate/pwl.hpp"
#include "metarate/schedules.hpp"

namespace metarate {

enum class Scheme { picard, km, ishikawa };

/// An exactly generated iteration sequence. Picard runs use the KM update
/// with the parameter frozen at 1 but keep their own scheme label.
struct IterationRun {
  Scheme scheme = Scheme::km;
  PwlFunction f = PwlFunction::identity();
  ParamSchedule t = ParamSchedule::harmonic();
  std::optional<ParamSchedule> s;  // ishikawa only
  UnitRational x0;
  std::vector<UnitRational> xs;
  std::vector<UnitRational> ys;  // ishikawa only; ys[n] pairs xs[n]
};

/// Generates `length` points of the requested scheme, exactly:
///   km:       x_{n+1} = (1-t_n) x_n + t_n f(x_n)
///   ishikawa: y_n = (1-s_n) x_n + s_n f(x_n),
///             x_{n+1} = (1-t_n) x_n + t_n f(y_n)
///   picard:   x_{n+1} = f(x_n)
IterationRun run_iteration(Scheme scheme, const PwlFunction& f,
                           const ParamSchedule& t,
                           const std::optional<ParamSchedule>& s,
                           const UnitRational& x0, std::uint64_t length,
                           const Caps& caps);

/// Extends an existing run in place to `length` points; no-op when the run
/// is already that long. Extension is exact, so the prefix never changes.
void extend_run(IterationRun& run, std::uint64_t length, const Caps& caps);

/// sigma_0 = 1; sigma_{n+1} = sign(f(x_n) - x_n) when nonzero, otherwise
/// carried from sigma_n. Values are +1/-1.
std::vector<int> sign_sequence(const IterationRun& run, std::size_t length);

/// Indices where the sign sequence flips. `switches` holds the finite
/// prefix (always starting with 0); `tail` states what is known about the
/// next entry: either no further switch occurs up to the horizon, or none
/// can ever occur (certified: the run reached an exact fixed point, so the
/// sign sequence is provably constant from there on).
struct SwitchTrace {
  std::vector<int> sign;
  std::vector<std::uint64_t> switches;
  enum class Tail { none_within_horizon, provably_none } tail =
      Tail::none_within_horizon;
};

SwitchTrace switching_sequence(const IterationRun& run, std::size_t length);

}  // namespace metarate
