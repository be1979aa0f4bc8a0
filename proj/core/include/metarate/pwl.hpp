#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "metarate/numerics.hpp"
#include "metarate/schedules.hpp"

namespace metarate {

struct Breakpoint {
  UnitRational x;
  UnitRational y;
};

struct FixedPoint {
  enum class Kind { on_segment, at_breakpoint };
  UnitRational location;
  Kind kind;
};

/// Continuous piecewise-linear self-map of [0,1], defined by breakpoints
/// with strictly increasing x covering 0 to 1. Evaluation, Lipschitz
/// constants and fixed-point location are all exact.
class PwlFunction {
 public:
  explicit PwlFunction(std::vector<Breakpoint> points);

  static PwlFunction identity();
  static PwlFunction constant(const UnitRational& y);

  const std::vector<Breakpoint>& points() const { return pts_; }

  UnitRational eval(const UnitRational& x) const;

  /// Least Lipschitz constant = max absolute segment slope; a constant map
  /// gets the conventional value 1 so downstream formulas stay defined.
  PosRational lipschitz_constant() const;

  bool is_constant() const;

  /// All slopes nonnegative (f nondecreasing)?
  bool is_nondecreasing() const;

  /// Maximal closed intervals (possibly degenerate) of [a,b] on which
  /// f(x) = x, in increasing order.
  std::vector<std::pair<UnitRational, UnitRational>> fixed_intervals_in(
      const UnitRational& a, const UnitRational& b) const;

  /// Smallest fixed point in [a,b], or nullopt if there is none.
  std::optional<FixedPoint> least_fixed_point_in(const UnitRational& a,
                                                 const UnitRational& b) const;

 private:
  std::vector<Breakpoint> pts_;
  std::vector<Rational> slopes_;  // one per segment
};

/// w(d) = d/L, a modulus of uniform continuity for any L-Lipschitz map.
inline Modulus modulus_from_lipschitz(const PosRational& lipschitz) {
  return Modulus(lipschitz.reciprocal());
}

struct ModulusCheck {
  bool pass = true;
  std::optional<PosRational> first_failing_delta;
};

/// Certifies that w is a modulus of uniform continuity for f at each given
/// delta. For piecewise-linear f this reduces to the exact comparison
/// w(delta) * L <= delta, so a pass is a proof rather than sampled evidence.
ModulusCheck check_modulus(const PwlFunction& f, const Modulus& w,
                           const std::vector<PosRational>& deltas);

}  // namespace metarate
