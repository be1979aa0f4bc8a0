#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "metarate/numerics.hpp"

namespace metarate {

/// Symbolic counter function g: N -> N. A closed family rather than an
/// opaque callable, so scenarios serialize and results reproduce.
class CounterFunc {
 public:
  enum class Kind { constant, identity, affine, table, compose };

  static CounterFunc constant(Nat value);
  static CounterFunc identity();
  /// n -> scale*n + offset
  static CounterFunc affine(Nat scale, Nat offset);
  /// Explicit values for n < values.size(), then the tail expression at n.
  static CounterFunc table(std::vector<Nat> values, CounterFunc tail);
  static CounterFunc compose(CounterFunc outer, CounterFunc inner);

  Nat operator()(const Nat& n) const;

  /// n + g(n), the right end of the metastability window anchored at n.
  Nat window_end(const Nat& n) const;

  /// The window-end map iterated k times starting from 0; nondecreasing
  /// in k. Each intermediate value is checked against caps.nat_bits.
  Nat iterated_window_end(std::uint64_t k, const Caps& caps) const;

  /// True when g is provably nondecreasing (tables are reported false).
  bool monotone() const;

  Kind kind() const { return node_->kind; }
  const Nat& const_value() const { return node_->a; }
  const Nat& affine_scale() const { return node_->a; }
  const Nat& affine_offset() const { return node_->b; }
  const std::vector<Nat>& table_values() const { return node_->values; }
  CounterFunc table_tail() const { return CounterFunc(node_->left); }
  CounterFunc compose_outer() const { return CounterFunc(node_->left); }
  CounterFunc compose_inner() const { return CounterFunc(node_->right); }

  bool operator==(const CounterFunc& o) const;

 private:
  struct Node {
    Kind kind;
    Nat a, b;
    std::vector<Nat> values;
    std::shared_ptr<const Node> left, right;
  };
  explicit CounterFunc(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Modulus of uniform continuity, linear family w(d) = slope * d.
class Modulus {
 public:
  explicit Modulus(PosRational slope) : slope_(std::move(slope)) {}

  PosRational operator()(const PosRational& delta) const {
    return slope_ * delta;
  }
  const PosRational& slope() const { return slope_; }

  bool operator==(const Modulus& o) const { return slope_ == o.slope_; }

 private:
  PosRational slope_;
};

/// Symbolic rate of convergence towards 0: maps a positive tolerance to an
/// index from which the sequence stays within it.
class Rate {
 public:
  enum class Kind { harmonic, geometric, zero, table };

  /// d -> ceil(1/d)
  static Rate harmonic();
  /// d -> least n >= 0 with ratio^n <= d, for ratio in (0,1)
  static Rate geometric(PosRational ratio);
  /// identically 0 (valid for sequences that are identically 0)
  static Rate zero();
  /// Finite claims (threshold, index): from `index` on, the sequence stays
  /// within `threshold`. A query d uses the best applicable claim
  /// (min index over thresholds <= d) and `fallback` when none applies.
  static Rate table(std::vector<std::pair<PosRational, Nat>> entries,
                    Nat fallback);

  Nat operator()(const PosRational& delta, const Caps& caps) const;

  Kind kind() const { return kind_; }
  const PosRational& geometric_ratio() const { return *ratio_; }
  const std::vector<std::pair<PosRational, Nat>>& table_entries() const {
    return entries_;
  }
  const Nat& table_fallback() const { return fallback_; }

  bool operator==(const Rate& o) const;

 private:
  Kind kind_ = Kind::zero;
  std::optional<PosRational> ratio_;
  std::vector<std::pair<PosRational, Nat>> entries_;
  Nat fallback_;
};

/// Symbolic parameter sequence (t_n) in [0,1].
class ParamSchedule {
 public:
  enum class Kind { constant, harmonic, geometric, table };

  static ParamSchedule constant(UnitRational value);
  /// t_n = 1/(n+1)
  static ParamSchedule harmonic();
  /// t_n = start * ratio^n, ratio in (0,1]
  static ParamSchedule geometric(UnitRational start, PosRational ratio);
  static ParamSchedule table(std::vector<UnitRational> values,
                             ParamSchedule tail);

  UnitRational at(const Nat& n) const;

  /// Exact supremum of the schedule (attained for every family here).
  UnitRational max_value() const;

  Kind kind() const { return kind_; }
  const UnitRational& const_value() const { return value_; }
  const UnitRational& geometric_start() const { return value_; }
  const PosRational& geometric_ratio() const { return *ratio_; }
  const std::vector<UnitRational>& table_values() const { return values_; }
  const ParamSchedule& table_tail() const { return *tail_; }

  bool operator==(const ParamSchedule& o) const;

 private:
  Kind kind_ = Kind::constant;
  UnitRational value_;
  std::optional<PosRational> ratio_;
  std::vector<UnitRational> values_;
  std::shared_ptr<const ParamSchedule> tail_;
};

struct RateCheck {
  bool pass = true;
  // (delta, index) of the first violated claim.
  std::optional<std::pair<PosRational, std::uint64_t>> first_failure;
  std::uint64_t horizon = 0;
};

/// Finite certification that `rate` is a rate of convergence towards 0 for
/// the magnitude sequence `diffs`: for each delta with rate(delta) <=
/// horizon, checks diffs[n] <= delta for all n in [rate(delta), horizon].
/// Requires diffs.size() > horizon.
RateCheck check_rate(std::span<const UnitRational> diffs, const Rate& rate,
                     const std::vector<PosRational>& deltas,
                     std::uint64_t horizon, const Caps& caps);

}  // namespace metarate
