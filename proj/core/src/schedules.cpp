#include "metarate/schedules.hpp"

#include <algorithm>

namespace metarate {

CounterFunc CounterFunc::constant(Nat value) {
  return CounterFunc(std::make_shared<Node>(Node{Kind::constant, std::move(value), {}, {}, nullptr, nullptr}));
}

CounterFunc CounterFunc::identity() {
  return CounterFunc(std::make_shared<Node>(Node{Kind::identity, {}, {}, {}, nullptr, nullptr}));
}

CounterFunc CounterFunc::affine(Nat scale, Nat offset) {
  return CounterFunc(std::make_shared<Node>(
      Node{Kind::affine, std::move(scale), std::move(offset), {}, nullptr, nullptr}));
}

CounterFunc CounterFunc::table(std::vector<Nat> values, CounterFunc tail) {
  return CounterFunc(std::make_shared<Node>(
      Node{Kind::table, {}, {}, std::move(values), tail.node_, nullptr}));
}

CounterFunc CounterFunc::compose(CounterFunc outer, CounterFunc inner) {
  return CounterFunc(std::make_shared<Node>(
      Node{Kind::compose, {}, {}, {}, outer.node_, inner.node_}));
}

Nat CounterFunc::operator()(const Nat& n) const {
  switch (node_->kind) {
    case Kind::constant:
      return node_->a;
    case Kind::identity:
      return n;
    case Kind::affine:
      return node_->a * n + node_->b;
    case Kind::table: {
      if (n.fits_u64()) {
        const std::uint64_t i = n.to_u64();
        if (i < node_->values.size()) return node_->values[i];
      }
      return CounterFunc(node_->left)(n);
    }
    case Kind::compose:
      return CounterFunc(node_->left)(CounterFunc(node_->right)(n));
  }
  throw DomainError("CounterFunc: unknown kind");
}

Nat CounterFunc::window_end(const Nat& n) const { return n + (*this)(n); }

Nat CounterFunc::iterated_window_end(std::uint64_t k, const Caps& caps) const {
  if (k > caps.iter_cap)
    throw CapExceeded("iterated_window_end: iteration count exceeds cap");
  Nat v;
  for (std::uint64_t i = 0; i < k; ++i) v = window_end(v).checked(caps);
  return v;
}

bool CounterFunc::monotone() const {
  switch (node_->kind) {
    case Kind::constant:
    case Kind::identity:
    case Kind::affine:
      return true;
    case Kind::table:
      return false;  // not analyzed; callers fall back to a full scan
    case Kind::compose:
      return CounterFunc(node_->left).monotone() &&
             CounterFunc(node_->right).monotone();
  }
  return false;
}

bool CounterFunc::operator==(const CounterFunc& o) const {
  if (node_->kind != o.node_->kind) return false;
  switch (node_->kind) {
    case Kind::constant:
      return node_->a == o.node_->a;
    case Kind::identity:
      return true;
    case Kind::affine:
      return node_->a == o.node_->a && node_->b == o.node_->b;
    case Kind::table:
      return node_->values == o.node_->values &&
             CounterFunc(node_->left) == CounterFunc(o.node_->left);
    case Kind::compose:
      return CounterFunc(node_->left) == CounterFunc(o.node_->left) &&
             CounterFunc(node_->right) == CounterFunc(o.node_->right);
  }
  return false;
}

Rate Rate::harmonic() {
  Rate r;
  r.kind_ = Kind::harmonic;
  return r;
}

Rate Rate::geometric(PosRational ratio) {
  if (!(ratio.value() < Rational(1L)))
    throw DomainError("Rate::geometric: ratio must lie in (0,1)");
  Rate r;
  r.kind_ = Kind::geometric;
  r.ratio_ = std::move(ratio);
  return r;
}

Rate Rate::zero() { return Rate{}; }

Rate Rate::table(std::vector<std::pair<PosRational, Nat>> entries, Nat fallback) {
  Rate r;
  r.kind_ = Kind::table;
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return b.first < a.first; });
  r.entries_ = std::move(entries);
  r.fallback_ = std::move(fallback);
  return r;
}

Nat Rate::operator()(const PosRational& delta, const Caps& caps) const {
  switch (kind_) {
    case Kind::harmonic:
      return ceil_to_nat(delta.reciprocal());
    case Kind::geometric: {
      const std::int64_t k = ceil_log_base_lt1(*ratio_, delta, caps);
      return k <= 0 ? Nat() : Nat(static_cast<unsigned long>(k));
    }
    case Kind::zero:
      return Nat();
    case Kind::table: {
      // Entries are sorted by threshold descending; any threshold <= delta
      // yields a valid claim, and the smallest index wins.
      std::optional<Nat> best;
      for (const auto& [threshold, index] : entries_) {
        if (threshold.value() <= delta.value() &&
            (!best || index < *best))
          best = index;
      }
      return best ? *best : fallback_;
    }
  }
  throw DomainError("Rate: unknown kind");
}

bool Rate::operator==(const Rate& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::harmonic:
    case Kind::zero:
      return true;
    case Kind::geometric:
      return *ratio_ == *o.ratio_;
    case Kind::table:
      return entries_ == o.entries_ && fallback_ == o.fallback_;
  }
  return false;
}

ParamSchedule ParamSchedule::constant(UnitRational value) {
  ParamSchedule s;
  s.kind_ = Kind::constant;
  s.value_ = std::move(value);
  return s;
}

ParamSchedule ParamSchedule::harmonic() {
  ParamSchedule s;
  s.kind_ = Kind::harmonic;
  return s;
}

ParamSchedule ParamSchedule::geometric(UnitRational start, PosRational ratio) {
  if (ratio.value() > Rational(1L))
    throw DomainError("ParamSchedule::geometric: ratio must lie in (0,1]");
  ParamSchedule s;
  s.kind_ = Kind::geometric;
  s.value_ = std::move(start);
  s.ratio_ = std::move(ratio);
  return s;
}

ParamSchedule ParamSchedule::table(std::vector<UnitRational> values,
                                   ParamSchedule tail) {
  ParamSchedule s;
  s.kind_ = Kind::table;
  s.values_ = std::move(values);
  s.tail_ = std::make_shared<const ParamSchedule>(std::move(tail));
  return s;
}

UnitRational ParamSchedule::at(const Nat& n) const {
  switch (kind_) {
    case Kind::constant:
      return value_;
    case Kind::harmonic:
      return UnitRational(Rational(1L) / Rational(n + Nat(1)));
    case Kind::geometric: {
      const std::uint64_t e = n.to_u64();
      mpz_class pn, pd;
      mpz_pow_ui(pn.get_mpz_t(), ratio_->value().num().get_mpz_t(), e);
      mpz_pow_ui(pd.get_mpz_t(), ratio_->value().den().get_mpz_t(), e);
      return UnitRational(value_.value() *
                          Rational(Nat(std::move(pn)), Nat(std::move(pd))));
    }
    case Kind::table: {
      if (n.fits_u64()) {
        const std::uint64_t i = n.to_u64();
        if (i < values_.size()) return values_[i];
      }
      return tail_->at(n);
    }
  }
  throw DomainError("ParamSchedule: unknown kind");
}

UnitRational ParamSchedule::max_value() const {
  switch (kind_) {
    case Kind::constant:
      return value_;
    case Kind::harmonic:
      return UnitRational::one();  // attained at n = 0
    case Kind::geometric:
      return value_;  // ratio <= 1, so n = 0 dominates
    case Kind::table: {
      UnitRational best = tail_->max_value();
      for (const UnitRational& v : values_)
        if (v > best) best = v;
      return best;
    }
  }
  throw DomainError("ParamSchedule: unknown kind");
}

bool ParamSchedule::operator==(const ParamSchedule& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::constant:
      return value_ == o.value_;
    case Kind::harmonic:
      return true;
    case Kind::geometric:
      return value_ == o.value_ && *ratio_ == *o.ratio_;
    case Kind::table:
      return values_ == o.values_ && *tail_ == *o.tail_;
  }
  return false;
}

RateCheck check_rate(std::span<const UnitRational> diffs, const Rate& rate,
                     const std::vector<PosRational>& deltas,
                     std::uint64_t horizon, const Caps& caps) {
  if (diffs.size() <= horizon)
    throw DomainError("check_rate: sequence shorter than horizon");
  RateCheck out;
  out.horizon = horizon;
  for (const PosRational& delta : deltas) {
    const Nat start = rate(delta, caps);
    if (!start.fits_u64() || start.to_u64() > horizon) continue;  // uncheckable
    for (std::uint64_t n = start.to_u64(); n <= horizon; ++n) {
      if (!(diffs[n].value() <= delta.value())) {
        out.pass = false;
        out.first_failure = {delta, n};
        return out;
      }
    }
  }
  return out;
}

}  // namespace metarate
