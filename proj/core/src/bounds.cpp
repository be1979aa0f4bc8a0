#include "metarate/bounds.hpp"

namespace metarate {

namespace {

// Number of ladder steps, 2m^2, as a machine count.
std::uint64_t ladder_steps(const Nat& m, const Caps& caps) {
  const Nat steps = Nat(2) * m * m;
  if (!steps.fits_u64() || steps.to_u64() > caps.iter_cap)
    throw CapExceeded("bound trace length exceeds iteration cap");
  return steps.to_u64();
}

PosRational unit_over(const Nat& d) {
  return PosRational(Rational(Nat(1), d));
}

}  // namespace

Nat monotone_bound(const PosRational& eps, const CounterFunc& g,
                   const Caps& caps) {
  const Nat k = ceil_to_nat(eps.reciprocal());
  return g.iterated_window_end(k.to_u64(), caps);
}

LadderTrace km_bound(const PosRational& eps, const CounterFunc& g,
                     const Modulus& omega, const Rate& beta, const Caps& caps) {
  LadderTrace trace;
  const Nat m = ceil_to_nat(PosRational(Rational(6L)) / eps);
  trace.subintervals = m;
  trace.diff_threshold = unit_over(Nat(4) * m);

  const std::uint64_t steps = ladder_steps(m, caps);
  trace.ladder.reserve(steps + 1);
  trace.rate_args.reserve(steps);
  trace.ladder.push_back(beta(trace.diff_threshold, caps).checked(caps));

  const Nat twelve_m = Nat(12) * m;
  for (std::uint64_t n = 0; n < steps; ++n) {
    const Nat& u = trace.ladder.back();
    const PosRational a = unit_over(max(Nat(1), twelve_m * g(u)));
    const PosRational c = min(a, omega(a));
    const Nat next = max(u + g(u) + Nat(1), beta(c, caps)).checked(caps);
    trace.rate_args.push_back(c);
    trace.ladder.push_back(next);
  }
  trace.bound = trace.ladder.back();
  return trace;
}

LadderTrace ishikawa_bound(const PosRational& eps, const CounterFunc& g,
                           const Modulus& omega, const Rate& beta,
                           const Rate& gamma, const Caps& caps) {
  LadderTrace trace;
  const Nat m = ceil_to_nat(PosRational(Rational(6L)) / eps);
  trace.subintervals = m;
  trace.diff_threshold = unit_over(Nat(4) * m);

  const std::uint64_t steps = ladder_steps(m, caps);
  trace.ladder.reserve(steps + 1);
  trace.rate_args.reserve(steps);
  trace.ladder.push_back(beta(trace.diff_threshold, caps).checked(caps));

  const Nat eight_m = Nat(8) * m;
  const PosRational three(Rational(3L));
  const PosRational two(Rational(2L));
  for (std::uint64_t n = 0; n < steps; ++n) {
    const Nat& u = trace.ladder.back();
    const PosRational b = unit_over(max(Nat(1), eight_m * g(u)));
    const PosRational z = min(b, omega(b));
    const PosRational z3 = z / three;
    const PosRational c = min(z3, omega(z3));
    const PosRational half_c = c / two;
    const Nat next =
        max(u + g(u) + Nat(1), max(beta(half_c, caps), gamma(half_c, caps)))
            .checked(caps);
    trace.rate_args.push_back(half_c);
    trace.ladder.push_back(next);
  }
  trace.bound = trace.ladder.back();
  return trace;
}

SwitchBoundTrace lipschitz_bound(const PosRational& eps, const CounterFunc& g,
                                 const PosRational& delta, const Caps& caps) {
  if (!(delta.value() < Rational(1L)))
    throw DomainError("lipschitz_bound: delta must lie in (0,1)");

  SwitchBoundTrace trace;
  trace.eps_at_least_one = eps.value() >= Rational(1L);

  const std::uint64_t k = ceil_to_nat(eps.reciprocal()).to_u64();
  if (k + 1 > caps.iter_cap)
    throw CapExceeded("lipschitz_bound: inner iteration count exceeds cap");

  // One anchor step: the window-end map of n |-> g(anchor + n) iterated
  // k+1 times from 0.
  auto increment = [&](const Nat& anchor) {
    Nat v;
    for (std::uint64_t i = 0; i <= k; ++i) v = (v + g(anchor + v)).checked(caps);
    return v;
  };

  std::vector<Nat>& anchors = trace.anchors;
  anchors.push_back(Nat());
  auto anchor_at = [&](std::uint64_t i) -> const Nat& {
    while (anchors.size() <= i) {
      if (anchors.size() > caps.iter_cap)
        throw CapExceeded("lipschitz_bound: anchor count exceeds cap");
      anchors.push_back((anchors.back() + increment(anchors.back())).checked(caps));
    }
    return anchors[i];
  };

  const PosRational base(Rational(1L) - delta.value() / Rational(2L));
  trace.contraction_steps = ceil_log_base_lt1(base, eps, caps) + 1;

  // For eps >= 1 the step count can drop to zero or below; the formula is
  // evaluated with the anchor index floored at 0 and the budget at 0.
  const std::uint64_t t_index =
      trace.contraction_steps > 0
          ? static_cast<std::uint64_t>(trace.contraction_steps)
          : 0;
  const Nat anchor_t = anchor_at(t_index);  // copy: anchor_at may reallocate

  mpz_class budget = anchor_t.raw() + g(anchor_t).raw() + 1;
  budget += trace.contraction_steps;
  if (sgn(budget) < 0) budget = 0;
  trace.switch_budget = Nat(budget);

  anchor_at(trace.switch_budget.to_u64());
  trace.bound = anchors.back();
  return trace;
}

}  // namespace metarate
