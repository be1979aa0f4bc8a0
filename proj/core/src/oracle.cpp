#include "metarate/oracle.hpp"

namespace metarate {

namespace {

// Window [N, N + g(N)] as machine indices; throws if xs cannot cover it.
std::uint64_t window_last(std::span<const UnitRational> xs, const CounterFunc& g,
                          std::uint64_t n) {
  const Nat end = g.window_end(Nat(n));
  if (!end.fits_u64() || end.to_u64() >= xs.size())
    throw DomainError("least_metastable: sequence too short for window at N=" +
                      std::to_string(n));
  return end.to_u64();
}

}  // namespace

MetastableScan least_metastable(std::span<const UnitRational> xs,
                                const PosRational& eps, const CounterFunc& g,
                                std::uint64_t search_cap,
                                bool collect_witnesses) {
  MetastableScan scan;
  for (std::uint64_t n = 0; n <= search_cap; ++n) {
    scan.searched_through = n;
    const std::uint64_t last = window_last(xs, g, n);
    std::uint64_t lo = n, hi = n;
    for (std::uint64_t i = n + 1; i <= last; ++i) {
      if (xs[i] < xs[lo]) lo = i;
      if (xs[i] > xs[hi]) hi = i;
    }
    const Rational gap = xs[hi].value() - xs[lo].value();
    if (gap <= eps.value()) {
      scan.least_n = n;
      return scan;
    }
    if (collect_witnesses)
      scan.witnesses.push_back(
          {n, std::min(lo, hi), std::max(lo, hi), gap});
  }
  return scan;
}

MetastableScan least_metastable_pairwise(std::span<const UnitRational> xs,
                                         const PosRational& eps,
                                         const CounterFunc& g,
                                         std::uint64_t search_cap,
                                         bool collect_witnesses) {
  MetastableScan scan;
  for (std::uint64_t n = 0; n <= search_cap; ++n) {
    scan.searched_through = n;
    const std::uint64_t last = window_last(xs, g, n);
    bool ok = true;
    for (std::uint64_t i = n; ok && i <= last; ++i) {
      for (std::uint64_t j = i + 1; j <= last; ++j) {
        const Rational gap = abs(xs[i].value() - xs[j].value());
        if (gap > eps.value()) {
          ok = false;
          if (collect_witnesses) scan.witnesses.push_back({n, i, j, gap});
          break;
        }
      }
    }
    if (ok) {
      scan.least_n = n;
      return scan;
    }
  }
  return scan;
}

Nat needed_horizon(const Nat& bound, const CounterFunc& g, const Caps& caps) {
  if (g.monotone()) return (g.window_end(bound) + Nat(1)).checked(caps);
  if (!bound.fits_u64() || bound.to_u64() > caps.iter_cap)
    throw CapExceeded("needed_horizon: full scan over non-monotone g too long");
  const std::uint64_t top = bound.to_u64();
  Nat best;
  for (std::uint64_t n = 0; n <= top; ++n) {
    const Nat end = g.window_end(Nat(n));
    if (end > best) best = end;
  }
  return (best + Nat(1)).checked(caps);
}

LemmaCheck check_step_contraction(const PwlFunction& f, const UnitRational& x,
                                  const UnitRational& t,
                                  const PosRational& delta) {
  if (!(delta.value() < Rational(1L)))
    throw DomainError("check_step_contraction: delta must lie in (0,1)");
  const PosRational lipschitz = f.lipschitz_constant();
  const Rational t_limit =
      (Rational(2L) - delta.value()) / (lipschitz.value() + Rational(1L));
  if (!(t.value() <= t_limit))
    return {CheckStatus::skipped_precondition,
            "t exceeds (2-delta)/(L+1) = " + t_limit.str(), 0};

  const UnitRational fx = f.eval(x);
  const UnitRational xstar =
      UnitRational(x.value() + t.value() * (fx.value() - x.value()));
  const UnitRational& lo = x < xstar ? x : xstar;
  const UnitRational& hi = x < xstar ? xstar : x;
  const Rational shrink = Rational(1L) - delta.value();

  LemmaCheck out;
  for (const auto& [p0, p1] : f.fixed_intervals_in(lo, hi)) {
    // |x*-p| - (1-delta)|x-p| is linear in p on a fixed interval, so the
    // endpoints decide the whole interval.
    for (const UnitRational& p : {p0, p1}) {
      ++out.checked_cases;
      const Rational left = abs(xstar.value() - p.value());
      const Rational right = shrink * abs(x.value() - p.value());
      if (!(left <= right)) {
        out.status = CheckStatus::fail;
        out.detail = "fixed point " + p.str() + ": |x*-p| = " + left.str() +
                     " > " + right.str();
        return out;
      }
    }
  }
  return out;
}

LemmaCheck check_switch_contraction(const IterationRun& run,
                                    const PosRational& delta) {
  if (run.scheme == Scheme::ishikawa)
    throw DomainError("check_switch_contraction: applies to KM runs");
  if (!(delta.value() < Rational(1L)))
    throw DomainError("check_switch_contraction: delta must lie in (0,1)");

  const PosRational lipschitz = run.f.lipschitz_constant();
  const Rational t_limit =
      (Rational(2L) - delta.value()) / (lipschitz.value() + Rational(1L));
  const Rational shrink = Rational(1L) - delta.value() / Rational(2L);
  const SwitchTrace trace = switching_sequence(run, run.xs.size());

  LemmaCheck out;
  std::uint64_t skipped = 0;
  for (std::size_t r = 1; r + 1 < trace.switches.size(); ++r) {
    const std::uint64_t n1 = trace.switches[r] - 1;
    const std::uint64_t n2 = trace.switches[r + 1] - 1;
    if (!(run.t.at(Nat(n1)).value() <= t_limit) ||
        !(run.t.at(Nat(n2)).value() <= t_limit)) {
      ++skipped;
      continue;
    }
    ++out.checked_cases;

    const Rational& a = run.xs[n1].value();
    const Rational& b = run.xs[n1 + 1].value();
    const Rational& blo = a < b ? a : b;
    const Rational& bhi = a < b ? b : a;
    for (std::uint64_t n = n1 + 1; n <= n2 + 1; ++n) {
      if (run.xs[n].value() < blo || run.xs[n].value() > bhi) {
        out.status = CheckStatus::fail;
        out.detail = "x_" + std::to_string(n) + " escapes [x_" +
                     std::to_string(n1) + ", x_" + std::to_string(n1 + 1) + "]";
        return out;
      }
    }

    const Rational head_gap = abs(a - b);
    const Rational tail_gap =
        abs(run.xs[n2].value() - run.xs[n2 + 1].value());
    if (!(tail_gap <= shrink * head_gap)) {
      out.status = CheckStatus::fail;
      out.detail = "contraction fails at switch pair r=" + std::to_string(r);
      return out;
    }
  }
  if (skipped > 0 && out.checked_cases == 0)
    return {CheckStatus::skipped_precondition,
            "all switch pairs violate the t precondition", 0};
  if (skipped > 0)
    out.detail = std::to_string(skipped) + " pair(s) skipped (t precondition)";
  return out;
}

}  // namespace metarate
