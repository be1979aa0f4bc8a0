#include "metarate/iterations.hpp"

namespace metarate {

namespace {

// (1-w)a + w b, computed as a + w(b-a).
UnitRational convex(const UnitRational& a, const UnitRational& b,
                    const UnitRational& w) {
  return UnitRational(a.value() + w.value() * (b.value() - a.value()));
}

}  // namespace

IterationRun run_iteration(Scheme scheme, const PwlFunction& f,
                           const ParamSchedule& t,
                           const std::optional<ParamSchedule>& s,
                           const UnitRational& x0, std::uint64_t length,
                           const Caps& caps) {
  if (scheme == Scheme::ishikawa && !s)
    throw DomainError("run_iteration: ishikawa needs the second schedule");

  IterationRun run;
  run.scheme = scheme;
  run.f = f;
  run.t = scheme == Scheme::picard ? ParamSchedule::constant(UnitRational::one()) : t;
  run.s = scheme == Scheme::ishikawa ? s : std::nullopt;
  run.x0 = x0;
  extend_run(run, length, caps);
  return run;
}

void extend_run(IterationRun& run, std::uint64_t length, const Caps& caps) {
  if (length > caps.horizon)
    throw CapExceeded("extend_run: length exceeds horizon cap");
  if (length <= run.xs.size()) return;

  const bool ishikawa = run.scheme == Scheme::ishikawa;
  run.xs.reserve(length);
  if (ishikawa) run.ys.reserve(length);
  if (run.xs.empty()) {
    run.xs.push_back(run.x0);
    if (ishikawa)
      run.ys.push_back(convex(run.x0, run.f.eval(run.x0), run.s->at(Nat())));
  }
  // Invariant for ishikawa runs: ys[n] pairs xs[n] for every generated n.
  while (run.xs.size() < length) {
    const std::uint64_t n = run.xs.size() - 1;
    const UnitRational& x = run.xs.back();
    const UnitRational tn = run.t.at(Nat(n));
    if (ishikawa) {
      run.xs.push_back(convex(x, run.f.eval(run.ys[n]), tn));
      run.ys.push_back(convex(run.xs.back(), run.f.eval(run.xs.back()),
                              run.s->at(Nat(n + 1))));
    } else {
      run.xs.push_back(convex(x, run.f.eval(x), tn));
    }
  }
}

std::vector<int> sign_sequence(const IterationRun& run, std::size_t length) {
  if (run.xs.size() < length)
    throw DomainError("sign_sequence: run shorter than requested length");
  std::vector<int> sigma;
  sigma.reserve(length);
  if (length == 0) return sigma;
  sigma.push_back(1);
  for (std::size_t k = 1; k < length; ++k) {
    const Rational diff =
        run.f.eval(run.xs[k - 1]).value() - run.xs[k - 1].value();
    sigma.push_back(diff.sign() != 0 ? diff.sign() : sigma.back());
  }
  return sigma;
}

SwitchTrace switching_sequence(const IterationRun& run, std::size_t length) {
  if (run.xs.size() < length)
    throw DomainError("switching_sequence: run shorter than requested length");

  SwitchTrace trace;
  trace.sign = sign_sequence(run, length);
  trace.switches.push_back(0);
  if (length == 0) return trace;

  std::size_t cur = 0;
  while (cur + 1 < length) {
    const int target = -trace.sign[cur + 1];
    std::size_t k = cur + 1;
    while (k + 1 < length && trace.sign[k + 1] != target) ++k;
    if (k + 1 >= length) break;
    trace.switches.push_back(k);
    cur = k;
  }

  // Once the run hits an exact fixed point within the horizon it is
  // constant forever, so the sign sequence carries and no unseen switch can
  // exist beyond the horizon.
  trace.tail = SwitchTrace::Tail::none_within_horizon;
  for (std::size_t j = 0; j < length; ++j) {
    if (run.f.eval(run.xs[j]) == run.xs[j]) {
      trace.tail = SwitchTrace::Tail::provably_none;
      break;
    }
  }
  return trace;
}

}  // namespace metarate
