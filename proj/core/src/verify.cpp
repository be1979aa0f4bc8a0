#include "metarate/verify.hpp"

#include <algorithm>
#include <chrono>

#include "metarate/oracle.hpp"

namespace metarate {

namespace {

std::vector<PosRational> dedupe(std::vector<PosRational> v) {
  std::sort(v.begin(), v.end(),
            [](const PosRational& a, const PosRational& b) { return a < b; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void note(ScenarioResult& r, const std::string& check, bool ok,
          std::string result) {
  r.hypotheses.push_back({check, std::move(result), ok});
}

std::vector<UnitRational> step_gaps(const std::vector<UnitRational>& xs) {
  std::vector<UnitRational> out;
  if (xs.size() < 2) return out;
  out.reserve(xs.size() - 1);
  for (std::size_t n = 0; n + 1 < xs.size(); ++n)
    out.push_back(UnitRational(abs(xs[n].value() - xs[n + 1].value())));
  return out;
}

std::vector<UnitRational> stage_gaps(const IterationRun& run) {
  std::vector<UnitRational> out;
  out.reserve(run.ys.size());
  for (std::size_t n = 0; n < run.ys.size(); ++n)
    out.push_back(UnitRational(abs(run.xs[n].value() - run.ys[n].value())));
  return out;
}

// Generates the run at the oracle's horizon and scans for the least
// metastable window start. Fills outcome sound/failed/bound_only.
// Returns the run for further certification, or nullopt when skipped.
std::optional<IterationRun> oracle_phase(const Scenario& sc, const Caps& caps,
                                         Scheme scheme, ScenarioResult& r) {
  const Nat needed = needed_horizon(*r.bound, sc.g, caps);
  if (!needed.fits_u64() || needed.to_u64() > caps.horizon) {
    r.outcome = Outcome::bound_only;
    r.detail = "oracle skipped: needs " + needed.str() +
               " points, horizon cap is " + std::to_string(caps.horizon);
    return std::nullopt;
  }
  if (!r.bound->fits_u64() || r.bound->to_u64() > caps.search) {
    r.outcome = Outcome::bound_only;
    r.detail = "oracle skipped: bound " + r.bound->str() +
               " exceeds search cap " + std::to_string(caps.search);
    return std::nullopt;
  }

  IterationRun run = run_iteration(scheme, sc.f, sc.t, sc.s, sc.x0,
                                   needed.to_u64(), caps);
  const MetastableScan scan = least_metastable(
      run.xs, sc.epsilon, sc.g, r.bound->to_u64(), /*collect_witnesses=*/true);
  r.rejected_windows = scan.witnesses.size();
  if (scan.least_n) {
    r.least_n = scan.least_n;
    r.outcome = Outcome::sound;
  } else {
    r.outcome = Outcome::failed;
    r.detail = "soundness violated: no metastable window start <= bound " +
               r.bound->str();
  }
  return run;
}

// A rate hypothesis certified by exhaustive check up to the run horizon.
bool certify_rate(ScenarioResult& r, const std::string& name,
                  const std::vector<UnitRational>& gaps, const Rate& rate,
                  std::vector<PosRational> deltas, const Caps& caps) {
  if (gaps.size() < 2) {
    note(r, name, true, "certified (no steps within horizon)");
    return true;
  }
  const std::uint64_t horizon = gaps.size() - 1;
  const RateCheck rc = check_rate(gaps, rate, dedupe(std::move(deltas)),
                                  horizon, caps);
  if (rc.pass) {
    note(r, name, true, "certified to horizon " + std::to_string(horizon));
    return true;
  }
  note(r, name, false,
       "fails at delta=" + rc.first_failure->first.str() +
           ", n=" + std::to_string(rc.first_failure->second));
  r.outcome = Outcome::skipped;
  r.detail = "hypothesis: " + name + " is not a rate of convergence here";
  return false;
}

void verify_ladder_theorem(const Scenario& sc, const Caps& caps,
                           ScenarioResult& r) {
  const bool ishikawa = sc.theorem == Theorem::ishikawa;

  const ModulusCheck mc =
      check_modulus(sc.f, *sc.omega, {PosRational(Rational(1L)), sc.epsilon});
  if (!mc.pass) {
    note(r, "modulus", false,
         "fails at delta=" + mc.first_failing_delta->str());
    r.outcome = Outcome::skipped;
    r.detail = "hypothesis: omega is not a modulus of uniform continuity for f";
    return;
  }
  note(r, "modulus", true, "pass");

  LadderTrace trace =
      ishikawa ? ishikawa_bound(sc.epsilon, sc.g, *sc.omega, *sc.beta,
                                *sc.gamma, caps)
               : km_bound(sc.epsilon, sc.g, *sc.omega, *sc.beta, caps);
  r.bound = trace.bound;
  std::vector<PosRational> beta_deltas = trace.rate_args;
  beta_deltas.push_back(trace.diff_threshold);
  std::vector<PosRational> gamma_deltas = trace.rate_args;
  r.trace = std::move(trace);

  const auto run = oracle_phase(sc, caps, ishikawa ? Scheme::ishikawa : Scheme::km, r);
  if (!run) return;

  // Certification failures downgrade the verdict to a skip even when the
  // oracle already ran; a sound verdict must rest on certified hypotheses.
  const Outcome verdict = r.outcome;
  const std::string verdict_detail = r.detail;
  if (!certify_rate(r, "beta-rate", step_gaps(run->xs), *sc.beta,
                    std::move(beta_deltas), caps))
    return;
  if (ishikawa &&
      !certify_rate(r, "gamma-rate", stage_gaps(*run), *sc.gamma,
                    std::move(gamma_deltas), caps))
    return;
  r.outcome = verdict;
  r.detail = verdict_detail;
}

void verify_lipschitz_theorem(const Scenario& sc, const Caps& caps,
                              ScenarioResult& r) {
  const PosRational lipschitz = sc.f.lipschitz_constant();
  const Rational t_limit = (Rational(2L) - sc.delta->value()) /
                           (lipschitz.value() + Rational(1L));
  const UnitRational t_max = sc.t.max_value();
  if (!(t_max.value() <= t_limit)) {
    note(r, "t-bound", false,
         "max t = " + t_max.str() + " > (2-delta)/(L+1) = " + t_limit.str());
    r.outcome = Outcome::skipped;
    r.detail = "hypothesis: parameter schedule exceeds (2-delta)/(L+1)";
    return;
  }
  note(r, "t-bound", true,
       "max t = " + t_max.str() + " <= (2-delta)/(L+1) = " + t_limit.str());

  SwitchBoundTrace trace = lipschitz_bound(sc.epsilon, sc.g, *sc.delta, caps);
  if (trace.eps_at_least_one)
    note(r, "epsilon", true, "epsilon >= 1: formula degenerate, indices clamped");
  r.bound = trace.bound;
  r.trace = std::move(trace);

  const auto run = oracle_phase(sc, caps, Scheme::km, r);
  if (!run) return;

  const LemmaCheck lemma = check_switch_contraction(*run, *sc.delta);
  switch (lemma.status) {
    case CheckStatus::pass:
      note(r, "switch-contraction", true,
           "pass (" + std::to_string(lemma.checked_cases) + " switch pairs)");
      break;
    case CheckStatus::skipped_precondition:
      note(r, "switch-contraction", true, "skipped: " + lemma.detail);
      break;
    case CheckStatus::fail:
      note(r, "switch-contraction", false, lemma.detail);
      r.outcome = Outcome::failed;
      r.detail = "switch-contraction lemma violated: " + lemma.detail;
      break;
  }
}

void verify_monotone_theorem(const Scenario& sc, const Caps& caps,
                             ScenarioResult& r) {
  if (!sc.f.is_nondecreasing()) {
    note(r, "monotone-f", false, "f has a negative slope");
    r.outcome = Outcome::skipped;
    r.detail = "hypothesis: f is not nondecreasing";
    return;
  }
  note(r, "monotone-f", true, "all slopes nonnegative");

  r.bound = monotone_bound(sc.epsilon, sc.g, caps);

  const auto run = oracle_phase(sc, caps, Scheme::km, r);
  if (!run) return;

  const auto& xs = run->xs;
  bool up = true, down = true;
  for (std::size_t n = 0; n + 1 < xs.size(); ++n) {
    up = up && xs[n] <= xs[n + 1];
    down = down && xs[n] >= xs[n + 1];
  }
  if (up || down) {
    note(r, "run-monotone", true, up ? "nondecreasing" : "nonincreasing");
  } else {
    note(r, "run-monotone", false, "generated run is not monotone");
    r.outcome = Outcome::skipped;
    r.detail = "hypothesis: generated run is not monotone";
  }
}

}  // namespace

ScenarioResult verify_scenario(const Scenario& scenario, const Caps& base_caps) {
  const auto start = std::chrono::steady_clock::now();
  const Caps caps =
      scenario.caps ? scenario.caps->apply(base_caps) : base_caps;

  ScenarioResult r;
  r.id = scenario.id;
  r.theorem = scenario.theorem;
  r.epsilon = scenario.epsilon;

  try {
    switch (scenario.theorem) {
      case Theorem::km:
      case Theorem::ishikawa:
        verify_ladder_theorem(scenario, caps, r);
        break;
      case Theorem::lipschitz:
        verify_lipschitz_theorem(scenario, caps, r);
        break;
      case Theorem::fmcp:
        verify_monotone_theorem(scenario, caps, r);
        break;
    }
  } catch (const CapExceeded& e) {
    r.outcome = Outcome::bound_only;
    r.detail = std::string("bound too large to verify: ") + e.what();
  } catch (const std::exception& e) {
    r.outcome = Outcome::failed;
    r.detail = std::string("internal error: ") + e.what();
  }

  r.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return r;
}

}  // namespace metarate
