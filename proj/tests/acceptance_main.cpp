// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Everything is exact arithmetic; no tolerances appear anywhere.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "metarate/bounds.hpp"
#include "metarate/corpus.hpp"
#include "metarate/oracle.hpp"
#include "metarate/runner.hpp"
#include "metarate/scenario.hpp"
#include "metarate/verify.hpp"

using namespace metarate;

namespace {

int g_failures = 0;
int g_checks = 0;

void expect(bool ok, const std::string& what) {
  ++g_checks;
  if (!ok) {
    ++g_failures;
    std::cout << "       [check failed] " << what << "\n";
  }
}

void criterion(int number, bool ok, const std::string& label) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
            << label << "\n";
  if (!ok) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

const Caps kCaps;

PwlFunction reflection() {
  return PwlFunction({{UnitRational::zero(), UnitRational::one()},
                      {UnitRational::one(), UnitRational::zero()}});
}

PwlFunction tent() {
  return PwlFunction({{UnitRational::zero(), UnitRational::zero()},
                      {UnitRational(1, 2), UnitRational::one()},
                      {UnitRational::one(), UnitRational::zero()}});
}

bool hypothesis_ok(const ScenarioResult& r, const std::string& name,
                   bool* found = nullptr) {
  for (const HypothesisEntry& h : r.hypotheses) {
    if (h.check == name) {
      if (found) *found = true;
      return h.ok;
    }
  }
  if (found) *found = false;
  return true;
}

// ---- criterion 1: bound fixture exactness ----

bool run_criterion_1() {
  const int before = g_failures;
  const Timer timer;

  const Modulus w1{PosRational(1, 1)};
  const LadderTrace km = km_bound(PosRational(1, 2), CounterFunc::constant(Nat(0)),
                                  w1, Rate::harmonic(), kCaps);
  expect(km.bound == Nat(336), "km bound fixture = 336, got " + km.bound.str());

  const LadderTrace ish =
      ishikawa_bound(PosRational(1, 2), CounterFunc::constant(Nat(0)), w1,
                     Rate::zero(), Rate::zero(), kCaps);
  expect(ish.bound == Nat(288),
         "ishikawa bound fixture = 288, got " + ish.bound.str());

  const SwitchBoundTrace lip = lipschitz_bound(
      PosRational(1, 2), CounterFunc::constant(Nat(1)), PosRational(1, 2), kCaps);
  expect(lip.bound == Nat(54),
         "lipschitz bound fixture = 54, got " + lip.bound.str());

  const Nat fmcp =
      monotone_bound(PosRational(1, 2), CounterFunc::affine(Nat(1), Nat(1)), kCaps);
  expect(fmcp == Nat(3), "monotone bound fixture = 3, got " + fmcp.str());

  expect(timer.seconds() < 1.0, "fixtures must evaluate in under 1 s");
  return g_failures == before;
}

// ---- soundness corpora ----

struct CorpusOutcome {
  std::vector<Scenario> scenarios;
  Report report;
};

CorpusOutcome run_corpus(std::uint64_t seed, std::uint64_t count,
                         Theorem theorem) {
  CorpusOutcome out;
  out.scenarios = generate_corpus(seed, count, theorem);
  RunOptions options;
  options.jobs = 2;
  out.report = run_scenarios(out.scenarios, options);
  return out;
}

bool check_all_sound(const CorpusOutcome& c, const std::string& label) {
  const int before = g_failures;
  const ReportSummary s = c.report.summary();
  expect(s.failed == 0, label + ": failed count must be 0, got " +
                            std::to_string(s.failed));
  expect(s.sound + s.skipped + s.bound_only + s.failed == s.total,
         label + ": outcome counts must partition the corpus");
  expect(s.sound * 2 >= s.total,
         label + ": most scenarios should reach a sound verdict (" +
             std::to_string(s.sound) + "/" + std::to_string(s.total) + ")");
  for (const ScenarioResult& r : c.report.results) {
    if (r.outcome != Outcome::sound) continue;
    expect(r.least_n.has_value() && r.bound.has_value() &&
               Nat(*r.least_n) <= *r.bound,
           label + ": " + r.id + " sound verdict must carry least_N <= bound");
  }
  return g_failures == before;
}

bool run_criterion_2(CorpusOutcome& out) {
  const int before = g_failures;
  const Timer timer;
  out = run_corpus(2001, 200, Theorem::km);

  for (const Scenario& sc : out.scenarios) {
    expect(sc.f.lipschitz_constant() <= PosRational(8, 1),
           "km corpus: generator promised L <= 8");
    expect(sc.epsilon == PosRational(1, 2) || sc.epsilon == PosRational(1, 3),
           "km corpus: epsilon drawn from {1/2, 1/3}");
  }
  check_all_sound(out, "km corpus");
  const double secs = timer.seconds();
  std::cout << "       km corpus: 200 scenarios in " << secs << " s\n";
  expect(secs < 120.0, "km corpus must finish within 2 minutes");
  return g_failures == before;
}

bool run_criterion_3(CorpusOutcome& out) {
  const int before = g_failures;
  out = run_corpus(3001, 100, Theorem::ishikawa);
  check_all_sound(out, "ishikawa corpus");

  // The s = 0 subset must agree point-for-point with the km generator.
  std::size_t zero_stage = 0;
  for (const Scenario& sc : out.scenarios) {
    if (!sc.s || !(sc.s->max_value() == UnitRational::zero())) continue;
    ++zero_stage;
    const IterationRun ish =
        run_iteration(Scheme::ishikawa, sc.f, sc.t, sc.s, sc.x0, 400, kCaps);
    const IterationRun km =
        run_iteration(Scheme::km, sc.f, sc.t, std::nullopt, sc.x0, 400, kCaps);
    bool equal = true;
    for (std::size_t n = 0; n < 400; ++n) equal = equal && ish.xs[n] == km.xs[n];
    expect(equal, "ishikawa s=0 scenario " + sc.id +
                      " must reproduce the km sequence exactly");
  }
  expect(zero_stage > 0, "ishikawa corpus must contain s = 0 scenarios");
  return g_failures == before;
}

bool run_criterion_4(CorpusOutcome& out) {
  const int before = g_failures;
  out = run_corpus(4001, 200, Theorem::lipschitz);

  // Crafted switching-heavy scenario so the lemma check is never vacuous:
  // on the tent's falling segment the update overshoots the fixed point 2/3
  // whenever t * 3 > 1, so t = 1/2 = (2-delta)/(L+1) alternates sides at
  // every step while satisfying the parameter hypothesis with equality.
  Scenario zigzag;
  zigzag.id = "lipschitz-zigzag";
  zigzag.theorem = Theorem::lipschitz;
  zigzag.f = tent();
  zigzag.x0 = UnitRational(1, 8);
  zigzag.epsilon = PosRational(1, 2);
  zigzag.g = CounterFunc::constant(Nat(1));
  zigzag.t = ParamSchedule::constant(UnitRational(1, 2));
  zigzag.delta = PosRational(1, 2);
  out.scenarios.push_back(zigzag);
  out.report.results.push_back(verify_scenario(zigzag, kCaps));

  check_all_sound(out, "lipschitz corpus");

  std::uint64_t pairs = 0;
  for (const ScenarioResult& r : out.report.results) {
    bool found = false;
    const bool ok = hypothesis_ok(r, "switch-contraction", &found);
    if (r.outcome == Outcome::sound || r.outcome == Outcome::failed) {
      expect(found, "lipschitz " + r.id + " must run the switch-contraction check");
      expect(ok, "lipschitz " + r.id + " switch-contraction must pass");
    }
  }
  // Count switch pairs on the crafted run directly.
  const IterationRun run = run_iteration(Scheme::km, zigzag.f, zigzag.t,
                                         std::nullopt, zigzag.x0, 300, kCaps);
  const LemmaCheck lemma = check_switch_contraction(run, *zigzag.delta);
  expect(lemma.status == CheckStatus::pass, "zigzag switch-contraction passes");
  pairs += lemma.checked_cases;
  expect(pairs > 0, "switch-contraction must check at least one pair");
  return g_failures == before;
}

bool run_criterion_5(CorpusOutcome& out) {
  const int before = g_failures;
  out = run_corpus(5001, 100, Theorem::fmcp);
  check_all_sound(out, "monotone corpus");
  for (const ScenarioResult& r : out.report.results) {
    if (r.outcome != Outcome::sound) continue;
    bool found = false;
    const bool ok = hypothesis_ok(r, "run-monotone", &found);
    expect(found && ok, "fmcp " + r.id + " run must certify monotone");
  }
  return g_failures == before;
}

// ---- criterion 6: proof-step trace invariants ----

void check_ladder_invariants(const Scenario& sc, const LadderTrace& t) {
  const bool ishikawa = sc.theorem == Theorem::ishikawa;
  const Nat m = ceil_to_nat(PosRational(Rational(6L)) / sc.epsilon);
  expect(t.subintervals == m, sc.id + ": trace grid size");
  expect(t.diff_threshold == PosRational(Rational(Nat(1), Nat(4) * m)),
         sc.id + ": trace step threshold");
  expect(t.ladder.size() == 2 * m.to_u64() * m.to_u64() + 1,
         sc.id + ": ladder length 2m^2+1");
  expect(t.ladder.front() == (*sc.beta)(t.diff_threshold, kCaps),
         sc.id + ": ladder starts at beta(c)");
  expect(t.bound == t.ladder.back(), sc.id + ": bound is the last rung");

  for (std::size_t n = 0; n + 1 < t.ladder.size(); ++n) {
    const Nat& u = t.ladder[n];
    const Nat& next = t.ladder[n + 1];
    expect(next > u + sc.g(u), sc.id + ": rung " + std::to_string(n) +
                                   " must exceed the window end");

    // Recompute the tolerance handed to the rates, straight from the
    // definitions.
    PosRational expected = [&] {
      if (!ishikawa) {
        const PosRational a(Rational(Nat(1), max(Nat(1), Nat(12) * m * sc.g(u))));
        return min(a, (*sc.omega)(a));
      }
      const PosRational b(Rational(Nat(1), max(Nat(1), Nat(8) * m * sc.g(u))));
      const PosRational z = min(b, (*sc.omega)(b));
      const PosRational z3 = z / PosRational(3, 1);
      return min(z3, (*sc.omega)(z3)) / PosRational(2, 1);
    }();
    expect(t.rate_args[n] == expected,
           sc.id + ": rate tolerance at rung " + std::to_string(n));
    expect((*sc.beta)(t.rate_args[n], kCaps) <= next,
           sc.id + ": beta lower-bound fact at rung " + std::to_string(n));
    if (ishikawa)
      expect((*sc.gamma)(t.rate_args[n], kCaps) <= next,
             sc.id + ": gamma lower-bound fact at rung " + std::to_string(n));
  }
}

void check_switch_invariants(const Scenario& sc, const SwitchBoundTrace& t) {
  for (std::size_t n = 0; n + 1 < t.anchors.size(); ++n)
    expect(t.anchors[n] <= t.anchors[n + 1],
           sc.id + ": anchors nondecreasing at " + std::to_string(n));
  expect(t.bound == t.anchors.back(), sc.id + ": bound is the last anchor");

  // (1 - delta/2)^(T-1) <= eps, exact.
  const Rational base = Rational(1L) - sc.delta->value() / Rational(2L);
  Rational pow(1L);
  for (std::int64_t i = 0; i + 1 < t.contraction_steps; ++i) pow = pow * base;
  expect(pow <= sc.epsilon.value(), sc.id + ": contraction depth reaches eps");

  // Budget formula: B = T + window_end(P_T) + 1.
  const std::uint64_t t_index =
      t.contraction_steps > 0 ? static_cast<std::uint64_t>(t.contraction_steps) : 0;
  if (t_index < t.anchors.size()) {
    mpz_class budget =
        sc.g.window_end(t.anchors[t_index]).raw() + 1 + t.contraction_steps;
    expect(Nat(budget) == t.switch_budget, sc.id + ": switch budget formula");
  }
  expect(t.anchors.size() == t.switch_budget.to_u64() + 1,
         sc.id + ": anchor list has B+1 entries");
}

bool run_criterion_6(const std::vector<const CorpusOutcome*>& corpora) {
  const int before = g_failures;
  std::size_t ladders = 0, switches = 0;
  for (const CorpusOutcome* c : corpora) {
    std::map<std::string, const Scenario*> by_id;
    for (const Scenario& sc : c->scenarios) by_id[sc.id] = &sc;
    for (const ScenarioResult& r : c->report.results) {
      const Scenario* sc = by_id.at(r.id);
      if (std::holds_alternative<LadderTrace>(r.trace)) {
        ++ladders;
        check_ladder_invariants(*sc, std::get<LadderTrace>(r.trace));
      } else if (std::holds_alternative<SwitchBoundTrace>(r.trace)) {
        ++switches;
        check_switch_invariants(*sc, std::get<SwitchBoundTrace>(r.trace));
      }
    }
  }
  expect(ladders > 0 && switches > 0,
         "trace invariants must cover both recursion families");
  std::cout << "       checked " << ladders << " ladder traces and " << switches
            << " switch-budget traces\n";
  return g_failures == before;
}

// ---- criterion 7: oracle cross-validation ----

bool run_criterion_7() {
  const int before = g_failures;
  // 50 seeded scenarios with horizon <= 1000: extrema-based and pairwise
  // scanners must agree exactly on the least metastable index.
  const auto scenarios = generate_corpus(7001, 50, Theorem::km);
  for (const Scenario& sc : scenarios) {
    const IterationRun run =
        run_iteration(Scheme::km, sc.f, sc.t, std::nullopt, sc.x0, 1000, kCaps);
    // Search as far as the 1000-point horizon allows.
    const Nat top = sc.g.window_end(Nat(900));
    const std::uint64_t cap = top.to_u64() < 999 ? 900 : 0;
    const auto fast = least_metastable(run.xs, sc.epsilon, sc.g, cap);
    const auto naive = least_metastable_pairwise(run.xs, sc.epsilon, sc.g, cap);
    expect(fast.least_n == naive.least_n,
           sc.id + ": extrema and pairwise scans must agree");
  }
  return g_failures == before;
}

// ---- criterion 8: hypothesis honesty ----

bool run_criterion_8() {
  const int before = g_failures;

  Scenario osc;
  osc.id = "oscillator";
  osc.theorem = Theorem::lipschitz;
  osc.f = reflection();
  osc.x0 = UnitRational::zero();
  osc.epsilon = PosRational(1, 2);
  osc.g = CounterFunc::constant(Nat(1));
  osc.t = ParamSchedule::constant(UnitRational::one());
  osc.delta = PosRational(1, 2);

  const ScenarioResult r = verify_scenario(osc, kCaps);
  expect(r.outcome == Outcome::skipped,
         "oscillator must be reported skipped (hypothesis), got " +
             outcome_name(r.outcome));
  expect(!hypothesis_ok(r, "t-bound"), "oscillator t-bound check must fail");

  // And the oracle confirms the sequence really is never metastable here.
  const IterationRun run = run_iteration(Scheme::km, osc.f, osc.t, std::nullopt,
                                         osc.x0, 502, kCaps);
  const auto scan =
      least_metastable(run.xs, osc.epsilon, osc.g, 500, /*collect=*/false);
  expect(!scan.least_n.has_value(),
         "oscillator has no metastable window start up to the search cap");
  expect(scan.searched_through == 500, "oracle searched the full cap");
  return g_failures == before;
}

// ---- criterion 9: determinism ----

bool run_criterion_9() {
  const int before = g_failures;
  for (Theorem theorem : {Theorem::km, Theorem::ishikawa, Theorem::lipschitz,
                          Theorem::fmcp}) {
    const std::string a = serialize_scenarios(generate_corpus(1, 50, theorem));
    const std::string b = serialize_scenarios(generate_corpus(1, 50, theorem));
    expect(a == b, theorem_name(theorem) + " corpus generation is deterministic");
  }

  const auto scenarios = generate_corpus(9001, 20, Theorem::km);
  RunOptions sequential;
  const std::string r1 = serialize_report(run_scenarios(scenarios, sequential));
  const std::string r2 = serialize_report(run_scenarios(scenarios, sequential));
  expect(r1 == r2, "single-threaded verification reports are byte-identical");

  RunOptions parallel;
  parallel.jobs = 2;
  const std::string r3 = serialize_report(run_scenarios(scenarios, parallel));
  expect(r1 == r3, "parallel verification matches the sequential report");
  return g_failures == before;
}

}  // namespace

int main() {
  std::cout << "metastability-rate acceptance suite\n";
  const Timer total;

  criterion(1, run_criterion_1(), "bound-fixture exactness (336 / 288 / 54 / 3)");

  CorpusOutcome km_corpus, ish_corpus, lip_corpus, fmcp_corpus;
  criterion(2, run_criterion_2(km_corpus), "soundness corpus, km scheme (200)");
  criterion(3, run_criterion_3(ish_corpus),
            "soundness corpus, ishikawa scheme (100) + s=0 agreement");
  criterion(4, run_criterion_4(lip_corpus),
            "soundness corpus, lipschitz scheme (200) + switch-contraction");
  criterion(5, run_criterion_5(fmcp_corpus),
            "monotone-map corpus (100), monotone runs, iterated window bound");
  criterion(6,
            run_criterion_6({&km_corpus, &ish_corpus, &lip_corpus, &fmcp_corpus}),
            "proof-step trace invariants, zero violations");
  criterion(7, run_criterion_7(), "oracle cross-validation on 50 scenarios");
  criterion(8, run_criterion_8(), "hypothesis honesty for the 0,1 oscillator");
  criterion(9, run_criterion_9(), "determinism of gen and verify");

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT")
            << " (" << g_checks << " checks, " << g_failures << " failures, "
            << total.seconds() << " s)\n";
  return g_failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
