#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "metarate/bounds.hpp"
#include "metarate/iterations.hpp"
#include "metarate/pwl.hpp"

namespace metarate {

enum class Theorem { fmcp, km, ishikawa, lipschitz };

std::string theorem_name(Theorem t);
Theorem theorem_from_name(const std::string& name);

/// Per-scenario overrides of the base resource caps.
struct CapsPatch {
  std::optional<unsigned> nat_bits;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> search;

  Caps apply(Caps base) const {
    if (nat_bits) base.nat_bits = *nat_bits;
    if (horizon) base.horizon = *horizon;
    if (search) base.search = *search;
    return base;
  }
};

/// One bound-verification job. Which optional fields must be present is
/// decided by the theorem and enforced when parsing:
///   km:        omega, beta
///   ishikawa:  s, omega, beta, gamma
///   lipschitz: delta
///   fmcp:      none of the above
struct Scenario {
  std::string id;
  Theorem theorem = Theorem::km;
  PwlFunction f = PwlFunction::identity();
  UnitRational x0;
  PosRational epsilon{1, 2};
  CounterFunc g = CounterFunc::constant(Nat(0));
  ParamSchedule t = ParamSchedule::harmonic();
  std::optional<ParamSchedule> s;
  std::optional<Modulus> omega;
  std::optional<Rate> beta;
  std::optional<Rate> gamma;
  std::optional<PosRational> delta;
  std::optional<CapsPatch> caps;
};

enum class Outcome { sound, failed, skipped, bound_only };

std::string outcome_name(Outcome o);

struct HypothesisEntry {
  std::string check;
  std::string result;
  bool ok = true;
};

struct ScenarioResult {
  std::string id;
  Theorem theorem = Theorem::km;
  Outcome outcome = Outcome::skipped;
  std::string detail;
  PosRational epsilon{1, 2};
  std::optional<Nat> bound;
  std::variant<std::monostate, LadderTrace, SwitchBoundTrace> trace;
  std::vector<HypothesisEntry> hypotheses;
  std::optional<std::uint64_t> least_n;
  std::uint64_t rejected_windows = 0;
  std::optional<double> wall_ms;
};

struct ReportSummary {
  std::uint64_t total = 0;
  std::uint64_t sound = 0;
  std::uint64_t failed = 0;
  std::uint64_t skipped = 0;
  std::uint64_t bound_only = 0;
};

struct Report {
  std::vector<ScenarioResult> results;  // kept sorted by scenario id
  ReportSummary summary() const;
};

/// Parses a scenario file; throws DomainError with a field path on any
/// malformed or missing entry. Scenario ids must be unique.
std::vector<Scenario> parse_scenarios(const std::string& json_text);

/// Canonical serialization: fixed key order, two-space indent, trailing
/// newline. parse . serialize is the identity on canonical files.
std::string serialize_scenarios(const std::vector<Scenario>& scenarios);

/// Report JSON; wall-clock entries appear only when include_timings is set
/// so that default reports are byte-identical across runs.
std::string serialize_report(const Report& report, bool include_timings = false);

/// Full trace of one bound computation as JSON (big integers as decimal
/// strings, rationals as "num/den").
std::string trace_to_json(const ScenarioResult& result);

/// Iteration run as JSON with exact "num/den" rationals.
std::string run_to_json(const IterationRun& run);

/// CSV rows (scenario id, epsilon, bound, least_N, ratio). ratio is the
/// exact rational least_N/bound; "0/0 exact" when the bound is 0; empty
/// for scenarios without an oracle verdict.
std::string plot_csv(const Report& report);

}  // namespace metarate
