#include "metarate/scenario.hpp"

#include <json.hpp>

namespace metarate {

using json = nlohmann::ordered_json;

std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::fmcp:
      return "fmcp";
    case Theorem::km:
      return "km";
    case Theorem::ishikawa:
      return "ishikawa";
    case Theorem::lipschitz:
      return "lipschitz";
  }
  throw DomainError("theorem_name: unknown theorem");
}

Theorem theorem_from_name(const std::string& name) {
  if (name == "fmcp") return Theorem::fmcp;
  if (name == "km") return Theorem::km;
  if (name == "ishikawa") return Theorem::ishikawa;
  if (name == "lipschitz") return Theorem::lipschitz;
  throw DomainError("unknown theorem: " + name);
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::sound:
      return "sound";
    case Outcome::failed:
      return "failed";
    case Outcome::skipped:
      return "skipped";
    case Outcome::bound_only:
      return "bound-only";
  }
  throw DomainError("outcome_name: unknown outcome");
}

ReportSummary Report::summary() const {
  ReportSummary s;
  s.total = results.size();
  for (const ScenarioResult& r : results) {
    switch (r.outcome) {
      case Outcome::sound:
        ++s.sound;
        break;
      case Outcome::failed:
        ++s.failed;
        break;
      case Outcome::skipped:
        ++s.skipped;
        break;
      case Outcome::bound_only:
        ++s.bound_only;
        break;
    }
  }
  return s;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw DomainError(path + ": " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Rational get_rational(const json& j, const std::string& path) {
  try {
    return Rational::parse(get_string(j, path));
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

Nat get_nat(const json& j, const std::string& path) {
  try {
    return Nat::from_decimal(get_string(j, path));
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

std::uint64_t get_u64(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) fail(path, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

// ---- piecewise-linear functions ----

PwlFunction parse_pwl(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of breakpoint quadruples");
  std::vector<Breakpoint> pts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& q = j[i];
    if (!q.is_array() || q.size() != 4)
      fail(p, "expected [x_num, x_den, y_num, y_den]");
    const Nat xn = get_nat(q[0], p + "[0]");
    const Nat xd = get_nat(q[1], p + "[1]");
    const Nat yn = get_nat(q[2], p + "[2]");
    const Nat yd = get_nat(q[3], p + "[3]");
    try {
      pts.push_back({UnitRational(Rational(xn, xd)), UnitRational(Rational(yn, yd))});
    } catch (const DomainError& e) {
      fail(p, e.what());
    }
  }
  try {
    return PwlFunction(std::move(pts));
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

json pwl_to_json(const PwlFunction& f) {
  json out = json::array();
  for (const Breakpoint& b : f.points()) {
    out.push_back({b.x.value().num().get_str(), b.x.value().den().get_str(),
                   b.y.value().num().get_str(), b.y.value().den().get_str()});
  }
  return out;
}

// ---- counter functions ----

CounterFunc parse_counter(const json& j, const std::string& path) {
  const std::string kind = get_string(field(j, path, "kind"), path + ".kind");
  if (kind == "constant")
    return CounterFunc::constant(get_nat(field(j, path, "value"), path + ".value"));
  if (kind == "identity") return CounterFunc::identity();
  if (kind == "affine")
    return CounterFunc::affine(get_nat(field(j, path, "scale"), path + ".scale"),
                               get_nat(field(j, path, "offset"), path + ".offset"));
  if (kind == "table") {
    const json& vals = field(j, path, "values");
    if (!vals.is_array()) fail(path + ".values", "expected an array");
    std::vector<Nat> values;
    for (std::size_t i = 0; i < vals.size(); ++i)
      values.push_back(get_nat(vals[i], path + ".values[" + std::to_string(i) + "]"));
    return CounterFunc::table(std::move(values),
                              parse_counter(field(j, path, "tail"), path + ".tail"));
  }
  if (kind == "compose")
    return CounterFunc::compose(
        parse_counter(field(j, path, "outer"), path + ".outer"),
        parse_counter(field(j, path, "inner"), path + ".inner"));
  fail(path + ".kind", "unknown counter function kind: " + kind);
}

json counter_to_json(const CounterFunc& g) {
  json out;
  switch (g.kind()) {
    case CounterFunc::Kind::constant:
      out["kind"] = "constant";
      out["value"] = g.const_value().str();
      return out;
    case CounterFunc::Kind::identity:
      out["kind"] = "identity";
      return out;
    case CounterFunc::Kind::affine:
      out["kind"] = "affine";
      out["scale"] = g.affine_scale().str();
      out["offset"] = g.affine_offset().str();
      return out;
    case CounterFunc::Kind::table: {
      out["kind"] = "table";
      json vals = json::array();
      for (const Nat& v : g.table_values()) vals.push_back(v.str());
      out["values"] = std::move(vals);
      out["tail"] = counter_to_json(g.table_tail());
      return out;
    }
    case CounterFunc::Kind::compose:
      out["kind"] = "compose";
      out["outer"] = counter_to_json(g.compose_outer());
      out["inner"] = counter_to_json(g.compose_inner());
      return out;
  }
  throw DomainError("counter_to_json: unknown kind");
}

// ---- rates ----

Rate parse_rate(const json& j, const std::string& path) {
  const std::string kind = get_string(field(j, path, "kind"), path + ".kind");
  if (kind == "harmonic") return Rate::harmonic();
  if (kind == "zero") return Rate::zero();
  if (kind == "geometric") {
    try {
      return Rate::geometric(
          PosRational(get_rational(field(j, path, "ratio"), path + ".ratio")));
    } catch (const DomainError& e) {
      fail(path + ".ratio", e.what());
    }
  }
  if (kind == "table") {
    const json& entries = field(j, path, "entries");
    if (!entries.is_array()) fail(path + ".entries", "expected an array");
    std::vector<std::pair<PosRational, Nat>> out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string p = path + ".entries[" + std::to_string(i) + "]";
      const json& e = entries[i];
      if (!e.is_array() || e.size() != 2) fail(p, "expected [threshold, index]");
      try {
        out.emplace_back(PosRational(get_rational(e[0], p + "[0]")),
                         get_nat(e[1], p + "[1]"));
      } catch (const DomainError& err) {
        fail(p, err.what());
      }
    }
    return Rate::table(std::move(out),
                       get_nat(field(j, path, "fallback"), path + ".fallback"));
  }
  fail(path + ".kind", "unknown rate kind: " + kind);
}

json rate_to_json(const Rate& r) {
  json out;
  switch (r.kind()) {
    case Rate::Kind::harmonic:
      out["kind"] = "harmonic";
      return out;
    case Rate::Kind::zero:
      out["kind"] = "zero";
      return out;
    case Rate::Kind::geometric:
      out["kind"] = "geometric";
      out["ratio"] = r.geometric_ratio().str();
      return out;
    case Rate::Kind::table: {
      out["kind"] = "table";
      json entries = json::array();
      for (const auto& [threshold, index] : r.table_entries())
        entries.push_back({threshold.str(), index.str()});
      out["entries"] = std::move(entries);
      out["fallback"] = r.table_fallback().str();
      return out;
    }
  }
  throw DomainError("rate_to_json: unknown kind");
}

// ---- parameter schedules ----

ParamSchedule parse_schedule(const json& j, const std::string& path) {
  const std::string kind = get_string(field(j, path, "kind"), path + ".kind");
  try {
    if (kind == "constant")
      return ParamSchedule::constant(
          UnitRational(get_rational(field(j, path, "value"), path + ".value")));
    if (kind == "harmonic") return ParamSchedule::harmonic();
    if (kind == "geometric")
      return ParamSchedule::geometric(
          UnitRational(get_rational(field(j, path, "start"), path + ".start")),
          PosRational(get_rational(field(j, path, "ratio"), path + ".ratio")));
    if (kind == "table") {
      const json& vals = field(j, path, "values");
      if (!vals.is_array()) fail(path + ".values", "expected an array");
      std::vector<UnitRational> values;
      for (std::size_t i = 0; i < vals.size(); ++i)
        values.push_back(UnitRational(
            get_rational(vals[i], path + ".values[" + std::to_string(i) + "]")));
      return ParamSchedule::table(
          std::move(values), parse_schedule(field(j, path, "tail"), path + ".tail"));
    }
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown schedule kind: " + kind);
}

json schedule_to_json(const ParamSchedule& s) {
  json out;
  switch (s.kind()) {
    case ParamSchedule::Kind::constant:
      out["kind"] = "constant";
      out["value"] = s.const_value().str();
      return out;
    case ParamSchedule::Kind::harmonic:
      out["kind"] = "harmonic";
      return out;
    case ParamSchedule::Kind::geometric:
      out["kind"] = "geometric";
      out["start"] = s.geometric_start().str();
      out["ratio"] = s.geometric_ratio().str();
      return out;
    case ParamSchedule::Kind::table: {
      out["kind"] = "table";
      json vals = json::array();
      for (const UnitRational& v : s.table_values()) vals.push_back(v.str());
      out["values"] = std::move(vals);
      out["tail"] = schedule_to_json(s.table_tail());
      return out;
    }
  }
  throw DomainError("schedule_to_json: unknown kind");
}

// ---- modulus ----

Modulus parse_modulus(const json& j, const std::string& path) {
  const std::string kind = get_string(field(j, path, "kind"), path + ".kind");
  if (kind != "linear") fail(path + ".kind", "unknown modulus kind: " + kind);
  try {
    return Modulus(PosRational(get_rational(field(j, path, "slope"), path + ".slope")));
  } catch (const DomainError& e) {
    fail(path + ".slope", e.what());
  }
}

json modulus_to_json(const Modulus& w) {
  json out;
  out["kind"] = "linear";
  out["slope"] = w.slope().str();
  return out;
}

// ---- caps ----

CapsPatch parse_caps(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  CapsPatch p;
  for (const auto& [key, value] : j.items()) {
    if (key == "nat_bits" || key == "nat-bits")
      p.nat_bits = static_cast<unsigned>(get_u64(value, path + ".nat_bits"));
    else if (key == "horizon")
      p.horizon = get_u64(value, path + ".horizon");
    else if (key == "search")
      p.search = get_u64(value, path + ".search");
    else
      fail(path, "unknown caps field '" + key + "'");
  }
  return p;
}

json caps_to_json(const CapsPatch& p) {
  json out;
  if (p.nat_bits) out["nat_bits"] = *p.nat_bits;
  if (p.horizon) out["horizon"] = *p.horizon;
  if (p.search) out["search"] = *p.search;
  return out;
}

// ---- scenarios ----

struct FieldRule {
  bool s, omega, beta, gamma, delta;
};

FieldRule rule_for(Theorem t) {
  switch (t) {
    case Theorem::fmcp:
      return {false, false, false, false, false};
    case Theorem::km:
      return {false, true, true, false, false};
    case Theorem::ishikawa:
      return {true, true, true, true, false};
    case Theorem::lipschitz:
      return {false, false, false, false, true};
  }
  throw DomainError("rule_for: unknown theorem");
}

Scenario parse_scenario(const json& j, const std::string& path) {
  Scenario sc;
  sc.id = get_string(field(j, path, "id"), path + ".id");
  if (sc.id.empty()) fail(path + ".id", "id must be non-empty");
  sc.theorem =
      theorem_from_name(get_string(field(j, path, "theorem"), path + ".theorem"));
  sc.f = parse_pwl(field(j, path, "f"), path + ".f");
  try {
    sc.x0 = UnitRational(get_rational(field(j, path, "x0"), path + ".x0"));
    sc.epsilon =
        PosRational(get_rational(field(j, path, "epsilon"), path + ".epsilon"));
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  sc.g = parse_counter(field(j, path, "g"), path + ".g");
  sc.t = parse_schedule(field(j, path, "t"), path + ".t");

  const FieldRule rule = rule_for(sc.theorem);
  auto has = [&](const char* key) { return j.contains(key); };
  auto expect = [&](bool required, const char* key) {
    if (required && !has(key))
      fail(path, std::string("theorem '") + theorem_name(sc.theorem) +
                     "' requires field '" + key + "'");
    if (!required && has(key))
      fail(path, std::string("field '") + key + "' is not used by theorem '" +
                     theorem_name(sc.theorem) + "'");
  };
  expect(rule.s, "s");
  expect(rule.omega, "omega");
  expect(rule.beta, "beta");
  expect(rule.gamma, "gamma");
  expect(rule.delta, "delta");

  if (rule.s) sc.s = parse_schedule(j["s"], path + ".s");
  if (rule.omega) sc.omega = parse_modulus(j["omega"], path + ".omega");
  if (rule.beta) sc.beta = parse_rate(j["beta"], path + ".beta");
  if (rule.gamma) sc.gamma = parse_rate(j["gamma"], path + ".gamma");
  if (rule.delta) {
    try {
      sc.delta = PosRational(get_rational(j["delta"], path + ".delta"));
    } catch (const DomainError& e) {
      fail(path + ".delta", e.what());
    }
    if (!(sc.delta->value() < Rational(1L)))
      fail(path + ".delta", "delta must lie in (0,1)");
  }
  if (has("caps")) sc.caps = parse_caps(j["caps"], path + ".caps");

  static const char* known[] = {"id", "theorem", "f",     "x0",    "epsilon",
                                "g",  "t",       "s",     "omega", "beta",
                                "gamma", "delta", "caps"};
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(path, "unknown field '" + key + "'");
  }
  return sc;
}

json scenario_to_json(const Scenario& sc) {
  json out;
  out["id"] = sc.id;
  out["theorem"] = theorem_name(sc.theorem);
  out["f"] = pwl_to_json(sc.f);
  out["x0"] = sc.x0.str();
  out["epsilon"] = sc.epsilon.str();
  out["g"] = counter_to_json(sc.g);
  out["t"] = schedule_to_json(sc.t);
  if (sc.s) out["s"] = schedule_to_json(*sc.s);
  if (sc.omega) out["omega"] = modulus_to_json(*sc.omega);
  if (sc.beta) out["beta"] = rate_to_json(*sc.beta);
  if (sc.gamma) out["gamma"] = rate_to_json(*sc.gamma);
  if (sc.delta) out["delta"] = sc.delta->str();
  if (sc.caps) out["caps"] = caps_to_json(*sc.caps);
  return out;
}

}  // namespace

std::vector<Scenario> parse_scenarios(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("scenario file: ") + e.what());
  }
  const json& arr = field(root, "$", "scenarios");
  if (!arr.is_array()) fail("$.scenarios", "expected an array");

  std::vector<Scenario> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(parse_scenario(arr[i], "$.scenarios[" + std::to_string(i) + "]"));

  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t k = i + 1; k < out.size(); ++k)
      if (out[i].id == out[k].id)
        throw DomainError("duplicate scenario id: " + out[i].id);
  return out;
}

std::string serialize_scenarios(const std::vector<Scenario>& scenarios) {
  json root;
  json arr = json::array();
  for (const Scenario& sc : scenarios) arr.push_back(scenario_to_json(sc));
  root["scenarios"] = std::move(arr);
  return root.dump(2) + "\n";
}

namespace {

json trace_summary_json(const ScenarioResult& r) {
  if (std::holds_alternative<LadderTrace>(r.trace)) {
    const LadderTrace& t = std::get<LadderTrace>(r.trace);
    json out;
    out["kind"] = "ladder";
    out["subintervals"] = t.subintervals.str();
    out["diff_threshold"] = t.diff_threshold.str();
    out["start"] = t.ladder.front().str();
    out["length"] = t.ladder.size();
    return out;
  }
  if (std::holds_alternative<SwitchBoundTrace>(r.trace)) {
    const SwitchBoundTrace& t = std::get<SwitchBoundTrace>(r.trace);
    json out;
    out["kind"] = "switch-budget";
    out["contraction_steps"] = t.contraction_steps;
    out["switch_budget"] = t.switch_budget.str();
    out["anchors"] = t.anchors.size();
    if (t.eps_at_least_one) out["eps_at_least_one"] = true;
    return out;
  }
  json out;
  out["kind"] = "monotone";
  return out;
}

json result_to_json(const ScenarioResult& r, bool include_timings) {
  json out;
  out["id"] = r.id;
  out["theorem"] = theorem_name(r.theorem);
  out["outcome"] = outcome_name(r.outcome);
  out["epsilon"] = r.epsilon.str();
  if (r.bound) {
    out["bound"] = r.bound->str();
    out["trace"] = trace_summary_json(r);
  }
  json hyp = json::array();
  for (const HypothesisEntry& h : r.hypotheses) {
    json e;
    e["check"] = h.check;
    e["result"] = h.result;
    hyp.push_back(std::move(e));
  }
  out["hypotheses"] = std::move(hyp);
  if (r.least_n) out["least_metastable"] = std::to_string(*r.least_n);
  out["rejected_windows"] = r.rejected_windows;
  if (!r.detail.empty()) out["detail"] = r.detail;
  if (include_timings && r.wall_ms) out["wall_ms"] = *r.wall_ms;
  return out;
}

}  // namespace

std::string serialize_report(const Report& report, bool include_timings) {
  const ReportSummary s = report.summary();
  json root;
  json summary;
  summary["total"] = s.total;
  summary["sound"] = s.sound;
  summary["failed"] = s.failed;
  summary["skipped"] = s.skipped;
  summary["bound_only"] = s.bound_only;
  root["summary"] = std::move(summary);
  json arr = json::array();
  for (const ScenarioResult& r : report.results)
    arr.push_back(result_to_json(r, include_timings));
  root["scenarios"] = std::move(arr);
  return root.dump(2) + "\n";
}

std::string trace_to_json(const ScenarioResult& result) {
  json out;
  out["id"] = result.id;
  out["theorem"] = theorem_name(result.theorem);
  if (std::holds_alternative<LadderTrace>(result.trace)) {
    const LadderTrace& t = std::get<LadderTrace>(result.trace);
    out["kind"] = "ladder";
    out["subintervals"] = t.subintervals.str();
    out["diff_threshold"] = t.diff_threshold.str();
    json args = json::array();
    for (const PosRational& a : t.rate_args) args.push_back(a.str());
    out["rate_args"] = std::move(args);
    json ladder = json::array();
    for (const Nat& u : t.ladder) ladder.push_back(u.str());
    out["ladder"] = std::move(ladder);
  } else if (std::holds_alternative<SwitchBoundTrace>(result.trace)) {
    const SwitchBoundTrace& t = std::get<SwitchBoundTrace>(result.trace);
    out["kind"] = "switch-budget";
    json anchors = json::array();
    for (const Nat& p : t.anchors) anchors.push_back(p.str());
    out["anchors"] = std::move(anchors);
    out["contraction_steps"] = t.contraction_steps;
    out["switch_budget"] = t.switch_budget.str();
    out["eps_at_least_one"] = t.eps_at_least_one;
  } else {
    out["kind"] = "monotone";
  }
  if (result.bound) out["bound"] = result.bound->str();
  if (!result.detail.empty()) out["detail"] = result.detail;
  return out.dump(2) + "\n";
}

std::string run_to_json(const IterationRun& run) {
  json out;
  switch (run.scheme) {
    case Scheme::picard:
      out["scheme"] = "picard";
      break;
    case Scheme::km:
      out["scheme"] = "km";
      break;
    case Scheme::ishikawa:
      out["scheme"] = "ishikawa";
      break;
  }
  out["f"] = pwl_to_json(run.f);
  out["x0"] = run.x0.str();
  json xs = json::array();
  for (const UnitRational& x : run.xs) xs.push_back(x.str());
  out["xs"] = std::move(xs);
  if (run.scheme == Scheme::ishikawa) {
    json ys = json::array();
    for (const UnitRational& y : run.ys) ys.push_back(y.str());
    out["ys"] = std::move(ys);
  }
  return out.dump(2) + "\n";
}

std::string plot_csv(const Report& report) {
  std::string out = "scenario,epsilon,bound,least_N,ratio\n";
  for (const ScenarioResult& r : report.results) {
    out += r.id;
    out += ',';
    out += r.epsilon.str();
    out += ',';
    if (r.bound) out += r.bound->str();
    out += ',';
    if (r.least_n) out += std::to_string(*r.least_n);
    out += ',';
    if (r.least_n && r.bound) {
      if (r.bound->raw() == 0)
        out += "0/0 exact";
      else
        out += Rational(Nat(*r.least_n), *r.bound).str();
    }
    out += '\n';
  }
  return out;
}

}  // namespace metarate
