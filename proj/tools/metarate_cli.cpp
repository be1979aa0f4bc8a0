// Command-line front end: compute metastability bounds, verify them against
// the brute-force oracle, generate seeded scenario corpora, and export plot
// data. Exit codes: 0 ok, 1 soundness failure, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "metarate/corpus.hpp"
#include "metarate/runner.hpp"
#include "metarate/scenario.hpp"
#include "metarate/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnsound = 1;
constexpr int kExitInput = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw metarate::DomainError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw metarate::DomainError("cannot open file for writing: " + path);
  out << text;
}

struct CapsFlags {
  unsigned cap_bits = metarate::Caps{}.nat_bits;
  std::uint64_t horizon = metarate::Caps{}.horizon;
  std::uint64_t search = metarate::Caps{}.search;

  metarate::Caps to_caps() const {
    metarate::Caps caps;
    caps.nat_bits = cap_bits;
    caps.horizon = horizon;
    caps.search = search;
    return caps;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--cap-bits", cap_bits,
                    "Bit-length cap on computed bounds");
    cmd->add_option("--horizon", horizon,
                    "Max generated sequence length for verification");
    cmd->add_option("--search", search, "Max oracle search index");
  }
};

int cmd_bound(const std::string& scenarios_path, const std::string& id,
              const CapsFlags& flags) {
  const auto scenarios = metarate::parse_scenarios(read_file(scenarios_path));
  bool matched = false;
  for (const metarate::Scenario& sc : scenarios) {
    if (!id.empty() && sc.id != id) continue;
    matched = true;
    metarate::ScenarioResult result;
    result.id = sc.id;
    result.theorem = sc.theorem;
    result.epsilon = sc.epsilon;
    const metarate::Caps caps =
        sc.caps ? sc.caps->apply(flags.to_caps()) : flags.to_caps();
    try {
      switch (sc.theorem) {
        case metarate::Theorem::km:
          result.trace = metarate::km_bound(sc.epsilon, sc.g, *sc.omega,
                                            *sc.beta, caps);
          result.bound = std::get<metarate::LadderTrace>(result.trace).bound;
          break;
        case metarate::Theorem::ishikawa:
          result.trace = metarate::ishikawa_bound(sc.epsilon, sc.g, *sc.omega,
                                                  *sc.beta, *sc.gamma, caps);
          result.bound = std::get<metarate::LadderTrace>(result.trace).bound;
          break;
        case metarate::Theorem::lipschitz:
          result.trace =
              metarate::lipschitz_bound(sc.epsilon, sc.g, *sc.delta, caps);
          result.bound =
              std::get<metarate::SwitchBoundTrace>(result.trace).bound;
          break;
        case metarate::Theorem::fmcp:
          result.bound = metarate::monotone_bound(sc.epsilon, sc.g, caps);
          break;
      }
    } catch (const metarate::CapExceeded& e) {
      result.detail = std::string("bound too large to compute: ") + e.what();
    }
    std::cout << metarate::trace_to_json(result);
  }
  if (!id.empty() && !matched) {
    std::cerr << "error: no scenario with id '" << id << "'\n";
    return kExitInput;
  }
  return kExitOk;
}

int cmd_verify(const std::string& scenarios_path, const std::string& out_path,
               const std::string& csv_path, unsigned jobs, bool timings,
               const CapsFlags& flags) {
  const auto scenarios = metarate::parse_scenarios(read_file(scenarios_path));
  metarate::RunOptions options;
  options.caps = flags.to_caps();
  options.jobs = jobs;
  const metarate::Report report = metarate::run_scenarios(scenarios, options);
  write_output(out_path, metarate::serialize_report(report, timings));
  if (!csv_path.empty()) write_output(csv_path, metarate::plot_csv(report));

  const metarate::ReportSummary summary = report.summary();
  std::cerr << "verified " << summary.total << ": " << summary.sound
            << " sound, " << summary.failed << " failed, " << summary.skipped
            << " skipped, " << summary.bound_only << " bound-only\n";
  return summary.failed == 0 ? kExitOk : kExitUnsound;
}

int cmd_gen(std::uint64_t seed, std::uint64_t count, const std::string& theorem,
            const std::string& profile, const std::string& out_path) {
  const auto scenarios = metarate::generate_corpus(
      seed, count, metarate::theorem_from_name(theorem), profile);
  write_output(out_path, metarate::serialize_scenarios(scenarios));
  return kExitOk;
}

int cmd_plot_data(const std::string& report_path, const std::string& out_path) {
  // Minimal report reader: plot data needs only the id, epsilon, bound and
  // least_metastable columns.
  const std::string text = read_file(report_path);
  metarate::Report report;
  using json = nlohmann::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw metarate::DomainError(std::string("report file: ") + e.what());
  }
  if (!root.contains("scenarios") || !root["scenarios"].is_array())
    throw metarate::DomainError("report file: missing 'scenarios' array");
  for (const json& entry : root["scenarios"]) {
    metarate::ScenarioResult r;
    r.id = entry.at("id").get<std::string>();
    r.epsilon = metarate::PosRational(
        metarate::Rational::parse(entry.at("epsilon").get<std::string>()));
    if (entry.contains("bound"))
      r.bound = metarate::Nat::from_decimal(entry["bound"].get<std::string>());
    if (entry.contains("least_metastable"))
      r.least_n = std::stoull(entry["least_metastable"].get<std::string>());
    report.results.push_back(std::move(r));
  }
  write_output(out_path, metarate::plot_csv(report));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metastability rate calculator and brute-force verifier for "
               "fixed-point iterations on the unit interval"};
  app.require_subcommand(1);

  auto* bound = app.add_subcommand(
      "bound", "Compute bounds for scenarios and print full traces");
  std::string bound_scenarios, bound_id;
  CapsFlags bound_caps;
  bound->add_option("--scenarios", bound_scenarios, "Scenario JSON file")
      ->required();
  bound->add_option("--id", bound_id, "Only this scenario id");
  bound_caps.attach(bound);

  auto* verify = app.add_subcommand(
      "verify", "Verify bounds against the brute-force oracle");
  std::string verify_scenarios, verify_out = "-", verify_csv;
  unsigned verify_jobs = 1;
  bool verify_timings = false;
  CapsFlags verify_caps;
  verify->add_option("--scenarios", verify_scenarios, "Scenario JSON file")
      ->required();
  verify->add_option("--out", verify_out, "Report path ('-' for stdout)");
  verify->add_option("--csv", verify_csv, "Also write plot CSV here");
  verify->add_option("--jobs", verify_jobs, "Parallel verification jobs");
  verify->add_flag("--timings", verify_timings,
                   "Include wall-clock times in the report");
  verify_caps.attach(verify);

  auto* gen =
      app.add_subcommand("gen", "Generate a deterministic scenario corpus");
  std::uint64_t gen_seed = 0, gen_count = 0;
  std::string gen_theorem, gen_profile = "standard", gen_out = "-";
  gen->add_option("--seed", gen_seed, "Corpus seed")->required();
  gen->add_option("--count", gen_count, "Number of scenarios")->required();
  gen->add_option("--theorem", gen_theorem, "fmcp|km|ishikawa|lipschitz")
      ->required();
  gen->add_option("--profile", gen_profile, "standard|smoke");
  gen->add_option("--out", gen_out, "Output path ('-' for stdout)");

  auto* plot = app.add_subcommand("plot-data", "Report JSON to CSV");
  std::string plot_report, plot_out = "-";
  plot->add_option("--report", plot_report, "Report JSON file")->required();
  plot->add_option("--out", plot_out, "Output path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) return cmd_bound(bound_scenarios, bound_id, bound_caps);
    if (verify->parsed())
      return cmd_verify(verify_scenarios, verify_out, verify_csv, verify_jobs,
                        verify_timings, verify_caps);
    if (gen->parsed())
      return cmd_gen(gen_seed, gen_count, gen_theorem, gen_profile, gen_out);
    if (plot->parsed()) return cmd_plot_data(plot_report, plot_out);
  } catch (const metarate::DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
