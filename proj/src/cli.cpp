#include "fuzzy_evolve/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "fuzzy_evolve/analysis.hpp"
#include "fuzzy_evolve/errors.hpp"
#include "fuzzy_evolve/report.hpp"
#include "fuzzy_evolve/scenario_file.hpp"

namespace fuzzy_evolve {

namespace {

struct CommonOptions {
  std::string scenario;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> iterations;
  std::optional<std::uint64_t> seed;
  std::optional<double> z;
  std::string format = "json";
  std::string out;
  bool trace = false;
  unsigned workers = 0;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("scenario", o.scenario, "Scenario JSON file or bundled scenario name")->required();
  cmd.add_option("--trials", o.trials, "Override the number of Monte Carlo trials (M)");
  cmd.add_option("--iterations", o.iterations, "Override the number of update rounds (T)");
  cmd.add_option("--seed", o.seed, "Override the master seed");
  cmd.add_option("--z", o.z, "Override the confidence coefficient Z");
  cmd.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("--out", o.out, "Write the report to this file instead of stdout");
  cmd.add_option("--workers", o.workers, "Worker threads (0 = all cores)");
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("FUZZY_EVOLVE_SEED");
  if (!raw || !*raw) return std::nullopt;
  std::uint64_t v = 0;
  const std::string_view s(raw);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ScenarioError("FUZZY_EVOLVE_SEED", "not an unsigned integer: '" + std::string(s) + "'");
  }
  return v;
}

ScenarioSuite load_suite(const CommonOptions& o) {
  const auto fallback = env_seed();
  std::error_code ec;
  if (!std::filesystem::exists(o.scenario, ec)) {
    if (auto text = bundled_scenario(o.scenario)) return parse_scenario_document(*text, fallback);
  }
  return load_scenario_file(o.scenario, fallback);
}

Scenario with_overrides(const Scenario& s, const CommonOptions& o) {
  ScenarioParams p = s.params();
  if (o.trials) p.trials = *o.trials;
  if (o.iterations) p.iterations = *o.iterations;
  if (o.seed) p.master_seed = *o.seed;
  if (o.z) p.z_value = *o.z;
  if (o.trials && *o.trials == 0) throw ScenarioError("--trials", "must be positive");
  if (o.iterations && *o.iterations == 0) throw ScenarioError("--iterations", "must be positive");
  return Scenario(std::move(p));
}

std::vector<Scenario> prepared(const CommonOptions& o) {
  std::vector<Scenario> out;
  for (const auto& s : load_suite(o).scenarios) out.push_back(with_overrides(s, o));
  return out;
}

Perturbation parse_perturbation(const std::string& spec) {
  const auto bad = [&](const std::string& why) {
    return ScenarioError("--perturb", "'" + spec + "': " + why +
                                          " (expected agent=<i>,opinion=<term> or agent=<i>,eps=<value>)");
  };
  std::optional<std::size_t> agent;
  std::optional<int> opinion;
  std::optional<double> eps;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const std::string part = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw bad("missing '='");
    const std::string key = part.substr(0, eq);
    const std::string val = part.substr(eq + 1);
    const char* first = val.data();
    const char* last = val.data() + val.size();
    if (key == "agent") {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || p != last || v == 0) throw bad("agent must be a 1-based index");
      agent = v;
    } else if (key == "opinion") {
      int v = 0;
      auto [p, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || p != last) throw bad("opinion must be a term index");
      opinion = v;
    } else if (key == "eps") {
      double v = 0;
      auto [p, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || p != last) throw bad("eps must be a number");
      eps = v;
    } else {
      throw bad("unknown key '" + key + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (!agent) throw bad("missing agent");
  if (opinion.has_value() == eps.has_value()) throw bad("give exactly one of opinion or eps");
  return opinion ? Perturbation::opinion(*agent - 1, *opinion) : Perturbation::threshold(*agent - 1, *eps);
}

void emit(const nlohmann::json& report, const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const std::string body = o.format == "csv" ? report_to_csv(report) : report.dump(2) + "\n";
  if (o.out.empty()) {
    out << body;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw IoError("cannot open " + o.out + " for writing");
    f << body;
    f.close();
    if (!f) throw IoError("error while writing " + o.out);
  }
  for (const auto& line : report["summary"]) err << line.get<std::string>() << "\n";
}

EnsembleOptions ensemble_options(const CommonOptions& o) { return {o.workers, o.trace}; }

int cmd_run(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<RunOutput> runs;
  for (const auto& sc : prepared(o)) {
    EnsembleResult r = run_ensemble(sc, ensemble_options(o));
    ComparisonColumn col{sc.name(), sc, decide(r), leader_frequency(r), cluster_summary(r)};
    runs.push_back({std::move(col), std::move(r.traces)});
  }
  emit(run_report(o.scenario, runs), o, out, err);
  return kExitOk;
}

int cmd_compare(const CommonOptions& o, const std::vector<std::string>& model_names,
                const std::vector<double>& eps_grid, std::ostream& out, std::ostream& err) {
  const auto suite = prepared(o);
  const Scenario& base = suite.front();
  std::vector<ModelKind> models;
  for (const auto& name : model_names) {
    const auto m = parse_model_kind(name);
    if (!m) throw ScenarioError("--models", "unknown model '" + name + "'");
    models.push_back(*m);
  }
  if (models.empty()) models.push_back(base.model());
  const auto report = model_compare(base, models, eps_grid, ensemble_options(o));
  emit(compare_report(o.scenario, report), o, out, err);
  return kExitOk;
}

int cmd_robustness(const CommonOptions& o, const std::vector<std::string>& specs, std::ostream& out,
                   std::ostream& err) {
  if (specs.empty()) throw ScenarioError("--perturb", "at least one perturbation is required");
  std::vector<Perturbation> perts;
  for (const auto& s : specs) perts.push_back(parse_perturbation(s));
  const auto suite = prepared(o);
  const auto report = robustness_compare(suite.front(), perts, ensemble_options(o));
  emit(robustness_report(o.scenario, report), o, out, err);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linguistic opinion dynamics with per-round random leader election", "fuzzy-evolve"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + tool_version());

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "Run a scenario ensemble and report tallies, intervals and rankings");
  add_common(*run, run_opts);
  run->add_flag("--trace", run_opts.trace, "Embed every trial's per-round snapshots and leader log");

  CommonOptions cmp_opts;
  std::vector<std::string> models;
  std::vector<double> eps_grid;
  auto* compare = app.add_subcommand("compare", "Run several models on the same scenario data");
  add_common(*compare, cmp_opts);
  compare->add_option("--models", models, "Comma-separated model names")->delimiter(',');
  compare->add_option("--eps-grid", eps_grid, "Comma-separated shared thresholds for HK models")
      ->delimiter(',');

  CommonOptions rob_opts;
  std::vector<std::string> perturb;
  auto* robust = app.add_subcommand("robustness", "Compare a scenario against perturbed copies of itself");
  add_common(*robust, rob_opts);
  robust->add_option("--perturb", perturb, "agent=<i>,opinion=<term> or agent=<i>,eps=<value>; repeatable");

  std::string show;
  auto* scenarios = app.add_subcommand("scenarios", "List bundled scenarios or print one");
  scenarios->add_option("name", show, "Bundled scenario to print");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolName << " " << tool_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (*run) return cmd_run(run_opts, out, err);
    if (*compare) return cmd_compare(cmp_opts, models, eps_grid, out, err);
    if (*robust) return cmd_robustness(rob_opts, perturb, out, err);
    if (show.empty()) {
      for (const auto& n : bundled_scenario_names()) out << n << "\n";
      return kExitOk;
    }
    const auto text = bundled_scenario(show);
    if (!text) {
      err << "error: no bundled scenario named '" << show << "'\n";
      return kExitInputError;
    }
    out << *text;
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::invalid_argument& e) {  // ScenarioError
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace fuzzy_evolve
