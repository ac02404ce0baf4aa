#include "fuzzy_evolve/report.hpp"

#include "fuzzy_evolve/scenario_file.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace fuzzy_evolve {

namespace {

using nlohmann::json;

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

json terms_json(const std::vector<Term>& terms) {
  json a = json::array();
  for (Term t : terms) a.push_back(t.index);
  return a;
}

json tally_json(const TallyTable& t) {
  json rows = json::array();
  for (std::size_t r = 0; r < t.rows(); ++r) {
    json props = json::array();
    for (int xi = 0; xi < t.cardinality(); ++xi) props.push_back(t.proportion(r, xi));
    const auto counts = t.row(r);
    rows.push_back({{"row", t.mode() == TallyMode::Global ? std::string("all") : agent_label(r)},
                    {"counts", std::vector<std::uint64_t>(counts.begin(), counts.end())},
                    {"proportions", props}});
  }
  return {{"mode", to_string(t.mode())},
          {"trials", t.trials()},
          {"sample_size", t.sample_size()},
          {"rows", rows}};
}

json decision_json(const EnsembleDecision& d, std::size_t agents) {
  json rows = json::array();
  for (std::size_t r = 0; r < d.rankings.size(); ++r) {
    const auto& rk = d.rankings[r];
    json intervals = json::array();
    for (const auto& ci : d.intervals[r]) {
      intervals.push_back({{"point", ci.point}, {"lo", ci.lo}, {"hi", ci.hi}});
    }
    json order = json::array();
    for (auto pos : rk.order) order.push_back(rk.labels[pos].index);
    rows.push_back({{"row", d.tally.mode() == TallyMode::Global ? std::string("all") : agent_label(r)},
                    {"intervals", intervals},
                    {"rep", rk.reps},
                    {"order", order},
                    {"winners", terms_json(rk.winners)},
                    {"chosen", rk.chosen.index}});
  }
  std::vector<Term> chosen;
  for (std::size_t i = 0; i < agents; ++i) chosen.push_back(d.chosen(i));
  const Partition part = decision_partition(d, agents);
  json groups = json::array();
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    groups.push_back({{"term", part.terms[b].index}, {"agents", part.blocks[b]}});
  }
  return {{"z_value", d.intervals.front().front().z},
          {"rows", rows},
          {"chosen_per_agent", terms_json(chosen)},
          {"groups", groups}};
}

json leaders_json(const LeaderFrequency& f) {
  json j{{"applicable", f.applicable}};
  if (!f.note.empty()) j["note"] = f.note;
  if (f.applicable) {
    j["counts"] = f.counts;
    j["percentages"] = f.percentages;
    j["total"] = f.total;
    j["chi_square"] = f.chi_square;
    j["p_value"] = f.p_value;
  }
  return j;
}

json clusters_json(const ClusterSummary& s) {
  json counts = json::array();
  for (const auto& [k, trials] : s.cluster_counts) counts.push_back({{"clusters", k}, {"trials", trials}});
  return {{"cluster_counts", counts},
          {"modal_blocks", s.modal_blocks},
          {"modal_frequency", s.modal_frequency},
          {"frozen_agents", s.frozen_agents},
          {"frozen_fraction", s.frozen_fraction},
          {"echo_chamber_trials", s.echo_chamber_trials}};
}

json traces_json(const std::vector<TrialTrace>& traces) {
  json out = json::array();
  for (const auto& t : traces) {
    json snaps = json::array();
    for (const auto& s : t.snapshots) snaps.push_back(terms_json(s));
    json leaders = json::array();
    for (const auto& ev : t.leaders) {
      leaders.push_back({{"round", ev.round}, {"leader", ev.leader}, {"weight", ev.weight},
                         {"group_size", ev.group_size}});
    }
    out.push_back({{"trial", t.trial_index},
                   {"snapshots", snaps},
                   {"leaders", leaders},
                   {"final_opinions", terms_json(t.final_opinions)}});
  }
  return out;
}

json column_json(const ComparisonColumn& c) {
  const std::size_t n = c.scenario.agents();
  return {{"label", c.label},
          {"scenario", scenario_to_json(c.scenario)},
          {"tally", tally_json(c.decision.tally)},
          {"decision", decision_json(c.decision, n)},
          {"leaders", leaders_json(c.leaders)},
          {"clusters", clusters_json(c.clusters)}};
}

std::vector<std::string> column_summary(const ComparisonColumn& c) {
  std::vector<std::string> lines;
  const auto& d = c.decision;
  const std::size_t n = c.scenario.agents();
  std::string head = c.label + " [" + std::string(to_string(c.scenario.model())) + ", " +
                     to_string(d.tally.mode()) + "]";
  if (d.tally.mode() == TallyMode::Global) {
    head += ": chosen " + to_string(d.chosen(0));
  }
  lines.push_back(head);
  for (std::size_t r = 0; r < d.rankings.size(); ++r) {
    std::string line = "  " + (d.tally.mode() == TallyMode::Global ? std::string("all") : agent_label(r)) +
                       " -> " + to_string(d.rankings[r].chosen) + "  Rep:";
    for (double v : d.rankings[r].reps) line += " " + fixed3(v);
    lines.push_back(line);
  }
  if (d.tally.mode() == TallyMode::PerAgent) {
    const Partition part = decision_partition(d, n);
    std::string g = "  groups:";
    for (std::size_t b = 0; b < part.blocks.size(); ++b) {
      g += " " + to_string(part.terms[b]) + "{";
      for (std::size_t k = 0; k < part.blocks[b].size(); ++k) {
        g += (k ? "," : "") + agent_label(part.blocks[b][k]);
      }
      g += "}";
    }
    lines.push_back(g);
  }
  return lines;
}

json report_header(const std::string& command, const std::string& source) {
  return {{"tool", {{"name", kToolName}, {"version", tool_version()}}},
          {"command", command},
          {"source", source}};
}

void add_comparison(json& doc, const ComparisonReport& r) {
  doc["columns"] = json::array();
  for (const auto& c : r.columns) doc["columns"].push_back(column_json(c));
  doc["agreement"] = r.agreement;
  doc["rep_deltas"] = r.rep_deltas;
}

// ---- CSV ------------------------------------------------------------------

std::string number(const json& v) {
  if (v.is_number_float()) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return std::string(buf, end);
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + number(v[i]);
    return s;
  }
  return v.dump();
}

void csv_column(std::ostringstream& out, const std::string& tag, const json& col) {
  out << "# " << tag << " scenario\nkey,value\n";
  out << "label," << number(col["label"]) << "\n";
  for (const auto& [k, v] : col["scenario"].items()) out << k << "," << number(v) << "\n";

  const auto& tally = col["tally"];
  const std::size_t card = tally["rows"][0]["counts"].size();
  out << "# " << tag << " tally mode=" << tally["mode"].get<std::string>()
      << " trials=" << tally["trials"] << " sample_size=" << tally["sample_size"] << "\nrow";
  for (std::size_t xi = 0; xi < card; ++xi) out << ",h_" << xi;
  out << "\n";
  for (const auto& r : tally["rows"]) {
    out << number(r["row"]);
    for (const auto& c : r["counts"]) out << "," << number(c);
    out << "\n";
  }

  out << "# " << tag << " intervals z=" << number(col["decision"]["z_value"])
      << "\nrow,term,count,point,lo,hi,rep\n";
  const auto& drows = col["decision"]["rows"];
  for (std::size_t r = 0; r < drows.size(); ++r) {
    const auto& dr = drows[r];
    for (std::size_t xi = 0; xi < card; ++xi) {
      const auto& ci = dr["intervals"][xi];
      out << number(dr["row"]) << "," << xi << "," << number(tally["rows"][r]["counts"][xi]) << ","
          << number(ci["point"]) << "," << number(ci["lo"]) << "," << number(ci["hi"]) << ","
          << number(dr["rep"][xi]) << "\n";
    }
  }
  out << "# " << tag << " decision\nrow,chosen,winners,order\n";
  for (const auto& dr : drows) {
    out << number(dr["row"]) << "," << number(dr["chosen"]) << "," << number(dr["winners"]) << ","
        << number(dr["order"]) << "\n";
  }

  const auto& leaders = col["leaders"];
  if (leaders["applicable"].get<bool>()) {
    out << "# " << tag << " leaders total=" << leaders["total"] << " chi_square="
        << number(leaders["chi_square"]) << " p_value=" << number(leaders["p_value"])
        << "\nagent,count,percentage\n";
    for (std::size_t i = 0; i < leaders["counts"].size(); ++i) {
      out << agent_label(i) << "," << number(leaders["counts"][i]) << ","
          << number(leaders["percentages"][i]) << "\n";
    }
  } else {
    out << "# " << tag << " leaders\nnote\n" << number(leaders["note"]) << "\n";
  }

  const auto& cl = col["clusters"];
  out << "# " << tag << " clusters modal_frequency=" << cl["modal_frequency"]
      << " echo_chamber_trials=" << cl["echo_chamber_trials"] << "\nclusters,trials\n";
  for (const auto& c : cl["cluster_counts"]) out << number(c["clusters"]) << "," << number(c["trials"]) << "\n";
  out << "# " << tag << " frozen\nagent,frozen_fraction\n";
  for (std::size_t i = 0; i < cl["frozen_fraction"].size(); ++i) {
    out << agent_label(i) << "," << number(cl["frozen_fraction"][i]) << "\n";
  }

  if (col.contains("traces")) {
    out << "# " << tag << " trace snapshots\ntrial,round";
    const std::size_t n = col["scenario"]["agents"].get<std::size_t>();
    for (std::size_t i = 0; i < n; ++i) out << "," << agent_label(i);
    out << "\n";
    for (const auto& t : col["traces"]) {
      for (std::size_t s = 0; s < t["snapshots"].size(); ++s) {
        out << number(t["trial"]) << "," << s + 1;
        for (const auto& x : t["snapshots"][s]) out << "," << number(x);
        out << "\n";
      }
    }
    out << "# " << tag << " trace leaders\ntrial,round,leader,weight,group_size\n";
    for (const auto& t : col["traces"]) {
      for (const auto& ev : t["leaders"]) {
        out << number(t["trial"]) << "," << number(ev["round"]) << "," << agent_label(ev["leader"].get<std::size_t>())
            << "," << number(ev["weight"]) << "," << number(ev["group_size"]) << "\n";
      }
    }
  }
}

}  // namespace

std::string tool_version() { return FUZZY_EVOLVE_VERSION; }

std::string agent_label(std::size_t agent) { return "e_" + std::to_string(agent + 1); }

json run_report(const std::string& source, const std::vector<RunOutput>& runs) {
  json doc = report_header("run", source);
  doc["runs"] = json::array();
  json summary = json::array();
  for (const auto& r : runs) {
    json col = column_json(r.column);
    if (!r.traces.empty()) col["traces"] = traces_json(r.traces);
    doc["runs"].push_back(std::move(col));
    for (auto& line : column_summary(r.column)) summary.push_back(line);
  }
  doc["summary"] = summary;
  return doc;
}

json compare_report(const std::string& source, const ComparisonReport& report) {
  json doc = report_header("compare", source);
  add_comparison(doc, report);
  json summary = json::array();
  for (const auto& c : report.columns) {
    for (auto& line : column_summary(c)) summary.push_back(line);
  }
  doc["summary"] = summary;
  return doc;
}

json robustness_report(const std::string& source, const RobustnessReport& report) {
  json doc = report_header("robustness", source);
  json perts = json::array();
  for (const auto& p : report.perturbations) {
    const bool op = p.kind == Perturbation::Kind::InitialOpinion;
    perts.push_back({{"agent", p.agent + 1}, {"kind", op ? "opinion" : "eps"}, {"value", p.value}});
  }
  doc["perturbations"] = perts;
  add_comparison(doc, report.comparison);

  const auto& v = report.verdict;
  auto labels = [](const std::vector<AgentIndex>& a) {
    json out = json::array();
    for (auto i : a) out.push_back(agent_label(i));
    return out;
  };
  doc["verdict"] = {{"chosen_unchanged", v.chosen_unchanged},
                    {"outcome_terms_unchanged", v.outcome_terms_unchanged},
                    {"untargeted_unchanged", v.untargeted_unchanged},
                    {"targeted_agents", labels(v.targeted)},
                    {"changed_agents", labels(v.changed_agents)},
                    {"winner_changed_agents", labels(v.winner_changed_agents)},
                    {"baseline_terms", terms_json(v.baseline_terms)},
                    {"perturbed_terms", terms_json(v.perturbed_terms)},
                    {"added_terms", terms_json(v.added_terms)},
                    {"removed_terms", terms_json(v.removed_terms)},
                    {"max_abs_rep_delta", v.max_abs_rep_delta}};

  json summary = json::array();
  for (const auto& c : report.comparison.columns) {
    for (auto& line : column_summary(c)) summary.push_back(line);
  }
  std::string verdict = v.chosen_unchanged ? "verdict: unchanged" : "verdict: changed";
  if (!v.chosen_unchanged) {
    verdict += " (agents";
    for (auto i : v.changed_agents) verdict += " " + agent_label(i);
    verdict += ")";
  }
  for (Term t : v.added_terms) verdict += "; new term " + to_string(t);
  for (Term t : v.removed_terms) verdict += "; lost term " + to_string(t);
  summary.push_back(verdict);
  doc["summary"] = summary;
  return doc;
}

std::string report_to_csv(const json& report) {
  std::ostringstream out;
  out << "# report\nkey,value\n";
  out << "tool," << number(report["tool"]["name"]) << "\n";
  out << "version," << number(report["tool"]["version"]) << "\n";
  out << "command," << number(report["command"]) << "\n";
  out << "source," << number(report["source"]) << "\n";

  const bool is_run = report.contains("runs");
  const auto& cols = is_run ? report["runs"] : report["columns"];
  for (std::size_t c = 0; c < cols.size(); ++c) {
    csv_column(out, (is_run ? "run " : "column ") + std::to_string(c), cols[c]);
  }

  if (report.contains("perturbations")) {
    out << "# perturbations\nagent,kind,value\n";
    for (const auto& p : report["perturbations"]) {
      out << number(p["agent"]) << "," << number(p["kind"]) << "," << number(p["value"]) << "\n";
    }
  }
  if (report.contains("agreement")) {
    out << "# agreement\ncolumn_a,column_b,fraction\n";
    for (std::size_t a = 0; a < report["agreement"].size(); ++a) {
      for (std::size_t b = 0; b < report["agreement"][a].size(); ++b) {
        out << a << "," << b << "," << number(report["agreement"][a][b]) << "\n";
      }
    }
    out << "# rep_deltas\ncolumn,agent,term,delta\n";
    const auto& deltas = report["rep_deltas"];
    for (std::size_t c = 0; c < deltas.size(); ++c) {
      for (std::size_t i = 0; i < deltas[c].size(); ++i) {
        for (std::size_t xi = 0; xi < deltas[c][i].size(); ++xi) {
          out << c << "," << agent_label(i) << "," << xi << "," << number(deltas[c][i][xi]) << "\n";
        }
      }
    }
  }
  if (report.contains("verdict")) {
    out << "# verdict\nkey,value\n";
    for (const auto& [k, v] : report["verdict"].items()) out << k << "," << number(v) << "\n";
  }
  out << "# summary\nline\n";
  for (const auto& line : report["summary"]) out << number(line) << "\n";
  return out.str();
}

}  // namespace fuzzy_evolve
