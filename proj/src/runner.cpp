#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qgame/errors.hpp"
#include "qgame/experiments.hpp"

namespace qgame {
namespace {

using nlohmann::json;

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> player_columns(const std::string& prefix, int n) {
  std::vector<std::string> cols;
  for (int i = 1; i <= n; ++i) cols.push_back(prefix + std::to_string(i));
  return cols;
}

void append(std::vector<std::string>& row, const std::vector<double>& values) {
  for (double v : values) row.push_back(format_number(v));
}

json header(const ExperimentConfig& c) {
  json h{{"analysis", to_string(c.analysis)}};
  if (c.procedure) h["procedure"] = c.procedure_name;
  if (c.scenario) h["scenario"] = c.scenario->name();
  return h;
}

Report distribution_report(const ExperimentConfig& c) {
  const EwlProcedure& p = *c.procedure;
  const Scenario& s = *c.scenario;
  const int n = p.num_players();
  Report r{header(c), {}, {}};
  std::vector<std::optional<BitString>> inputs;
  if (!s.has_input()) inputs.push_back(std::nullopt);
  else if (c.parameters.input) inputs.push_back(c.parameters.input);
  else inputs.assign(s.inputs().begin(), s.inputs().end());

  r.csv_header = s.has_input() ? std::vector<std::string>{"input", "output", "probability"}
                               : std::vector<std::string>{"output", "probability"};
  json dists = json::array();
  for (const auto& x : inputs) {
    const OutcomeDistribution d = outcome_distribution(p, *c.parameters.profile, x);
    json mass = json::object();
    for (BitString y = 0; y < d.mass.size(); ++y) {
      if (d.mass[y] <= kExactTol) continue;  // support only
      mass[bit_string(y, n)] = d.mass[y];
      std::vector<std::string> row;
      if (x) row.push_back(bit_string(*x, n));
      row.push_back(bit_string(y, n));
      row.push_back(format_number(d.mass[y]));
      r.csv_rows.push_back(std::move(row));
    }
    json entry{{"mass", std::move(mass)}};
    if (x) entry["input"] = bit_string(*x, n);
    dists.push_back(std::move(entry));
  }
  r.json["distributions"] = std::move(dists);
  return r;
}

Report payoff_report(const ExperimentConfig& c) {
  const InducedGame game(*c.procedure, *c.scenario);
  const int n = game.num_players();
  Report r{header(c), player_columns("strategy", n), {}};
  for (auto& col : player_columns("payoff", n)) r.csv_header.push_back(col);
  json rows = json::array();
  const auto emit = [&](const std::vector<std::string>& labels, const std::vector<double>& pay) {
    std::vector<std::string> row = labels;
    append(row, pay);
    r.csv_rows.push_back(std::move(row));
    rows.push_back({{"profile", labels}, {"payoffs", pay}});
  };
  if (c.parameters.profile) {
    std::vector<std::string> labels;
    for (const auto& ps : *c.parameters.profile) labels.push_back(ps.label());
    emit(labels, game.payoff(*c.parameters.profile));
  } else {
    for (const IndexProfile& prof : all_profiles(game, c.parameters.budget)) {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < prof.size(); ++i) labels.push_back(game.strategy_label(static_cast<int>(i), prof[i]));
      emit(labels, game.payoff(prof));
    }
  }
  r.json["rows"] = std::move(rows);
  return r;
}

Report nash_report(const ExperimentConfig& c) {
  const InducedGame game(*c.procedure, *c.scenario);
  const int n = game.num_players();
  const auto reports = find_pure_nash(game, c.parameters.nash_epsilon, c.parameters.budget);
  Report r{header(c), player_columns("strategy", n), {}};
  for (auto& col : player_columns("payoff", n)) r.csv_header.push_back(col);
  r.csv_header.push_back("epsilon");
  json eqs = json::array();
  for (const NashReport& nr : reports) {
    std::vector<std::string> row = nr.labels;
    append(row, nr.payoffs);
    row.push_back(format_number(nr.epsilon));
    r.csv_rows.push_back(std::move(row));
    eqs.push_back({{"profile", nr.labels}, {"indices", nr.profile}, {"payoffs", nr.payoffs},
                   {"epsilon", nr.epsilon}});
  }
  r.json["nash_epsilon"] = c.parameters.nash_epsilon;
  r.json["equilibria"] = std::move(eqs);
  return r;
}

Report pareto_report(const ExperimentConfig& c) {
  const InducedGame game(*c.procedure, *c.scenario);
  const int n = game.num_players();
  const auto base = game.payoff(*c.parameters.profile);
  const auto candidates = all_profiles(game, c.parameters.budget);
  const auto dominating = find_dominating(game, base, candidates);
  const bool optimal = !dominating;
  std::vector<std::string> labels;
  for (const auto& ps : *c.parameters.profile) labels.push_back(ps.label());
  Report r{header(c), player_columns("strategy", n), {}};
  for (auto& col : player_columns("payoff", n)) r.csv_header.push_back(col);
  r.csv_header.insert(r.csv_header.end(), {"pareto_optimal", "candidates"});
  std::vector<std::string> row = labels;
  append(row, base);
  row.push_back(optimal ? "true" : "false");
  row.push_back(std::to_string(candidates.size()));
  r.csv_rows.push_back(std::move(row));
  r.json["profile"] = labels;
  r.json["payoffs"] = base;
  r.json["pareto_optimal"] = optimal;
  r.json["candidates"] = candidates.size();
  if (!optimal) {
    std::vector<std::string> dom;
    for (std::size_t i = 0; i < candidates[*dominating].size(); ++i) {
      dom.push_back(game.strategy_label(static_cast<int>(i), candidates[*dominating][i]));
    }
    r.json["dominated_by"] = dom;
  }
  return r;
}

Report classical_bound_report(const ExperimentConfig& c) {
  const Scenario& s = *c.scenario;
  const auto bound = classical_deterministic_bound(s, c.parameters.budget);
  Report r{header(c), {"value"}, {}};
  for (auto& col : player_columns("response", s.num_players())) r.csv_header.push_back(col);
  std::vector<std::string> row{format_number(bound.value)};
  json prof = json::array();
  for (const ResponseFunction& f : bound.best_profile) {
    row.push_back(f.name());
    prof.push_back({{"on_zero", f.on_zero}, {"on_one", f.on_one}});
  }
  r.csv_rows.push_back(std::move(row));
  r.json["value"] = bound.value;
  r.json["best_profile"] = std::move(prof);
  return r;
}

Report symmetric_report(const ExperimentConfig& c) {
  const InducedGame game(*c.procedure, *c.scenario);
  const std::uint64_t m = game.strategy_count(0);
  if (m > c.parameters.budget) {
    throw BudgetError("symmetric_max: " + std::to_string(m) + " symmetric profiles exceed the budget of " +
                      std::to_string(c.parameters.budget));
  }
  const SymmetricOptimum best = grid_search_symmetric_max(game);
  const IndexProfile prof(static_cast<std::size_t>(game.num_players()), best.strategy);
  // The ε-Nash check costs n·m evaluations; skip it beyond the budget.
  std::optional<double> gap;
  if (m * static_cast<std::uint64_t>(game.num_players()) <= c.parameters.budget) gap = nash_gap(game, prof);
  Report r{header(c), {"strategy", "payoff", "nash_gap"}, {}};
  r.csv_rows.push_back({best.label, format_number(best.payoff), gap ? format_number(*gap) : ""});
  r.json["strategy"] = best.label;
  r.json["payoff"] = best.payoff;
  r.json["payoffs"] = game.payoff(prof);
  r.json["nash_gap"] = gap ? json(*gap) : json(nullptr);
  return r;
}

Report claims_report(const ExperimentConfig& c, bool* all_passed) {
  const auto claims = verify_claims();
  Report r{header(c), {"claim", "expected", "computed", "tolerance", "comparison", "pass", "provenance"}, {}};
  json list = json::array();
  bool ok = true;
  const auto vec = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_number(v[i]);
    return s;
  };
  for (const ClaimResult& cr : claims) {
    ok = ok && cr.pass;
    r.csv_rows.push_back({cr.id, vec(cr.expected), vec(cr.computed), format_number(cr.tolerance),
                          to_string(cr.comparison), cr.pass ? "pass" : "fail", cr.provenance});
    list.push_back({{"id", cr.id},
                    {"provenance", cr.provenance},
                    {"expected", cr.expected},
                    {"computed", cr.computed},
                    {"tolerance", cr.tolerance},
                    {"comparison", to_string(cr.comparison)},
                    {"pass", cr.pass}});
  }
  r.json["claims"] = std::move(list);
  r.json["all_passed"] = ok;
  if (all_passed) *all_passed = ok;
  return r;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string Report::render(OutputFormat format) const {
  if (format == OutputFormat::kReportJson) return json.dump(2) + "\n";
  std::ostringstream out;
  const auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_escape(fields[i]);
    out << "\n";
  };
  line(csv_header);
  for (const auto& row : csv_rows) line(row);
  return out.str();
}

Report run_analysis(const ExperimentConfig& config, bool* all_claims_passed) {
  if (all_claims_passed) *all_claims_passed = true;
  switch (config.analysis) {
    case Analysis::kDistribution: return distribution_report(config);
    case Analysis::kPayoff: return payoff_report(config);
    case Analysis::kNash: return nash_report(config);
    case Analysis::kPareto: return pareto_report(config);
    case Analysis::kClassicalBound: return classical_bound_report(config);
    case Analysis::kSymmetricMax: return symmetric_report(config);
    case Analysis::kVerifyClaims: return claims_report(config, all_claims_passed);
  }
  throw ConfigError("analysis", "unsupported analysis");
}

std::filesystem::path write_report(const ExperimentConfig& config, const Report& report) {
  std::filesystem::path path = config.output_path;
  if (path.empty()) {
    path = to_string(config.analysis) + (config.format == OutputFormat::kTableCsv ? ".csv" : ".json");
  }
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("output.path", "cannot write '" + path.string() + "'");
  out << report.render(config.format);
  return path;
}

}  // namespace qgame
