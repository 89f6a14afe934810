#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "qgame/errors.hpp"
#include "qgame/experiments.hpp"

namespace qgame {
namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

const std::string& get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get_ref<const std::string&>();
}

// Unknown keys are almost always typos; reject them.
void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError(join(path, it.key()), "unknown field");
  }
}

Complex parse_complex(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(path, "expected a complex number [re, im]");
}

CMatrix parse_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a non-empty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  std::vector<Complex> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = index_path(path, r);
    if (!v[r].is_array() || v[r].empty()) throw ConfigError(rp, "expected a non-empty row");
    if (r == 0) cols = v[r].size();
    if (v[r].size() != cols) throw ConfigError(rp, "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) entries.push_back(parse_complex(v[r][c], index_path(rp, c)));
  }
  try {
    return CMatrix(rows, cols, std::move(entries));
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

BitString parse_bits(const json& v, int n, const std::string& path) {
  const std::string& s = get_string(v, path);
  if (static_cast<int>(s.size()) != n) {
    throw ConfigError(path, "expected a bit string of length " + std::to_string(n));
  }
  BitString b = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw ConfigError(path, "expected only '0' and '1'");
    b = (b << 1) | static_cast<BitString>(c == '1');
  }
  return b;
}

Strategy parse_strategy(const json& v, const std::string& path) {
  try {
    if (v.is_string()) return make_strategy(GateLabel::parse(v.get<std::string>()));
    if (v.is_object()) {
      check_keys(v, path, {"label", "matrix"});
      if (!v.contains("matrix")) throw ConfigError(join(path, "matrix"), "missing");
      CMatrix m = parse_matrix(v["matrix"], join(path, "matrix"));
      if (m.rows() != 2 || m.cols() != 2) throw ConfigError(join(path, "matrix"), "expected a 2x2 matrix");
      if (!is_unitary(m)) throw ConfigError(join(path, "matrix"), "matrix is not unitary");
      std::string label = v.contains("label") ? get_string(v["label"], join(path, "label")) : "custom";
      return {std::move(label), std::move(m)};
    }
    if (v.is_array()) {
      CMatrix m = parse_matrix(v, path);
      if (m.rows() != 2 || m.cols() != 2) throw ConfigError(path, "expected a 2x2 matrix");
      if (!is_unitary(m)) throw ConfigError(path, "matrix is not unitary");
      return {"custom", std::move(m)};
    }
  } catch (const ConstraintError& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path, "expected a gate label, a matrix, or {label, matrix}");
}

PlayerStrategy parse_player_strategy(const json& v, const std::string& path) {
  if (v.is_object() && (v.contains("on_zero") || v.contains("on_one"))) {
    check_keys(v, path, {"on_zero", "on_one"});
    if (!v.contains("on_zero")) throw ConfigError(join(path, "on_zero"), "missing");
    if (!v.contains("on_one")) throw ConfigError(join(path, "on_one"), "missing");
    return {parse_strategy(v["on_zero"], join(path, "on_zero")),
            parse_strategy(v["on_one"], join(path, "on_one"))};
  }
  return {parse_strategy(v, path), std::nullopt};
}

// A single strategy is shorthand for "every player uses it". An array whose
// elements are themselves arrays of rows is one explicit matrix.
StrategyProfile parse_profile(const json& v, int n, const std::string& path) {
  const bool is_list = v.is_array() && !v.empty() &&
                       (v[0].is_string() || v[0].is_object() ||
                        (v[0].is_array() && !v[0].empty() && v[0][0].is_array() &&
                         !v[0][0].empty() && v[0][0][0].is_array()));
  if (!is_list) {
    return StrategyProfile(static_cast<std::size_t>(n), parse_player_strategy(v, path));
  }
  if (v.size() != static_cast<std::size_t>(n)) {
    throw ConfigError(path, "expected " + std::to_string(n) + " strategies, got " +
                                std::to_string(v.size()));
  }
  StrategyProfile prof;
  for (std::size_t i = 0; i < v.size(); ++i) prof.push_back(parse_player_strategy(v[i], index_path(path, i)));
  return prof;
}

GridAxis parse_axis(const json& v, const std::string& path, bool theta) {
  if (v.is_number_integer()) {
    const int pts = get_int(v, path);
    if (pts < 1) throw ConfigError(path, "grid resolution must be >= 1");
    if (theta) {
      if (pts < 2) throw ConfigError(path, "theta grid resolution must be >= 2");
      return GridAxis::theta(pts);
    }
    return pts == 1 ? GridAxis::fixed(0.0) : GridAxis::angle(pts);
  }
  check_keys(v, path, {"lo", "hi", "points", "include_hi"});
  GridAxis a;
  for (const char* k : {"lo", "hi", "points"}) {
    if (!v.contains(k)) throw ConfigError(join(path, k), "missing");
  }
  a.lo = get_number(v["lo"], join(path, "lo"));
  a.hi = get_number(v["hi"], join(path, "hi"));
  a.points = get_int(v["points"], join(path, "points"));
  if (v.contains("include_hi")) {
    if (!v["include_hi"].is_boolean()) throw ConfigError(join(path, "include_hi"), "expected a boolean");
    a.include_hi = v["include_hi"].get<bool>();
  }
  if (a.points < 1) throw ConfigError(join(path, "points"), "must be >= 1");
  return a;
}

StrategySpace parse_space(const json& v, const std::string& path) {
  check_keys(v, path, {"finite", "grid"});
  if (v.contains("finite") == v.contains("grid")) {
    throw ConfigError(path, "expected exactly one of 'finite' or 'grid'");
  }
  try {
    if (v.contains("finite")) {
      const json& list = v["finite"];
      const std::string lp = join(path, "finite");
      if (!list.is_array() || list.empty()) throw ConfigError(lp, "expected a non-empty list");
      std::vector<Strategy> elements;
      for (std::size_t i = 0; i < list.size(); ++i) elements.push_back(parse_strategy(list[i], index_path(lp, i)));
      return StrategySpace::finite(std::move(elements));
    }
    const json& g = v["grid"];
    const std::string gp = join(path, "grid");
    check_keys(g, gp, {"theta", "phi", "chi"});
    for (const char* k : {"theta", "phi", "chi"}) {
      if (!g.contains(k)) throw ConfigError(join(gp, k), "missing");
    }
    return StrategySpace::grid(parse_axis(g["theta"], join(gp, "theta"), true),
                               parse_axis(g["phi"], join(gp, "phi"), false),
                               parse_axis(g["chi"], join(gp, "chi"), false));
  } catch (const ConstraintError& e) {
    throw ConfigError(path, e.what());
  }
}

CMatrix parse_operator(const json& v, int n, const std::string& path) {
  const std::size_t dim = std::size_t{1} << n;
  CMatrix m;
  try {
    if (v.is_string()) {
      const std::string& s = v.get_ref<const std::string&>();
      if (s == "identity") {
        m = CMatrix::identity(dim);
      } else {
        m = named_gate(GateLabel::parse(s));
      }
    } else if (v.is_object()) {
      check_keys(v, path, {"dagger"});
      if (!v.contains("dagger")) throw ConfigError(path, "expected {\"dagger\": operator}");
      m = conjugate_transpose(parse_operator(v["dagger"], n, join(path, "dagger")));
    } else {
      m = parse_matrix(v, path);
    }
  } catch (const ConstraintError& e) {
    throw ConfigError(path, e.what());
  }
  if (m.rows() != dim || m.cols() != dim) {
    throw ConfigError(path, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " operator");
  }
  if (!is_unitary(m)) throw ConfigError(path, "operator is not unitary");
  return m;
}

CMatrix parse_state(const json& v, int n, const std::string& path) {
  CMatrix rho;
  try {
    if (v.is_string()) {
      const std::string& s = v.get_ref<const std::string&>();
      if (s == "ghz") rho = ghz_state(n).outer();
      else if (s == "minority_rho_in") rho = minority_rho_in();
      else throw ConfigError(path, "unknown named state '" + s + "'");
    } else {
      check_keys(v, path, {"density", "pure", "basis", "diagonal", "fsslh_psi_in", "f09"});
      if (v.size() != 1) throw ConfigError(path, "expected exactly one state form");
      const auto& [key, val] = *v.items().begin();
      const std::string kp = join(path, key);
      if (key == "density") {
        rho = parse_matrix(val, kp);
      } else if (key == "pure") {
        if (!val.is_array() || val.empty()) throw ConfigError(kp, "expected amplitudes");
        std::vector<Complex> amps;
        for (std::size_t i = 0; i < val.size(); ++i) amps.push_back(parse_complex(val[i], index_path(kp, i)));
        CVector psi(std::move(amps));
        if (std::abs(psi.norm() - 1.0) > kStructuralTol) throw ConfigError(kp, "state is not normalized");
        rho = psi.outer();
      } else if (key == "basis") {
        rho = basis_density(n, parse_bits(val, n, kp));
      } else if (key == "diagonal") {
        if (!val.is_array()) throw ConfigError(kp, "expected probabilities");
        std::vector<double> p;
        for (std::size_t i = 0; i < val.size(); ++i) p.push_back(get_number(val[i], index_path(kp, i)));
        rho = diagonal_mixture(p);
      } else if (key == "fsslh_psi_in") {
        rho = fsslh_psi_in(get_number(val, kp)).outer();
      } else {
        if (!val.is_array() || val.size() != 2) throw ConfigError(kp, "expected [eps1, eps2]");
        rho = f09_rho(get_number(val[0], index_path(kp, 0)), get_number(val[1], index_path(kp, 1)));
      }
    }
  } catch (const ConstraintError& e) {
    throw ConfigError(path, e.what());
  } catch (const DimensionError& e) {
    throw ConfigError(path, e.what());
  }
  const std::size_t dim = std::size_t{1} << n;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw ConfigError(path, "expected a state on " + std::to_string(n) + " qubits");
  }
  if (!is_density_matrix(rho)) throw ConfigError(path, "not a valid density matrix");
  return rho;
}

EwlProcedure parse_procedure(const json& v, const std::string& path) {
  check_keys(v, path, {"name", "n", "h", "j", "initial_state", "strategy_space"});
  for (const char* k : {"n", "h", "j", "initial_state", "strategy_space"}) {
    if (!v.contains(k)) throw ConfigError(join(path, k), "missing");
  }
  const int n = get_int(v["n"], join(path, "n"));
  if (n < 1 || n > 5) throw ConfigError(join(path, "n"), "player count must be in [1, 5]");
  std::string name = v.contains("name") ? get_string(v["name"], join(path, "name")) : "custom";
  try {
    return EwlProcedure(std::move(name), n, parse_operator(v["h"], n, join(path, "h")),
                        parse_operator(v["j"], n, join(path, "j")),
                        parse_state(v["initial_state"], n, join(path, "initial_state")),
                        parse_space(v["strategy_space"], join(path, "strategy_space")));
  } catch (const ConstraintError& e) {
    throw ConfigError(path, e.what());
  }
}

PayoffTable2x2 parse_table(const json& v, const std::string& path) {
  check_keys(v, path, {"player1", "player2"});
  PayoffTable2x2 t;
  for (auto [key, dest] : {std::pair{"player1", &t.player1}, std::pair{"player2", &t.player2}}) {
    const std::string kp = join(path, key);
    if (!v.contains(key)) throw ConfigError(kp, "missing");
    const json& arr = v[key];
    if (!arr.is_array() || arr.size() != 4) {
      throw ConfigError(kp, "expected 4 payoffs for outputs 00, 01, 10, 11");
    }
    for (std::size_t i = 0; i < 4; ++i) (*dest)[i] = get_number(arr[i], index_path(kp, i));
  }
  return t;
}

Scenario parse_custom_scenario(const json& v, const std::string& path) {
  check_keys(v, path, {"name", "n", "inputs", "outputs", "payoffs"});
  for (const char* k : {"n", "payoffs"}) {
    if (!v.contains(k)) throw ConfigError(join(path, k), "missing");
  }
  const int n = get_int(v["n"], join(path, "n"));
  if (n < 1 || n > 5) throw ConfigError(join(path, "n"), "player count must be in [1, 5]");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<BitString> inputs;
  if (v.contains("inputs")) {
    const json& a = v["inputs"];
    if (!a.is_array()) throw ConfigError(join(path, "inputs"), "expected a list of bit strings");
    for (std::size_t i = 0; i < a.size(); ++i) inputs.push_back(parse_bits(a[i], n, index_path(join(path, "inputs"), i)));
  }
  std::vector<BitString> outputs;
  if (v.contains("outputs")) {
    const json& a = v["outputs"];
    if (!a.is_array()) throw ConfigError(join(path, "outputs"), "expected a list of bit strings");
    for (std::size_t i = 0; i < a.size(); ++i) outputs.push_back(parse_bits(a[i], n, index_path(join(path, "outputs"), i)));
  } else {
    for (std::size_t y = 0; y < dim; ++y) outputs.push_back(static_cast<BitString>(y));
  }
  // payoffs: {"<input>": {"<output>": [per-player]}}; the no-input key is "".
  const json& pay = v["payoffs"];
  const std::string pp = join(path, "payoffs");
  if (!pay.is_object()) throw ConfigError(pp, "expected an object keyed by input");
  const std::size_t slots = inputs.empty() ? 1 : inputs.size();
  std::vector<double> table(slots * dim * static_cast<std::size_t>(n), 0.0);
  for (std::size_t slot = 0; slot < slots; ++slot) {
    const std::string key = inputs.empty() ? "" : bit_string(inputs[slot], n);
    const std::string kp = join(pp, key.empty() ? "\"\"" : key);
    if (!pay.contains(key)) throw ConfigError(kp, "missing payoffs for this input");
    const json& row = pay[key];
    if (!row.is_object()) throw ConfigError(kp, "expected an object keyed by output");
    for (BitString y : outputs) {
      const std::string ok = bit_string(y, n);
      if (!row.contains(ok)) throw ConfigError(join(kp, ok), "missing payoff vector");
      const json& vec = row[ok];
      if (!vec.is_array() || vec.size() != static_cast<std::size_t>(n)) {
        throw ConfigError(join(kp, ok), "expected " + std::to_string(n) + " payoffs");
      }
      for (int i = 0; i < n; ++i) {
        table[(slot * dim + y) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
            get_number(vec[static_cast<std::size_t>(i)], index_path(join(kp, ok), static_cast<std::size_t>(i)));
      }
    }
  }
  std::string name = v.contains("name") ? get_string(v["name"], join(path, "name")) : "custom";
  try {
    return Scenario(std::move(name), n, std::move(inputs), std::move(outputs), std::move(table));
  } catch (const ConstraintError& e) {
    throw ConfigError(path, e.what());
  }
}

Scenario parse_scenario(const json& v, const std::string& path) {
  std::string name;
  const json* table = nullptr;
  int n = 4;
  if (v.is_string()) {
    name = v.get<std::string>();
  } else {
    if (!v.is_object() || !v.contains("name")) throw ConfigError(join(path, "name"), "missing");
    name = get_string(v["name"], join(path, "name"));
    if (name == "custom" || v.contains("payoffs")) return parse_custom_scenario(v, path);
    check_keys(v, path, {"name", "table", "n"});
    if (v.contains("table")) table = &v["table"];
    if (v.contains("n")) n = get_int(v["n"], join(path, "n"));
  }
  try {
    if (name == "minority") return minority_scenario(n);
    if (name == "modulo4") return modulo4_scenario();
    if (name == "prisoners_dilemma") {
      return prisoners_dilemma_scenario(table ? parse_table(*table, join(path, "table"))
                                              : PayoffTable2x2::default_prisoners_dilemma());
    }
    if (name == "battle_of_sexes") {
      return battle_sexes_scenario(table ? parse_table(*table, join(path, "table"))
                                         : PayoffTable2x2::default_battle_of_sexes());
    }
  } catch (const ConstraintError& e) {
    throw ConfigError(table ? join(path, "table") : path, e.what());
  }
  throw ConfigError(v.is_string() ? path : join(path, "name"), "unknown scenario '" + name + "'");
}

Analysis parse_analysis(const json& v, const std::string& path) {
  static const std::map<std::string, Analysis> names{
      {"distribution", Analysis::kDistribution}, {"payoff", Analysis::kPayoff},
      {"nash", Analysis::kNash},                 {"pareto", Analysis::kPareto},
      {"classical_bound", Analysis::kClassicalBound},
      {"symmetric_max", Analysis::kSymmetricMax},
      {"verify_claims", Analysis::kVerifyClaims}};
  if (!v.is_string() || v.get<std::string>().empty()) throw ConfigError(path, "must name an analysis");
  auto it = names.find(v.get<std::string>());
  if (it == names.end()) throw ConfigError(path, "unknown analysis '" + v.get<std::string>() + "'");
  return it->second;
}

void parse_catalog_params(const json& p, CatalogParams& cp) {
  if (p.contains("gamma")) cp.gamma = get_number(p["gamma"], "parameters.gamma");
  if (p.contains("alpha")) cp.alpha = get_number(p["alpha"], "parameters.alpha");
  if (p.contains("eps1")) cp.eps1 = get_number(p["eps1"], "parameters.eps1");
  if (p.contains("eps2")) cp.eps2 = get_number(p["eps2"], "parameters.eps2");
  if (p.contains("grid")) {
    const json& g = p["grid"];
    check_keys(g, "parameters.grid", {"theta", "phi", "chi"});
    for (auto [key, dest] : {std::pair{"theta", &cp.grid_theta}, std::pair{"phi", &cp.grid_phi},
                             std::pair{"chi", &cp.grid_chi}}) {
      if (!g.contains(key)) continue;
      const std::string kp = join("parameters.grid", key);
      *dest = get_int(g[key], kp);
      if (*dest < 1 || (std::string(key) == "theta" && *dest < 2)) {
        throw ConfigError(kp, "grid resolution too small");
      }
    }
  }
}

}  // namespace

std::string to_string(Analysis a) {
  switch (a) {
    case Analysis::kDistribution: return "distribution";
    case Analysis::kPayoff: return "payoff";
    case Analysis::kNash: return "nash";
    case Analysis::kPareto: return "pareto";
    case Analysis::kClassicalBound: return "classical_bound";
    case Analysis::kSymmetricMax: return "symmetric_max";
    case Analysis::kVerifyClaims: return "verify_claims";
  }
  return "?";
}

std::string to_string(OutputFormat f) {
  return f == OutputFormat::kTableCsv ? "table_csv" : "report_json";
}

ExperimentConfig parse_config(const json& doc) {
  check_keys(doc, "", {"procedure", "scenario", "analysis", "parameters", "output"});
  ExperimentConfig cfg;
  if (!doc.contains("analysis")) throw ConfigError("analysis", "missing");
  cfg.analysis = parse_analysis(doc["analysis"], "analysis");

  if (doc.contains("parameters")) {
    const json& p = doc["parameters"];
    check_keys(p, "parameters", {"gamma", "alpha", "eps1", "eps2", "battle_of_sexes_table", "grid",
                                 "nash_epsilon", "seed", "samples", "budget", "profile", "input"});
    parse_catalog_params(p, cfg.parameters.catalog);
    if (p.contains("battle_of_sexes_table")) {
      cfg.parameters.catalog.battle_sexes =
          parse_table(p["battle_of_sexes_table"], "parameters.battle_of_sexes_table");
    }
    if (p.contains("nash_epsilon")) {
      cfg.parameters.nash_epsilon = get_number(p["nash_epsilon"], "parameters.nash_epsilon");
      if (!(cfg.parameters.nash_epsilon >= 0.0)) throw ConfigError("parameters.nash_epsilon", "must be >= 0");
    }
    if (p.contains("seed")) cfg.parameters.seed = get_count(p["seed"], "parameters.seed");
    if (p.contains("samples")) {
      cfg.parameters.samples = get_count(p["samples"], "parameters.samples");
      if (cfg.parameters.samples == 0) throw ConfigError("parameters.samples", "must be >= 1");
    }
    if (p.contains("budget")) cfg.parameters.budget = get_count(p["budget"], "parameters.budget");
  }

  if (cfg.analysis != Analysis::kVerifyClaims) {
    if (!doc.contains("procedure") && cfg.analysis != Analysis::kClassicalBound) {
      throw ConfigError("procedure", "missing");
    }
    if (doc.contains("procedure")) {
      const json& proc = doc["procedure"];
      if (proc.is_string()) {
        cfg.procedure_name = proc.get<std::string>();
        try {
          CatalogEntry entry = catalog(cfg.procedure_name, cfg.parameters.catalog);
          cfg.procedure = std::move(entry.procedure);
          cfg.scenario = std::move(entry.scenario);
        } catch (const ConstraintError& e) {
          throw ConfigError("procedure", e.what());
        }
      } else {
        cfg.procedure = parse_procedure(proc, "procedure");
        cfg.procedure_name = cfg.procedure->name();
      }
    }
    if (doc.contains("scenario")) cfg.scenario = parse_scenario(doc["scenario"], "scenario");
    if (!cfg.scenario) throw ConfigError("scenario", "missing (required for explicit procedures)");
    if (cfg.procedure && cfg.procedure->num_players() != cfg.scenario->num_players()) {
      throw ConfigError("scenario", "player count does not match the procedure");
    }
  }

  if (doc.contains("parameters")) {
    const json& p = doc["parameters"];
    const int n = cfg.procedure ? cfg.procedure->num_players() : 0;
    if (p.contains("profile")) {
      if (!cfg.procedure) throw ConfigError("parameters.profile", "needs a procedure");
      cfg.parameters.profile = parse_profile(p["profile"], n, "parameters.profile");
      for (std::size_t i = 0; i < cfg.parameters.profile->size(); ++i) {
        const PlayerStrategy& ps = (*cfg.parameters.profile)[i];
        const bool paired = ps.on_one.has_value();
        if (paired != cfg.scenario->has_input()) {
          throw ConfigError(index_path("parameters.profile", i),
                            paired ? "scenario has no input; give a single strategy"
                                   : "scenario has inputs; give {on_zero, on_one}");
        }
        for (const Strategy* s : {&ps.on_zero, paired ? &*ps.on_one : nullptr}) {
          if (s && !cfg.procedure->strategy_space().contains(s->matrix)) {
            throw ConfigError(index_path("parameters.profile", i),
                              "strategy '" + s->label + "' is not in the procedure's strategy space");
          }
        }
      }
    }
    if (p.contains("input")) {
      if (!cfg.scenario || !cfg.scenario->has_input()) {
        throw ConfigError("parameters.input", "scenario takes no input");
      }
      cfg.parameters.input = parse_bits(p["input"], n, "parameters.input");
      if (std::find(cfg.scenario->inputs().begin(), cfg.scenario->inputs().end(),
                    *cfg.parameters.input) == cfg.scenario->inputs().end()) {
        throw ConfigError("parameters.input", "not a valid input of the scenario");
      }
    }
  }

  if (cfg.analysis == Analysis::kDistribution || cfg.analysis == Analysis::kPareto) {
    if (!cfg.parameters.profile) throw ConfigError("parameters.profile", "required for this analysis");
  }
  if (cfg.analysis == Analysis::kClassicalBound && !cfg.scenario->has_input()) {
    throw ConfigError("scenario", "classical_bound needs a scenario with inputs");
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    check_keys(o, "output", {"format", "path"});
    if (o.contains("format")) {
      const std::string& f = get_string(o["format"], "output.format");
      if (f == "table_csv") cfg.format = OutputFormat::kTableCsv;
      else if (f == "report_json") cfg.format = OutputFormat::kReportJson;
      else throw ConfigError("output.format", "expected 'table_csv' or 'report_json'");
    }
    if (o.contains("path")) cfg.output_path = get_string(o["path"], "output.path");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("parse error: ") + e.what());
  }
  return parse_config(doc);
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

json axis_to_json(const GridAxis& a) {
  return {{"lo", a.lo}, {"hi", a.hi}, {"points", a.points}, {"include_hi", a.include_hi}};
}

}  // namespace

json procedure_to_json(const EwlProcedure& p) {
  json space;
  const StrategySpace& s = p.strategy_space();
  if (s.is_finite()) {
    json list = json::array();
    for (const Strategy& e : s.elements()) list.push_back({{"label", e.label}, {"matrix", matrix_to_json(e.matrix)}});
    space["finite"] = std::move(list);
  } else {
    space["grid"] = {{"theta", axis_to_json(s.theta_axis())},
                     {"phi", axis_to_json(s.phi_axis())},
                     {"chi", axis_to_json(s.chi_axis())}};
  }
  return {{"name", p.name()},
          {"n", p.num_players()},
          {"h", matrix_to_json(p.h_op())},
          {"j", matrix_to_json(p.j_op())},
          {"initial_state", {{"density", matrix_to_json(p.initial_state())}}},
          {"strategy_space", std::move(space)}};
}

json scenario_to_json(const Scenario& s) {
  const int n = s.num_players();
  json inputs = json::array();
  for (BitString x : s.inputs()) inputs.push_back(bit_string(x, n));
  json outputs = json::array();
  for (BitString y : s.outputs()) outputs.push_back(bit_string(y, n));
  json payoffs = json::object();
  for (std::size_t slot = 0; slot < s.input_slots(); ++slot) {
    json row = json::object();
    for (BitString y : s.outputs()) {
      json vec = json::array();
      for (int i = 0; i < n; ++i) vec.push_back(s.evaluate(slot, y, i));
      row[bit_string(y, n)] = std::move(vec);
    }
    payoffs[s.has_input() ? bit_string(s.inputs()[slot], n) : ""] = std::move(row);
  }
  return {{"name", s.name()}, {"n", n}, {"inputs", inputs}, {"outputs", outputs}, {"payoffs", payoffs}};
}

}  // namespace qgame
