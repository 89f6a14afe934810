#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qgame/equilibrium.hpp"
#include "qgame/errors.hpp"
#include "qgame/experiments.hpp"

namespace py = pybind11;
using namespace qgame;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexArray to_numpy(const CMatrix& m) {
  ComplexArray out({m.rows(), m.cols()});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) view(r, c) = m(r, c);
  return out;
}

CMatrix from_numpy(const ComplexArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  auto view = a.unchecked<2>();
  CMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  for (py::ssize_t r = 0; r < a.shape(0); ++r)
    for (py::ssize_t c = 0; c < a.shape(1); ++c) m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = view(r, c);
  return m;
}

Strategy to_strategy(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return make_strategy(GateLabel::parse(h.cast<std::string>()));
  return {"matrix", from_numpy(h.cast<ComplexArray>())};
}

// A player's entry is a label, a 2x2 array, or an (on_zero, on_one) tuple.
StrategyProfile to_profile(const py::sequence& seq) {
  StrategyProfile prof;
  for (const auto& item : seq) {
    if (py::isinstance<py::tuple>(item)) {
      auto pair = item.cast<py::tuple>();
      if (pair.size() != 2) throw ConstraintError("strategy pairs need exactly two entries");
      prof.push_back({to_strategy(pair[0]), to_strategy(pair[1])});
    } else {
      prof.push_back({to_strategy(item), std::nullopt});
    }
  }
  return prof;
}

CatalogParams to_params(const py::kwargs& kw) {
  CatalogParams p;
  for (const auto& [key, value] : kw) {
    const auto k = key.cast<std::string>();
    if (k == "gamma") p.gamma = value.cast<double>();
    else if (k == "alpha") p.alpha = value.cast<double>();
    else if (k == "eps1") p.eps1 = value.cast<double>();
    else if (k == "eps2") p.eps2 = value.cast<double>();
    else if (k == "grid") {
      auto g = value.cast<std::tuple<int, int, int>>();
      std::tie(p.grid_theta, p.grid_phi, p.grid_chi) = g;
    } else {
      throw py::type_error("unknown catalog parameter '" + k + "'");
    }
  }
  return p;
}

std::optional<BitString> to_input(const std::optional<std::string>& bits) {
  if (!bits) return std::nullopt;
  BitString b = 0;
  for (char c : *bits) {
    if (c != '0' && c != '1') throw ConstraintError("input must be a bit string");
    b = (b << 1) | static_cast<BitString>(c == '1');
  }
  return b;
}

py::dict nash_to_dict(const NashReport& r) {
  py::dict d;
  d["profile"] = r.profile;
  d["labels"] = r.labels;
  d["payoffs"] = r.payoffs;
  d["epsilon"] = r.epsilon;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum game procedures: outcome distributions, payoffs and equilibria";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  m.def("catalog_names", &catalog_names);
  m.def("catalog_description", &catalog_description, py::arg("name"));

  m.def("su2", [](double theta, double phi, double chi) { return to_numpy(su2({theta, phi, chi})); },
        py::arg("theta"), py::arg("phi"), py::arg("chi"));
  m.def("named_gate", [](const std::string& label) { return to_numpy(named_gate(GateLabel::parse(label))); },
        py::arg("label"));
  m.def("kron", [](const ComplexArray& a, const ComplexArray& b) { return to_numpy(kron(from_numpy(a), from_numpy(b))); });
  m.def("is_density_matrix", [](const ComplexArray& a, double tol) { return is_density_matrix(from_numpy(a), tol); },
        py::arg("rho"), py::arg("tol") = kStructuralTol);

  m.def("operators",
        [](const std::string& name, const py::kwargs& kw) {
          const auto e = catalog(name, to_params(kw));
          py::dict d;
          d["h"] = to_numpy(e.procedure.h_op());
          d["j"] = to_numpy(e.procedure.j_op());
          d["rho"] = to_numpy(e.procedure.initial_state());
          d["strategies"] = e.procedure.strategy_space().size();
          return d;
        },
        py::arg("name"));

  m.def("outcome_distribution",
        [](const std::string& name, const py::sequence& profile, std::optional<std::string> input,
           const py::kwargs& kw) {
          const auto e = catalog(name, to_params(kw));
          return outcome_distribution(e.procedure, to_profile(profile), to_input(input)).mass;
        },
        py::arg("name"), py::arg("profile"), py::arg("input") = py::none());

  m.def("payoff",
        [](const std::string& name, const py::sequence& profile, const py::kwargs& kw) {
          const auto e = catalog(name, to_params(kw));
          return induced_game(e.procedure, e.scenario).payoff(to_profile(profile));
        },
        py::arg("name"), py::arg("profile"));

  m.def("find_pure_nash",
        [](const std::string& name, double epsilon, std::uint64_t budget, const py::kwargs& kw) {
          const auto e = catalog(name, to_params(kw));
          py::list out;
          for (const auto& r : find_pure_nash(induced_game(e.procedure, e.scenario), epsilon, budget)) {
            out.append(nash_to_dict(r));
          }
          return out;
        },
        py::arg("name"), py::arg("epsilon") = 0.0, py::arg("budget") = kDefaultBudget);

  m.def("symmetric_max",
        [](const std::string& name, const py::kwargs& kw) {
          const auto e = catalog(name, to_params(kw));
          const auto best = grid_search_symmetric_max(induced_game(e.procedure, e.scenario));
          return py::make_tuple(best.label, best.payoff);
        },
        py::arg("name"));

  m.def("classical_bound", [] {
    const auto r = classical_deterministic_bound(modulo4_scenario());
    std::vector<std::string> names;
    for (const auto& f : r.best_profile) names.push_back(f.name());
    return py::make_tuple(r.value, names);
  });

  m.def("card_deck",
        [](std::uint64_t samples, std::uint64_t seed) { return card_deck_sampler(samples, seed).distribution.mass; },
        py::arg("samples"), py::arg("seed"));

  m.def("verify_claims", [] {
    py::list out;
    for (const auto& c : verify_claims()) {
      py::dict d;
      d["id"] = c.id;
      d["expected"] = c.expected;
      d["computed"] = c.computed;
      d["tolerance"] = c.tolerance;
      d["comparison"] = to_string(c.comparison);
      d["pass"] = c.pass;
      out.append(d);
    }
    return out;
  });

  // Runs a JSON config document and returns the rendered report.
  m.def("run_config", [](const std::string& text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("", e.what());
    }
    const auto cfg = parse_config(doc);
    return run_analysis(cfg).render(cfg.format);
  });
}
