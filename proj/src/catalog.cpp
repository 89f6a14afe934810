#include <map>

#include "qgame/errors.hpp"
#include "qgame/ewl.hpp"

namespace qgame {
namespace {

StrategySpace classical_space() {
  return StrategySpace::finite({GateLabel::identity(), GateLabel::pauli_x()});
}

CMatrix ewl_entangler(double gamma) { return named_gate(GateLabel::ewl_j(gamma)); }

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d{
      {"bos_p1", "Battle of the Sexes, classical: J=H=1, rho=|00><00|, U={1, sigma_x}"},
      {"bos_p2", "Battle of the Sexes, Bell-state input: rho=|Phi+><Phi+|, U={1, sigma_x}"},
      {"bos_p3", "Battle of the Sexes, diagonal mixture rho(eps1, eps2), U={1, sigma_x}"},
      {"bos_p4", "Battle of the Sexes, EWL: J=exp(i gamma sy.sy), H=J^dagger, U={U(theta, phi)}"},
      {"bos_p5", "Battle of the Sexes, EWL: J=exp(i gamma sy.sy), H=J^dagger, U=SU(2)"},
      {"minority_p1", "4-player minority, classical: rho=|0000><0000|, U={1, sigma_x}"},
      {"minority_p2", "4-player minority, separable odd-parity mixture rho_in, U={1, sigma_x}"},
      {"minority_p3", "4-player minority, entangled |psi_in(alpha)>, U=SU(2)"},
      {"mod4_ghz", "modulo-4, GHZ state, J=H=1, U=SU(2), one unitary per input bit"},
  };
  return d;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"bos_p1",      "bos_p2",      "bos_p3",
                                              "bos_p4",      "bos_p5",      "minority_p1",
                                              "minority_p2", "minority_p3", "mod4_ghz"};
  return names;
}

std::string catalog_description(const std::string& name) {
  auto it = descriptions().find(name);
  if (it == descriptions().end()) throw ConstraintError("unknown catalog procedure '" + name + "'");
  return it->second;
}

EwlProcedure classical_procedure(int num_players) {
  const std::size_t dim = std::size_t{1} << num_players;
  return EwlProcedure("classical", num_players, CMatrix::identity(dim), CMatrix::identity(dim),
                      basis_density(num_players, 0), classical_space());
}

CatalogEntry catalog(const std::string& name, const CatalogParams& params) {
  const CMatrix i4 = CMatrix::identity(4);
  const CMatrix i16 = CMatrix::identity(16);
  const auto full_grid = [&] {
    return StrategySpace::su2_grid(params.grid_theta, params.grid_phi, params.grid_chi);
  };

  if (name.starts_with("bos_")) {
    Scenario bos = battle_sexes_scenario(params.battle_sexes);
    if (name == "bos_p1") {
      return {EwlProcedure(name, 2, i4, i4, basis_density(2, 0), classical_space()), bos};
    }
    if (name == "bos_p2") {
      return {EwlProcedure(name, 2, i4, i4, ghz_state(2).outer(), classical_space()), bos};
    }
    if (name == "bos_p3") {
      return {EwlProcedure(name, 2, i4, i4, f09_rho(params.eps1, params.eps2), classical_space()),
              bos};
    }
    if (name == "bos_p4" || name == "bos_p5") {
      const CMatrix j = ewl_entangler(params.gamma);
      StrategySpace space = name == "bos_p4"
                                ? StrategySpace::su2_grid(params.grid_theta, params.grid_phi, 1)
                                : full_grid();
      return {EwlProcedure(name, 2, conjugate_transpose(j), j, basis_density(2, 0),
                           std::move(space)),
              bos};
    }
  }
  if (name == "minority_p1") {
    return {EwlProcedure(name, 4, i16, i16, basis_density(4, 0), classical_space()),
            minority_scenario(4)};
  }
  if (name == "minority_p2") {
    return {EwlProcedure(name, 4, i16, i16, minority_rho_in(), classical_space()),
            minority_scenario(4)};
  }
  if (name == "minority_p3") {
    return {EwlProcedure(name, 4, i16, i16, fsslh_psi_in(params.alpha).outer(), full_grid()),
            minority_scenario(4)};
  }
  if (name == "mod4_ghz") {
    const CMatrix i8 = CMatrix::identity(8);
    return {EwlProcedure(name, 3, i8, i8, ghz_state(3).outer(), full_grid()), modulo4_scenario()};
  }
  throw ConstraintError("unknown catalog procedure '" + name + "'");
}

}  // namespace qgame
