#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgame/qmat.hpp"
#include "qgame/scenario.hpp"
#include "qgame/states_gates.hpp"

namespace qgame {

/// A single-qubit unitary a player may apply, with a display label.
struct Strategy {
  std::string label;
  CMatrix matrix;
};

Strategy make_strategy(const GateLabel& g);

/// One axis of an SU(2) parameter grid. `points == 1` pins the axis at `lo`.
/// Otherwise the points are evenly spaced from `lo`, ending at `hi` when
/// `include_hi` is set and one step short of it when not (periodic axes).
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int points = 1;
  bool include_hi = true;

  static GridAxis theta(int points);  // [0, π], closed
  static GridAxis angle(int points);  // [0, 2π), periodic; points == 1 pins at 0
  static GridAxis fixed(double value);

  std::vector<double> values() const;
  bool active() const { return points > 1; }
  bool operator==(const GridAxis&) const = default;
};

/// The strategy set 𝔘 of a procedure: either an explicit finite list or a
/// grid discretization of a region of SU(2). Grid spaces are searched at
/// their grid points, but membership is tested against the continuous
/// region the grid spans.
class StrategySpace {
 public:
  static StrategySpace finite(std::vector<Strategy> elements);
  static StrategySpace finite(const std::vector<GateLabel>& labels);
  static StrategySpace grid(GridAxis theta, GridAxis phi, GridAxis chi);
  // Full SU(2) grid; an axis with 1 point is pinned at 0.
  static StrategySpace su2_grid(int theta_points, int phi_points, int chi_points);

  bool is_finite() const { return finite_; }
  std::size_t size() const { return elements_.size(); }
  const Strategy& at(std::size_t index) const { return elements_.at(index); }
  const std::vector<Strategy>& elements() const { return elements_; }

  const GridAxis& theta_axis() const { return axes_[0]; }
  const GridAxis& phi_axis() const { return axes_[1]; }
  const GridAxis& chi_axis() const { return axes_[2]; }

  /// True if u equals (up to a global phase) an element of the finite list,
  /// or lies (up to a global phase) in the SU(2) region of the grid.
  bool contains(const CMatrix& u, double tol = kStructuralTol) const;

 private:
  StrategySpace() = default;

  bool finite_ = true;
  std::vector<Strategy> elements_;
  std::array<GridAxis, 3> axes_{};
};

/// A player's choice: one unitary for no-input scenarios, or the pair
/// (U_{i,0}, U_{i,1}) selected by the player's input bit.
struct PlayerStrategy {
  Strategy on_zero;
  std::optional<Strategy> on_one;

  const Strategy& for_bit(int bit) const;
  std::string label() const;
};

using StrategyProfile = std::vector<PlayerStrategy>;

StrategyProfile uniform_profile(int num_players, const Strategy& s);
StrategyProfile uniform_profile(int num_players, const Strategy& on_zero, const Strategy& on_one);

/// p(Y|X) over all 2^n output strings, indexed by BitString.
struct OutcomeDistribution {
  int num_players = 0;
  std::vector<double> mass;

  double operator()(BitString y) const { return mass.at(y); }
  double total() const;
};

/// The five-tuple (n, H, J, ρ, 𝔘). Validated on construction.
class EwlProcedure {
 public:
  EwlProcedure(std::string name, int num_players, CMatrix h_op, CMatrix j_op,
               CMatrix initial_state, StrategySpace strategy_space);

  const std::string& name() const { return name_; }
  int num_players() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  const CMatrix& h_op() const { return h_; }
  const CMatrix& j_op() const { return j_; }
  const CMatrix& initial_state() const { return rho_; }
  const StrategySpace& strategy_space() const { return space_; }
  // J ρ J†, which does not depend on the players' choices.
  const CMatrix& entangled_state() const { return j_rho_; }

 private:
  std::string name_;
  int n_;
  CMatrix h_;
  CMatrix j_;
  CMatrix rho_;
  StrategySpace space_;
  CMatrix j_rho_;
};

/// Outcome probabilities Tr(Q_{y_1}⊗…⊗Q_{y_n} ρ_f) with
/// ρ_f = H 𝒰 J ρ (H 𝒰 J)†. `input` selects each player's unitary by bit;
/// pass std::nullopt for no-input procedures (then every player uses on_zero).
/// Throws ConstraintError when the profile does not match the procedure.
OutcomeDistribution outcome_distribution(const EwlProcedure& p, const StrategyProfile& prof,
                                         std::optional<BitString> input = std::nullopt);

/// Same as outcome_distribution() with the final state returned instead.
CMatrix final_state(const EwlProcedure& p, const StrategyProfile& prof,
                    std::optional<BitString> input = std::nullopt);

/// Σ_Y $_i(x, Y) mass(Y) for one input slot of the scenario.
std::vector<double> expected_payoff(const Scenario& s, std::size_t input_slot,
                                    const OutcomeDistribution& dist);

std::vector<double> payoff_no_input(const EwlProcedure& p, const Scenario& s,
                                    const StrategyProfile& prof);

/// Uniform average over the scenario's inputs.
std::vector<double> payoff_with_input(const EwlProcedure& p, const Scenario& s,
                                      const StrategyProfile& prof);

/// The static game a procedure implements within a scenario. A player's
/// strategy index ranges over 𝔘 for no-input scenarios and over pairs
/// (a, b) ∈ 𝔘² encoded as a·|𝔘| + b otherwise.
class InducedGame {
 public:
  InducedGame(EwlProcedure procedure, Scenario scenario);

  int num_players() const { return procedure_.num_players(); }
  bool has_input() const { return scenario_.has_input(); }
  const EwlProcedure& procedure() const { return procedure_; }
  const Scenario& scenario() const { return scenario_; }

  std::size_t strategy_count(int player) const;
  PlayerStrategy strategy(int player, std::size_t index) const;
  std::string strategy_label(int player, std::size_t index) const;
  StrategyProfile profile(std::span<const std::size_t> indices) const;

  std::vector<double> payoff(std::span<const std::size_t> indices) const;
  std::vector<double> payoff(const StrategyProfile& prof) const;

  double min_payoff() const { return scenario_.min_payoff(); }
  double max_payoff() const { return scenario_.max_payoff(); }

 private:
  std::vector<double> payoff_unchecked(std::span<const CMatrix* const> zero,
                                       std::span<const CMatrix* const> one) const;

  EwlProcedure procedure_;
  Scenario scenario_;
};

InducedGame induced_game(const EwlProcedure& p, const Scenario& s);

/// Open parameters of the built-in procedures.
struct CatalogParams {
  double gamma = kDefaultGamma;
  double alpha = 1.0;
  double eps1 = kDefaultEps1;
  double eps2 = kDefaultEps2;
  PayoffTable2x2 battle_sexes = PayoffTable2x2::default_battle_of_sexes();
  int grid_theta = 13;
  int grid_phi = 13;
  int grid_chi = 13;
};

struct CatalogEntry {
  EwlProcedure procedure;
  Scenario scenario;
};

// bos_p1 … bos_p5, minority_p1 … minority_p3, mod4_ghz
const std::vector<std::string>& catalog_names();
std::string catalog_description(const std::string& name);

/// Throws ConstraintError on unknown names.
CatalogEntry catalog(const std::string& name, const CatalogParams& params = {});

/// J = H = 𝟙, ρ = |0…0⟩⟨0…0|, 𝔘 = {𝟙, σx}.
EwlProcedure classical_procedure(int num_players);

}  // namespace qgame
