#include "qgame/ewl.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "qgame/errors.hpp"

namespace qgame {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kAngleTol = 1e-6;

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

bool axis_admits(const GridAxis& axis, double v, bool periodic) {
  if (!axis.active()) {
    return periodic ? circular_distance(v, axis.lo) <= kAngleTol : std::abs(v - axis.lo) <= kAngleTol;
  }
  if (periodic && axis.hi - axis.lo >= kTwoPi - 1e-12) return true;
  for (double shift : {0.0, kTwoPi, -kTwoPi}) {
    if (!periodic && shift != 0.0) continue;
    const double w = v + shift;
    if (w >= axis.lo - kAngleTol && w <= axis.hi + kAngleTol) return true;
  }
  return false;
}

void check_profile_shape(const EwlProcedure& p, const StrategyProfile& prof) {
  if (prof.size() != static_cast<std::size_t>(p.num_players())) {
    throw ConstraintError("profile has " + std::to_string(prof.size()) + " strategies for a " +
                          std::to_string(p.num_players()) + "-player procedure");
  }
}

void check_member(const EwlProcedure& p, const Strategy& s, std::size_t player) {
  if (s.matrix.rows() != 2 || s.matrix.cols() != 2) {
    throw ConstraintError("strategy '" + s.label + "' of player " + std::to_string(player + 1) +
                          " is not a 2x2 matrix");
  }
  if (!p.strategy_space().contains(s.matrix)) {
    throw ConstraintError("strategy '" + s.label + "' of player " + std::to_string(player + 1) +
                          " is not in the strategy space of '" + p.name() + "'");
  }
}

// Computational-basis probabilities of M σ M† read off the diagonal, where
// σ = JρJ† and M = H𝒰. Only the diagonal is formed.
std::vector<double> diagonal_probabilities(const EwlProcedure& p, const CMatrix& u) {
  const CMatrix m = p.h_op() * u;
  const CMatrix a = m * p.entangled_state();
  const std::size_t d = m.rows();
  std::vector<double> probs(d);
  for (std::size_t y = 0; y < d; ++y) {
    Complex acc = 0.0;
    for (std::size_t l = 0; l < d; ++l) acc += a(y, l) * std::conj(m(y, l));
    if (std::abs(acc.imag()) > 1e-10 || acc.real() < -1e-10 || acc.real() > 1.0 + 1e-10) {
      throw NumericalError("outcome probability out of range in '" + p.name() + "'");
    }
    probs[y] = std::clamp(acc.real(), 0.0, 1.0);
  }
  return probs;
}

std::vector<double> weighted_payoff(const Scenario& s, std::size_t slot,
                                    std::span<const double> mass) {
  const int n = s.num_players();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  double covered = 0.0;
  for (BitString y : s.outputs()) {
    const double py = mass[y];
    covered += py;
    if (py == 0.0) continue;
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] += s.evaluate(slot, y, i) * py;
  }
  const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  if (total - covered > kStructuralTol) {
    throw NumericalError("probability mass " + std::to_string(total - covered) +
                         " falls on outputs outside the scenario");
  }
  return out;
}

void check_pairing(const Scenario& s, const EwlProcedure& p) {
  if (s.num_players() != p.num_players()) {
    throw ConstraintError("scenario '" + s.name() + "' has " + std::to_string(s.num_players()) +
                          " players but procedure '" + p.name() + "' has " +
                          std::to_string(p.num_players()));
  }
}

}  // namespace

Strategy make_strategy(const GateLabel& g) {
  if (g.kind == GateKind::kEwlJ) throw ConstraintError("ewl_J is not a single-player strategy");
  return {g.name(), named_gate(g)};
}

GridAxis GridAxis::theta(int points) { return {0.0, std::numbers::pi, points, true}; }

GridAxis GridAxis::angle(int points) { return {0.0, kTwoPi, points, false}; }

GridAxis GridAxis::fixed(double value) { return {value, value, 1, true}; }

std::vector<double> GridAxis::values() const {
  if (points < 1) throw ConstraintError("grid axis needs at least one point");
  if (points == 1) return {lo};
  const int steps = include_hi ? points - 1 : points;
  const double step = (hi - lo) / steps;
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) v[static_cast<std::size_t>(k)] = lo + k * step;
  if (include_hi) v.back() = hi;
  return v;
}

StrategySpace StrategySpace::finite(std::vector<Strategy> elements) {
  if (elements.empty()) throw ConstraintError("finite strategy space is empty");
  for (const Strategy& s : elements) {
    if (s.matrix.rows() != 2 || s.matrix.cols() != 2 || !is_unitary(s.matrix)) {
      throw ConstraintError("strategy '" + s.label + "' is not a 2x2 unitary");
    }
  }
  StrategySpace space;
  space.finite_ = true;
  space.elements_ = std::move(elements);
  return space;
}

StrategySpace StrategySpace::finite(const std::vector<GateLabel>& labels) {
  std::vector<Strategy> elements;
  for (const GateLabel& g : labels) elements.push_back(make_strategy(g));
  return finite(std::move(elements));
}

StrategySpace StrategySpace::grid(GridAxis theta, GridAxis phi, GridAxis chi) {
  const auto check = [](const GridAxis& a, const char* name, double max, bool closed) {
    const bool hi_ok = closed ? a.hi <= max : (a.include_hi ? a.hi < max : a.hi <= max);
    if (a.points < 1 || !(a.lo >= 0.0) || !(a.lo <= a.hi) || !hi_ok) {
      throw ConstraintError(std::string("grid axis ") + name + " outside its parameter range");
    }
    if (a.points == 1 && !(closed ? a.lo <= max : a.lo < max)) {
      throw ConstraintError(std::string("grid axis ") + name + " outside its parameter range");
    }
  };
  check(theta, "theta", std::numbers::pi, true);
  check(phi, "phi", kTwoPi, false);
  check(chi, "chi", kTwoPi, false);

  StrategySpace space;
  space.finite_ = false;
  space.axes_ = {theta, phi, chi};
  const auto ts = theta.values();
  const auto ps = phi.values();
  const auto cs = chi.values();
  space.elements_.reserve(ts.size() * ps.size() * cs.size());
  for (double t : ts) {
    for (double p : ps) {
      for (double c : cs) space.elements_.push_back(make_strategy(GateLabel::su2({t, p, c})));
    }
  }
  return space;
}

StrategySpace StrategySpace::su2_grid(int theta_points, int phi_points, int chi_points) {
  if (theta_points < 2) throw ConstraintError("grid needs at least 2 points in theta");
  const auto periodic = [](int pts) { return pts == 1 ? GridAxis::fixed(0.0) : GridAxis::angle(pts); };
  return grid(GridAxis::theta(theta_points), periodic(phi_points), periodic(chi_points));
}

bool StrategySpace::contains(const CMatrix& u, double tol) const {
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u, tol)) return false;
  if (finite_) {
    // For 2x2 unitaries, |Tr(E†U)| = 2 iff U = e^{iδ}E.
    for (const Strategy& e : elements_) {
      if (std::abs(std::abs((conjugate_transpose(e.matrix) * u).trace()) - 2.0) <= tol) return true;
    }
    return false;
  }
  for (const Su2Params& p : su2_decompose(u)) {
    if (!axis_admits(axes_[0], p.theta, false)) continue;
    const bool phi_free = std::cos(p.theta / 2) < kAngleTol;
    const bool chi_free = std::sin(p.theta / 2) < kAngleTol;
    if (!phi_free && !axis_admits(axes_[1], p.phi, true)) continue;
    if (!chi_free && !axis_admits(axes_[2], p.chi, true)) continue;
    return true;
  }
  return false;
}

const Strategy& PlayerStrategy::for_bit(int bit) const {
  if (bit == 0) return on_zero;
  if (!on_one) throw ConstraintError("strategy '" + on_zero.label + "' has no branch for input 1");
  return *on_one;
}

std::string PlayerStrategy::label() const {
  if (!on_one) return on_zero.label;
  return on_zero.label + "|" + on_one->label;
}

StrategyProfile uniform_profile(int num_players, const Strategy& s) {
  return StrategyProfile(static_cast<std::size_t>(num_players), PlayerStrategy{s, std::nullopt});
}

StrategyProfile uniform_profile(int num_players, const Strategy& on_zero, const Strategy& on_one) {
  return StrategyProfile(static_cast<std::size_t>(num_players), PlayerStrategy{on_zero, on_one});
}

double OutcomeDistribution::total() const {
  return std::accumulate(mass.begin(), mass.end(), 0.0);
}

EwlProcedure::EwlProcedure(std::string name, int num_players, CMatrix h_op, CMatrix j_op,
                           CMatrix initial_state, StrategySpace strategy_space)
    : name_(std::move(name)),
      n_(num_players),
      h_(std::move(h_op)),
      j_(std::move(j_op)),
      rho_(std::move(initial_state)),
      space_(std::move(strategy_space)) {
  if (n_ < 1 || (std::size_t{1} << n_) > kMaxDim) {
    throw DimensionError("procedure '" + name_ + "': player count " + std::to_string(n_) +
                         " outside [1, 5]");
  }
  const std::size_t d = dim();
  for (const auto* m : {&h_, &j_, &rho_}) {
    if (m->rows() != d || m->cols() != d) {
      throw DimensionError("procedure '" + name_ + "': operators must be " + std::to_string(d) +
                           "x" + std::to_string(d));
    }
  }
  if (!is_unitary(h_)) throw ConstraintError("procedure '" + name_ + "': H is not unitary");
  if (!is_unitary(j_)) throw ConstraintError("procedure '" + name_ + "': J is not unitary");
  if (!is_density_matrix(rho_)) {
    throw ConstraintError("procedure '" + name_ + "': initial state is not a density matrix");
  }
  j_rho_ = evolve(rho_, j_);
}

CMatrix final_state(const EwlProcedure& p, const StrategyProfile& prof,
                    std::optional<BitString> input) {
  check_profile_shape(p, prof);
  const int n = p.num_players();
  if (input && *input >= (BitString{1} << n)) throw ConstraintError("input outside {0,1}^n");
  std::vector<CMatrix> factors;
  factors.reserve(prof.size());
  for (std::size_t i = 0; i < prof.size(); ++i) {
    const int bit = input ? player_bit(*input, static_cast<int>(i), n) : 0;
    const Strategy& s = prof[i].for_bit(bit);
    check_member(p, s, i);
    factors.push_back(s.matrix);
  }
  const CMatrix u = kron_all(factors);
  return evolve(evolve(evolve(p.initial_state(), p.j_op()), u), p.h_op());
}

OutcomeDistribution outcome_distribution(const EwlProcedure& p, const StrategyProfile& prof,
                                         std::optional<BitString> input) {
  const CMatrix rho_f = final_state(p, prof, input);
  OutcomeDistribution dist{p.num_players(), basis_probabilities(rho_f)};
  if (std::abs(dist.total() - 1.0) > kStructuralTol) {
    throw NumericalError("outcome distribution of '" + p.name() + "' sums to " +
                         std::to_string(dist.total()));
  }
  return dist;
}

std::vector<double> expected_payoff(const Scenario& s, std::size_t input_slot,
                                    const OutcomeDistribution& dist) {
  if (dist.num_players != s.num_players()) {
    throw ConstraintError("distribution and scenario disagree on the player count");
  }
  if (input_slot >= s.input_slots()) throw ConstraintError("input slot out of range");
  return weighted_payoff(s, input_slot, dist.mass);
}

std::vector<double> payoff_no_input(const EwlProcedure& p, const Scenario& s,
                                    const StrategyProfile& prof) {
  check_pairing(s, p);
  if (s.has_input()) {
    throw ConstraintError("scenario '" + s.name() + "' has inputs; use payoff_with_input");
  }
  return expected_payoff(s, 0, outcome_distribution(p, prof));
}

std::vector<double> payoff_with_input(const EwlProcedure& p, const Scenario& s,
                                      const StrategyProfile& prof) {
  check_pairing(s, p);
  if (!s.has_input()) {
    throw ConstraintError("scenario '" + s.name() + "' has no input; use payoff_no_input");
  }
  std::vector<double> total(static_cast<std::size_t>(s.num_players()), 0.0);
  for (std::size_t slot = 0; slot < s.inputs().size(); ++slot) {
    const auto part = expected_payoff(s, slot, outcome_distribution(p, prof, s.inputs()[slot]));
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += part[i];
  }
  for (double& v : total) v /= static_cast<double>(s.inputs().size());
  return total;
}

InducedGame::InducedGame(EwlProcedure procedure, Scenario scenario)
    : procedure_(std::move(procedure)), scenario_(std::move(scenario)) {
  check_pairing(scenario_, procedure_);
}

InducedGame induced_game(const EwlProcedure& p, const Scenario& s) { return InducedGame(p, s); }

std::size_t InducedGame::strategy_count(int player) const {
  if (player < 0 || player >= num_players()) throw ConstraintError("player index out of range");
  const std::size_t m = procedure_.strategy_space().size();
  return has_input() ? m * m : m;
}

PlayerStrategy InducedGame::strategy(int player, std::size_t index) const {
  if (index >= strategy_count(player)) throw ConstraintError("strategy index out of range");
  const auto& space = procedure_.strategy_space();
  if (!has_input()) return {space.at(index), std::nullopt};
  return {space.at(index / space.size()), space.at(index % space.size())};
}

std::string InducedGame::strategy_label(int player, std::size_t index) const {
  return strategy(player, index).label();
}

StrategyProfile InducedGame::profile(std::span<const std::size_t> indices) const {
  if (indices.size() != static_cast<std::size_t>(num_players())) {
    throw ConstraintError("profile length does not match the player count");
  }
  StrategyProfile prof;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    prof.push_back(strategy(static_cast<int>(i), indices[i]));
  }
  return prof;
}

std::vector<double> InducedGame::payoff(std::span<const std::size_t> indices) const {
  const std::size_t n = static_cast<std::size_t>(num_players());
  if (indices.size() != n) throw ConstraintError("profile length does not match the player count");
  const auto& space = procedure_.strategy_space();
  const std::size_t m = space.size();
  std::array<const CMatrix*, 5> zero{};
  std::array<const CMatrix*, 5> one{};
  for (std::size_t i = 0; i < n; ++i) {
    if (indices[i] >= strategy_count(static_cast<int>(i))) {
      throw ConstraintError("strategy index out of range");
    }
    if (has_input()) {
      zero[i] = &space.at(indices[i] / m).matrix;
      one[i] = &space.at(indices[i] % m).matrix;
    } else {
      zero[i] = one[i] = &space.at(indices[i]).matrix;
    }
  }
  return payoff_unchecked(std::span(zero.data(), n), std::span(one.data(), n));
}

std::vector<double> InducedGame::payoff(const StrategyProfile& prof) const {
  return has_input() ? payoff_with_input(procedure_, scenario_, prof)
                     : payoff_no_input(procedure_, scenario_, prof);
}

std::vector<double> InducedGame::payoff_unchecked(std::span<const CMatrix* const> zero,
                                                  std::span<const CMatrix* const> one) const {
  const int n = num_players();
  const std::size_t slots = scenario_.input_slots();
  std::vector<double> total(static_cast<std::size_t>(n), 0.0);
  for (std::size_t slot = 0; slot < slots; ++slot) {
    const BitString x = has_input() ? scenario_.inputs()[slot] : 0;
    CMatrix u = player_bit(x, 0, n) ? *one[0] : *zero[0];
    for (int i = 1; i < n; ++i) {
      u = kron(u, player_bit(x, i, n) ? *one[static_cast<std::size_t>(i)]
                                      : *zero[static_cast<std::size_t>(i)]);
    }
    const auto probs = diagonal_probabilities(procedure_, u);
    const auto part = weighted_payoff(scenario_, slot, probs);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += part[i];
  }
  for (double& v : total) v /= static_cast<double>(slots);
  return total;
}

}  // namespace qgame
