#include <Eigen/QR>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "qgame/errors.hpp"
#include "qgame/experiments.hpp"

namespace qgame {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRandomCases = 100;


ClaimResult within(std::string id, std::string provenance, std::vector<double> expected,
                   std::vector<double> computed, double tol) {
  return judge({std::move(id), std::move(provenance), std::move(expected), std::move(computed), tol,
                ClaimResult::Comparison::kWithinTolerance, false});
}

ClaimResult compare(std::string id, std::string provenance, std::vector<double> threshold,
                    std::vector<double> computed, ClaimResult::Comparison cmp) {
  return judge({std::move(id), std::move(provenance), std::move(threshold), std::move(computed), 0.0,
                cmp, false});
}

Su2Params random_su2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(0.0, kPi);
  std::uniform_real_distribution<double> a(0.0, 2 * kPi);
  return {t(rng), a(rng), a(rng)};
}

CMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
  CMatrix u(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) u(i, j) = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  return u;
}

CMatrix random_density(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  CMatrix rho = a * conjugate_transpose(a);
  return rho * Complex(1.0 / rho.trace().real());
}

std::vector<double> random_distribution(std::size_t size, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(size);
  double total = 0.0;
  for (double& v : p) total += (v = e(rng));
  for (double& v : p) v /= total;
  return p;
}

// A strategy drawn from the procedure's space: a listed element for finite
// spaces, otherwise a random point of the (continuous) SU(2) region.
Strategy random_member(const StrategySpace& space, std::mt19937_64& rng) {
  if (space.is_finite()) {
    std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
    return space.at(pick(rng));
  }
  Su2Params p = random_su2(rng);
  if (!space.phi_axis().active()) p.phi = space.phi_axis().lo;
  if (!space.chi_axis().active()) p.chi = space.chi_axis().lo;
  return make_strategy(GateLabel::su2(p));
}

struct RandomCase {
  CatalogEntry entry;
  StrategyProfile profile;
  std::optional<BitString> input;
};

RandomCase random_case(std::mt19937_64& rng) {
  const auto& names = catalog_names();
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  CatalogParams params;
  params.alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  params.gamma = std::uniform_real_distribution<double>(0.0, kPi / 2)(rng);
  params.grid_theta = params.grid_phi = params.grid_chi = 2;
  CatalogEntry entry = catalog(names[pick(rng)], params);
  const int n = entry.procedure.num_players();
  const StrategySpace& space = entry.procedure.strategy_space();
  StrategyProfile prof;
  std::optional<BitString> input;
  for (int i = 0; i < n; ++i) {
    Strategy a = random_member(space, rng);
    if (entry.scenario.has_input()) prof.push_back({std::move(a), random_member(space, rng)});
    else prof.push_back({std::move(a), std::nullopt});
  }
  if (entry.scenario.has_input()) {
    std::uniform_int_distribution<std::size_t> x(0, entry.scenario.inputs().size() - 1);
    input = entry.scenario.inputs()[x(rng)];
  }
  return {std::move(entry), std::move(prof), input};
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

void minority_claims(std::vector<ClaimResult>& out) {
  const CatalogEntry p2 = catalog("minority_p2");
  const InducedGame game(p2.procedure, p2.scenario);
  const IndexProfile identity(4, 0);

  std::vector<double> expected(16);
  for (std::size_t y = 0; y < 16; ++y) expected[y] = std::popcount(y) % 2 ? 0.125 : 0.0;
  const auto dist = outcome_distribution(p2.procedure, game.profile(identity));
  out.push_back(within("minority_p2_distribution", "p(Y)=1/8 on odd-parity outputs, 0 otherwise",
                       expected, dist.mass, 1e-12));

  out.push_back(within("minority_p2_payoff", "identity profile pays 1/4 to every player",
                       {0.25, 0.25, 0.25, 0.25}, game.payoff(identity), 1e-12));

  std::vector<double> deviator;
  for (std::size_t i = 0; i < 4; ++i) {
    IndexProfile dev = identity;
    dev[i] = 1;  // sigma_x
    deviator.push_back(game.payoff(dev)[i]);
  }
  out.push_back(within("minority_p2_deviation", "a lone sigma_x deviator is paid 0",
                       {0, 0, 0, 0}, deviator, 1e-12));
  out.push_back(within("minority_p2_nash_gap", "identity profile is an exact Nash equilibrium",
                       {0.0}, {nash_gap(game, identity)}, 1e-12));
  out.push_back(within("minority_p2_pareto", "identity profile is Pareto-optimal among all 16",
                       {1.0}, {is_pareto_optimal(game, identity, all_profiles(game)) ? 1.0 : 0.0}, 0.0));
}

void modulo4_claims(std::vector<ClaimResult>& out) {
  const CatalogEntry ghz = catalog("mod4_ghz");
  const StrategyProfile winning = uniform_profile(3, make_strategy(GateLabel::hadamard()),
                                                  make_strategy(GateLabel::s_dagger_hadamard()));
  std::vector<double> per_input;
  for (std::size_t slot = 0; slot < ghz.scenario.inputs().size(); ++slot) {
    const auto dist = outcome_distribution(ghz.procedure, winning, ghz.scenario.inputs()[slot]);
    per_input.push_back(expected_payoff(ghz.scenario, slot, dist)[0]);
  }
  out.push_back(within("mod4_quantum_win_per_input", "GHZ profile wins every input with certainty",
                       {1, 1, 1, 1}, per_input, 1e-9));
  const auto quantum = payoff_with_input(ghz.procedure, ghz.scenario, winning);
  out.push_back(within("mod4_quantum_value", "GHZ profile payoff (1,1,1)", {1, 1, 1}, quantum, 1e-9));

  const auto bound = classical_deterministic_bound(ghz.scenario);
  out.push_back(within("mod4_classical_bound", "best of 64 deterministic profiles is 3/4", {0.75},
                       {bound.value}, 0.0));
  out.push_back(compare("mod4_entanglement_gap", "quantum value exceeds the classical bound",
                        {bound.value}, {quantum[0]}, ClaimResult::Comparison::kGreaterThan));
}

void battle_sexes_claims(std::vector<ClaimResult>& out) {
  const PayoffTable2x2 table = PayoffTable2x2::default_battle_of_sexes();
  const CatalogEntry p1 = catalog("bos_p1");
  const InducedGame g1(p1.procedure, p1.scenario);
  std::vector<double> expected;
  std::vector<double> computed;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const IndexProfile prof{a, b};
      const auto v = g1.payoff(prof);
      computed.insert(computed.end(), v.begin(), v.end());
      expected.push_back(table.p1(static_cast<int>(a), static_cast<int>(b)));
      expected.push_back(table.p2(static_cast<int>(a), static_cast<int>(b)));
    }
  }
  out.push_back(within("bos_p1_classical_table", "bos_p1 implements the classical table exactly",
                       expected, computed, 0.0));

  std::vector<double> eq;
  for (const NashReport& r : find_pure_nash(g1, 0.0)) {
    for (std::size_t s : r.profile) eq.push_back(static_cast<double>(s));
  }
  out.push_back(within("bos_p1_nash", "pure equilibria are exactly (1,1) and (sigma_x,sigma_x)",
                       {0, 0, 1, 1}, eq.size() == 4 ? eq : std::vector<double>(4, -1.0), 0.0));

  const CatalogEntry p2 = catalog("bos_p2");
  const CatalogEntry p3 = catalog("bos_p3");
  const InducedGame g2(p2.procedure, p2.scenario);
  const InducedGame g3(p3.procedure, p3.scenario);
  const auto table_of = [](const InducedGame& g) {
    std::vector<double> t;
    for (const IndexProfile& prof : all_profiles(g)) {
      const auto v = g.payoff(prof);
      t.insert(t.end(), v.begin(), v.end());
    }
    return t;
  };
  const auto t1 = table_of(g1);
  const auto t2 = table_of(g2);
  const auto t3 = table_of(g3);
  out.push_back(compare("bos_procedures_differ", "bos_p1/p2/p3 payoff tables differ pairwise",
                        {1e-9, 1e-9, 1e-9}, {max_diff(t1, t2), max_diff(t1, t3), max_diff(t2, t3)},
                        ClaimResult::Comparison::kGreaterThan));
  out.push_back(within("bos_p2_identity_payoff", "Bell-state diagonal averages the coordination payoffs",
                       {(table.p1(0, 0) + table.p1(1, 1)) / 2, (table.p2(0, 0) + table.p2(1, 1)) / 2},
                       g2.payoff(IndexProfile{0, 0}), 1e-12));
}

void separability_claim(std::vector<ClaimResult>& out) {
  std::mt19937_64 rng(7);
  const CMatrix i16 = CMatrix::identity(16);
  const StrategySpace space = StrategySpace::finite({GateLabel::identity(), GateLabel::pauli_x()});
  double worst = 0.0;
  for (int k = 0; k < kRandomCases; ++k) {
    const auto p = random_distribution(16, rng);
    const EwlProcedure proc("diagonal_mixture", 4, i16, i16, diagonal_mixture(p), space);
    const auto dist = outcome_distribution(proc, uniform_profile(4, space.at(0)));
    worst = std::max(worst, max_diff(dist.mass, p));
  }
  out.push_back(within("separable_mixture_reproduction",
                       "diagonal mixture with identity strategies reproduces any p (100 cases)", {0.0},
                       {worst}, 1e-12));
}

void card_deck_claims(std::vector<ClaimResult>& out) {
  const CardDeckSample sample = card_deck_sampler(1'000'000, 2024);
  const Scenario minority = minority_scenario(4);
  out.push_back(within("card_deck_payoff", "reading your card pays 1/4 (10^6 samples)",
                       {0.25, 0.25, 0.25, 0.25}, expected_payoff(minority, 0, sample.distribution), 0.005));
  double even_mass = 0.0;
  for (std::size_t y = 0; y < 16; ++y) {
    if (std::popcount(y) % 2 == 0) even_mass += sample.distribution.mass[y];
  }
  out.push_back(within("card_deck_support", "dealt hands always have odd parity", {0.0}, {even_mass}, 0.0));
}

void symmetric_claims(std::vector<ClaimResult>& out) {
  for (int res : {13, 25}) {
    CatalogParams params;
    params.alpha = 1.0;
    params.grid_theta = params.grid_phi = params.grid_chi = res;
    const CatalogEntry p3 = catalog("minority_p3", params);
    const SymmetricOptimum best = grid_search_symmetric_max(InducedGame(p3.procedure, p3.scenario));
    const double threshold = res == 13 ? 0.23 : 0.245;
    out.push_back(compare("minority_p3_symmetric_" + std::to_string(res),
                          "symmetric grid optimum at alpha=1 approaches 1/4", {threshold}, {best.payoff},
                          ClaimResult::Comparison::kAtLeast));
  }
}

void structural_claims(std::vector<ClaimResult>& out) {
  std::mt19937_64 rng(99);
  double norm_err = 0.0;
  double phase_err = 0.0;
  for (int k = 0; k < kRandomCases; ++k) {
    RandomCase c = random_case(rng);
    const auto d = outcome_distribution(c.entry.procedure, c.profile, c.input);
    norm_err = std::max(norm_err, std::abs(d.total() - 1.0));

    std::uniform_int_distribution<std::size_t> who(0, c.profile.size() - 1);
    const double delta = std::uniform_real_distribution<double>(0.0, 2 * kPi)(rng);
    StrategyProfile shifted = c.profile;
    PlayerStrategy& ps = shifted[who(rng)];
    ps.on_zero.matrix = ps.on_zero.matrix * std::polar(1.0, delta);
    if (ps.on_one) ps.on_one->matrix = ps.on_one->matrix * std::polar(1.0, delta);
    phase_err = std::max(phase_err, max_diff(outcome_distribution(c.entry.procedure, shifted, c.input).mass, d.mass));
  }
  out.push_back(within("normalization", "outcome masses sum to 1 (100 random cases)", {0.0}, {norm_err}, 1e-9));
  out.push_back(within("global_phase_invariance", "per-player global phase leaves p(Y|X) unchanged",
                       {0.0}, {phase_err}, 1e-12));

  double det_err = 0.0;
  for (int k = 0; k < kRandomCases; ++k) {
    const CMatrix u = su2(random_su2(rng));
    det_err = std::max(det_err, std::abs(u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0) - Complex{1.0}));
  }
  out.push_back(within("su2_determinant", "su2 has determinant 1 (100 random cases)", {0.0}, {det_err}, 1e-12));

  double trace_err = 0.0;
  std::uniform_int_distribution<int> qubits(1, 5);
  for (int k = 0; k < kRandomCases; ++k) {
    const std::size_t dim = std::size_t{1} << qubits(rng);
    const CMatrix rho = random_density(dim, rng);
    const CMatrix u = random_unitary(dim, rng);
    trace_err = std::max(trace_err, std::abs(evolve(rho, u).trace() - rho.trace()));
  }
  out.push_back(within("evolve_trace_preservation", "u rho u^dagger keeps the trace (100 random cases)",
                       {0.0}, {trace_err}, 1e-12));
}

}  // namespace

std::string to_string(ClaimResult::Comparison c) {
  switch (c) {
    case ClaimResult::Comparison::kWithinTolerance: return "within";
    case ClaimResult::Comparison::kAtLeast: return "at_least";
    case ClaimResult::Comparison::kGreaterThan: return "greater_than";
  }
  return "?";
}

ClaimResult judge(ClaimResult claim) {
  claim.pass = claim.expected.size() == claim.computed.size();
  for (std::size_t i = 0; claim.pass && i < claim.expected.size(); ++i) {
    const double e = claim.expected[i];
    const double c = claim.computed[i];
    switch (claim.comparison) {
      case ClaimResult::Comparison::kWithinTolerance: claim.pass = std::abs(c - e) <= claim.tolerance; break;
      case ClaimResult::Comparison::kAtLeast: claim.pass = c >= e; break;
      case ClaimResult::Comparison::kGreaterThan: claim.pass = c > e; break;
    }
  }
  return claim;
}

std::vector<ClaimResult> verify_claims() {
  std::vector<ClaimResult> out;
  minority_claims(out);
  modulo4_claims(out);
  battle_sexes_claims(out);
  separability_claim(out);
  card_deck_claims(out);
  symmetric_claims(out);
  structural_claims(out);
  return out;
}

}  // namespace qgame
