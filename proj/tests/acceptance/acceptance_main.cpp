// Acceptance run: one PASS/FAIL line per criterion. Each criterion is
// checked against a test-side oracle and against the library's own claim
// runner; both must agree for a pass.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qgame/equilibrium.hpp"
#include "qgame/experiments.hpp"

using namespace qgame;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

const Strategy kId = make_strategy(GateLabel::identity());
const Strategy kX = make_strategy(GateLabel::pauli_x());

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Outcome minority_distribution() {
  Outcome o;
  const auto e = catalog("minority_p2");
  const auto d = outcome_distribution(e.procedure, uniform_profile(4, kId));
  for (BitString y = 0; y < 16; ++y) {
    const double want = std::popcount(y) % 2 ? 0.125 : 0.0;
    o.require(std::abs(d(y) - want) <= 1e-12, "p(" + bit_string(y, 4) + ")");
  }
  return o;
}

Outcome minority_equilibrium() {
  Outcome o;
  const auto e = catalog("minority_p2");
  const auto g = induced_game(e.procedure, e.scenario);
  const IndexProfile id{0, 0, 0, 0};
  o.require(max_diff(g.payoff(id), {0.25, 0.25, 0.25, 0.25}) <= 1e-12, "identity payoff");
  for (std::size_t i = 0; i < 4; ++i) {
    IndexProfile dev = id;
    dev[i] = 1;
    o.require(std::abs(g.payoff(dev)[i]) <= 1e-12, "deviation of player " + std::to_string(i + 1));
  }
  // Pareto by direct dominance scan over all 16 profiles.
  const auto base = g.payoff(id);
  for (unsigned mask = 0; mask < 16; ++mask) {
    IndexProfile p;
    for (int i = 0; i < 4; ++i) p.push_back((mask >> (3 - i)) & 1u);
    const auto v = g.payoff(p);
    bool weak = true, strict = false;
    for (std::size_t i = 0; i < 4; ++i) {
      weak = weak && v[i] >= base[i] - kTieTol;
      strict = strict || v[i] > base[i] + kTieTol;
    }
    o.require(!(weak && strict), "dominated by profile " + bit_string(mask, 4));
  }
  return o;
}

// GHZ amplitudes after local unitaries, computed straight from the state vector.
std::vector<double> ghz_probabilities(BitString x, const CMatrix& u0, const CMatrix& u1) {
  std::vector<double> p(8);
  for (int out = 0; out < 8; ++out) {
    Complex amp = 0.0;
    for (int in : {0, 7}) {
      Complex a = 1.0 / std::numbers::sqrt2;
      for (int k = 0; k < 3; ++k) {
        const CMatrix& u = ((x >> (2 - k)) & 1) ? u1 : u0;
        a *= u(static_cast<std::size_t>((out >> (2 - k)) & 1), static_cast<std::size_t>((in >> (2 - k)) & 1));
      }
      amp += a;
    }
    p[static_cast<std::size_t>(out)] = std::norm(amp);
  }
  return p;
}

Outcome modulo4_quantum() {
  Outcome o;
  const auto e = catalog("mod4_ghz");
  const Strategy h = make_strategy(GateLabel::hadamard());
  const Strategy sh = make_strategy(GateLabel::s_dagger_hadamard());
  const auto prof = uniform_profile(3, h, sh);
  for (BitString x : e.scenario.inputs()) {
    const auto oracle = ghz_probabilities(x, h.matrix, sh.matrix);
    const auto d = outcome_distribution(e.procedure, prof, x);
    double win_oracle = 0.0, win_lib = 0.0;
    for (int y = 0; y < 8; ++y) {
      if ((2 * std::popcount(static_cast<unsigned>(y)) - std::popcount(x)) % 4 == 0) {
        win_oracle += oracle[static_cast<std::size_t>(y)];
        win_lib += d.mass[static_cast<std::size_t>(y)];
      }
    }
    o.require(std::abs(win_oracle - 1.0) <= 1e-9, "oracle input " + bit_string(x, 3));
    o.require(std::abs(win_lib - 1.0) <= 1e-9, "library input " + bit_string(x, 3));
  }
  o.require(max_diff(payoff_with_input(e.procedure, e.scenario, prof), {1, 1, 1}) <= 1e-9, "payoff");
  return o;
}

Outcome modulo4_classical() {
  Outcome o;
  // 4 response functions per player: (f(0), f(1)) ∈ {0,1}².
  const BitString inputs[] = {0b000, 0b110, 0b101, 0b011};
  int best_wins = 0;
  for (int code = 0; code < 64; ++code) {
    int wins = 0;
    for (BitString x : inputs) {
      int ysum = 0;
      for (int k = 0; k < 3; ++k) {
        const int f = (code >> (2 * k)) & 3;
        ysum += ((x >> (2 - k)) & 1) ? f >> 1 : f & 1;
      }
      wins += (2 * ysum - std::popcount(x)) % 4 == 0;
    }
    best_wins = std::max(best_wins, wins);
  }
  o.require(best_wins == 3, "oracle bound is " + std::to_string(best_wins) + "/4");
  const auto report = classical_deterministic_bound(modulo4_scenario());
  o.require(report.value == 0.75, "library bound " + format_number(report.value));
  o.require(deterministic_value(modulo4_scenario(), report.best_profile) == report.value, "witness");
  return o;
}

Outcome classical_embedding() {
  Outcome o;
  const auto e = catalog("bos_p1");
  const auto g = induced_game(e.procedure, e.scenario);
  const auto t = PayoffTable2x2::default_battle_of_sexes();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto v = g.payoff(IndexProfile{static_cast<std::size_t>(a), static_cast<std::size_t>(b)});
      o.require(v[0] == t.p1(a, b) && v[1] == t.p2(a, b), "table entry " + std::to_string(2 * a + b));
    }
  }
  const auto nash = find_pure_nash(g, 0.0);
  o.require(nash.size() == 2 && nash[0].profile == IndexProfile{0, 0} && nash[1].profile == IndexProfile{1, 1},
            "equilibria");
  return o;
}

Outcome procedure_inequivalence() {
  Outcome o;
  std::vector<InducedGame> games;
  for (const char* name : {"bos_p1", "bos_p2", "bos_p3"}) {
    const auto e = catalog(name);
    games.push_back(induced_game(e.procedure, e.scenario));
  }
  for (std::size_t i = 0; i < games.size(); ++i) {
    for (std::size_t j = i + 1; j < games.size(); ++j) {
      double gap = 0.0;
      for (const auto& p : all_profiles(games[i])) gap = std::max(gap, max_diff(games[i].payoff(p), games[j].payoff(p)));
      o.require(gap > 1e-9, "bos_p" + std::to_string(i + 1) + " vs bos_p" + std::to_string(j + 1));
    }
  }
  const auto t = PayoffTable2x2::default_battle_of_sexes();
  const std::vector<double> want{(t.p1(0, 0) + t.p1(1, 1)) / 2, (t.p2(0, 0) + t.p2(1, 1)) / 2};
  o.require(max_diff(games[1].payoff(IndexProfile{0, 0}), want) <= 1e-12, "bos_p2 identity payoff");
  return o;
}

Outcome separability() {
  Outcome o;
  std::mt19937_64 rng(1234);
  std::exponential_distribution<double> w(1.0);
  const CMatrix id = CMatrix::identity(16);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(16);
    double total = 0.0;
    for (double& v : p) total += (v = w(rng));
    for (double& v : p) v /= total;
    const EwlProcedure proc("mixture", 4, id, id, diagonal_mixture(p),
                            StrategySpace::finite({GateLabel::identity()}));
    const auto d = outcome_distribution(proc, uniform_profile(4, kId));
    if (max_diff(d.mass, p) > 1e-12) o.require(false, "trial " + std::to_string(trial));
  }
  return o;
}

Outcome card_deck() {
  Outcome o;
  const auto s = card_deck_sampler(1'000'000, 31337);
  for (BitString y = 0; y < 16; ++y) {
    if (std::popcount(y) % 2 == 0) o.require(s.counts[y] == 0, "even-parity deal " + bit_string(y, 4));
  }
  // "Read your card": each player's payoff is their own minority indicator.
  std::vector<double> pay(4, 0.0);
  for (BitString y = 0; y < 16; ++y) {
    const int ones = std::popcount(y);
    for (int i = 0; i < 4; ++i) {
      const int same = player_bit(y, i, 4) ? ones : 4 - ones;
      if (same == 1) pay[static_cast<std::size_t>(i)] += static_cast<double>(s.counts[y]) / 1e6;
    }
  }
  o.require(max_diff(pay, {0.25, 0.25, 0.25, 0.25}) <= 0.005, "payoff");
  return o;
}

Outcome minority_symmetric() {
  Outcome o;
  for (auto [res, floor] : {std::pair{13, 0.23}, std::pair{25, 0.245}}) {
    CatalogParams params;
    params.alpha = 1.0;
    params.grid_theta = params.grid_phi = params.grid_chi = res;
    const auto e = catalog("minority_p3", params);
    const auto g = induced_game(e.procedure, e.scenario);
    const auto best = grid_search_symmetric_max(g);
    const auto recheck = g.payoff(g.profile(IndexProfile(4, best.strategy)));
    o.require(std::abs(*std::min_element(recheck.begin(), recheck.end()) - best.payoff) <= 1e-12,
              "recheck at " + std::to_string(res));
    o.require(best.payoff >= floor, std::to_string(res) + "^3 grid gives " + format_number(best.payoff));
  }
  return o;
}

CMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = Complex(g(rng), g(rng));
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t k = 0; k < c; ++k) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < dim; ++r) dot += std::conj(m(r, k)) * m(r, c);
      for (std::size_t r = 0; r < dim; ++r) m(r, c) -= dot * m(r, k);
    }
    double nrm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) nrm += std::norm(m(r, c));
    for (std::size_t r = 0; r < dim; ++r) m(r, c) /= std::sqrt(nrm);
  }
  return m;
}

Outcome structural() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi), ang(0.0, 2 * std::numbers::pi);
  const auto ghz = catalog("mod4_ghz");
  double norm_err = 0.0, phase_err = 0.0, det_err = 0.0, trace_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    StrategyProfile prof;
    for (int i = 0; i < 3; ++i) {
      prof.push_back({{"a", su2({th(rng), ang(rng), ang(rng)})}, Strategy{"b", su2({th(rng), ang(rng), ang(rng)})}});
    }
    const BitString x = ghz.scenario.inputs()[static_cast<std::size_t>(trial % 4)];
    const auto d = outcome_distribution(ghz.procedure, prof, x);
    norm_err = std::max(norm_err, std::abs(d.total() - 1.0));

    StrategyProfile shifted = prof;
    const Complex phase = std::polar(1.0, ang(rng));
    shifted[static_cast<std::size_t>(trial % 3)].on_zero.matrix = shifted[static_cast<std::size_t>(trial % 3)].on_zero.matrix * phase;
    shifted[static_cast<std::size_t>(trial % 3)].on_one->matrix = shifted[static_cast<std::size_t>(trial % 3)].on_one->matrix * phase;
    phase_err = std::max(phase_err, max_diff(outcome_distribution(ghz.procedure, shifted, x).mass, d.mass));

    const CMatrix u = su2({th(rng), ang(rng), ang(rng)});
    det_err = std::max(det_err, std::abs(u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0) - 1.0));

    const std::size_t dim = std::size_t{1} << (1 + trial % 4);
    CMatrix a(dim, dim);
    std::normal_distribution<double> g;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) a(r, c) = Complex(g(rng), g(rng));
    CMatrix rho = a * conjugate_transpose(a);
    rho = rho * Complex(1.0 / rho.trace().real());
    trace_err = std::max(trace_err, std::abs(evolve(rho, haar_unitary(dim, rng)).trace() - 1.0));
  }
  o.require(norm_err <= 1e-9, "normalization " + format_number(norm_err));
  o.require(phase_err <= 1e-12, "phase " + format_number(phase_err));
  o.require(det_err <= 1e-12, "determinant " + format_number(det_err));
  o.require(trace_err <= 1e-12, "trace " + format_number(trace_err));
  return o;
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> check;
  std::vector<std::string> claim_prefixes;
};

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<ClaimResult> claims = verify_claims();

  const std::vector<Criterion> criteria{
      {1, "minority P2 distribution", minority_distribution, {"minority_p2_distribution"}},
      {2, "minority P2 payoff, Nash and Pareto", minority_equilibrium,
       {"minority_p2_payoff", "minority_p2_deviation", "minority_p2_nash_gap", "minority_p2_pareto"}},
      {3, "modulo-4 quantum value", modulo4_quantum, {"mod4_quantum"}},
      {4, "modulo-4 classical bound", modulo4_classical, {"mod4_classical_bound", "mod4_entanglement_gap"}},
      {5, "classical embedding of BoS P1", classical_embedding, {"bos_p1"}},
      {6, "procedure inequivalence", procedure_inequivalence, {"bos_procedures_differ", "bos_p2"}},
      {7, "separable mixture reproduction", separability, {"separable_mixture_reproduction"}},
      {8, "card-deck classical process", card_deck, {"card_deck"}},
      {9, "minority P3 symmetric optimum", minority_symmetric, {"minority_p3_symmetric"}},
      {10, "structural properties", structural,
       {"normalization", "global_phase_invariance", "su2_determinant", "evolve_trace_preservation"}},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::size_t matched = 0;
    for (const auto& r : claims) {
      for (const auto& prefix : c.claim_prefixes) {
        if (r.id.rfind(prefix, 0) == 0) {
          ++matched;
          o.require(r.pass, "claim " + r.id + " failed");
          break;
        }
      }
    }
    o.require(matched > 0, "no matching claims");
    failures += !o.ok;
    std::printf("%s  criterion %2d: %s%s%s\n", o.ok ? "PASS" : "FAIL", c.number, c.name,
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failures,
              criteria.size(), secs);
  return failures == 0 ? 0 : 1;
}
