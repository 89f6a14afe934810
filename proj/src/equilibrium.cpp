#include "qgame/equilibrium.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "qgame/errors.hpp"

namespace qgame {
namespace {

void check_profile(const InducedGame& game, std::span<const std::size_t> profile) {
  if (profile.size() != static_cast<std::size_t>(game.num_players())) {
    throw ConstraintError("profile length does not match the player count");
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] >= game.strategy_count(static_cast<int>(i))) {
      throw ConstraintError("strategy index out of range for player " + std::to_string(i + 1));
    }
  }
}

// Payoff of `player` when it switches to `s`, everyone else fixed.
double deviation_payoff(const InducedGame& game, int player, IndexProfile& scratch,
                        std::size_t s) {
  const std::size_t saved = scratch[static_cast<std::size_t>(player)];
  scratch[static_cast<std::size_t>(player)] = s;
  const double v = game.payoff(scratch)[static_cast<std::size_t>(player)];
  scratch[static_cast<std::size_t>(player)] = saved;
  return v;
}

}  // namespace

BestResponse best_response(const InducedGame& game, int player,
                           std::span<const std::size_t> profile) {
  check_profile(game, profile);
  if (player < 0 || player >= game.num_players()) throw ConstraintError("player out of range");
  IndexProfile scratch(profile.begin(), profile.end());
  BestResponse best{0, -std::numeric_limits<double>::infinity()};
  for (std::size_t s = 0; s < game.strategy_count(player); ++s) {
    const double v = deviation_payoff(game, player, scratch, s);
    if (v > best.payoff + kTieTol) best = {s, v};
  }
  return best;
}

double nash_gap(const InducedGame& game, std::span<const std::size_t> profile) {
  check_profile(game, profile);
  const auto current = game.payoff(profile);
  double gap = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    const BestResponse br = best_response(game, i, profile);
    gap = std::max(gap, br.payoff - current[static_cast<std::size_t>(i)]);
  }
  return gap;
}

std::uint64_t profile_count(const InducedGame& game) {
  std::uint64_t total = 1;
  for (int i = 0; i < game.num_players(); ++i) {
    const std::uint64_t c = game.strategy_count(i);
    if (c != 0 && total > std::numeric_limits<std::uint64_t>::max() / c) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= c;
  }
  return total;
}

namespace {

void check_budget(std::uint64_t count, std::uint64_t budget, const char* what) {
  if (count > budget) {
    throw BudgetError(std::string(what) + ": profile space of " + std::to_string(count) +
                      " exceeds the evaluation budget of " + std::to_string(budget));
  }
}

IndexProfile decode(const InducedGame& game, std::uint64_t linear) {
  IndexProfile p(static_cast<std::size_t>(game.num_players()));
  for (int i = game.num_players() - 1; i >= 0; --i) {
    const std::uint64_t c = game.strategy_count(i);
    p[static_cast<std::size_t>(i)] = static_cast<std::size_t>(linear % c);
    linear /= c;
  }
  return p;
}

}  // namespace

std::vector<IndexProfile> all_profiles(const InducedGame& game, std::uint64_t budget) {
  const std::uint64_t total = profile_count(game);
  check_budget(total, budget, "all_profiles");
  std::vector<IndexProfile> out;
  out.reserve(total);
  for (std::uint64_t l = 0; l < total; ++l) out.push_back(decode(game, l));
  return out;
}

std::vector<NashReport> find_pure_nash(const InducedGame& game, double epsilon,
                                       std::uint64_t budget) {
  if (!(epsilon >= 0.0)) throw ConstraintError("find_pure_nash: epsilon must be >= 0");
  const std::uint64_t total = profile_count(game);
  check_budget(total, budget, "find_pure_nash");
  const std::size_t n = static_cast<std::size_t>(game.num_players());

  // payoff[l * n + i], l = lexicographic profile index (player 1 most significant)
  std::vector<double> payoff(total * n);
  for (std::uint64_t l = 0; l < total; ++l) {
    const auto v = game.payoff(decode(game, l));
    std::copy(v.begin(), v.end(), payoff.begin() + static_cast<std::ptrdiff_t>(l * n));
  }

  // best[i][line]: player i's best payoff along the line through l varying only digit i.
  std::vector<std::uint64_t> stride(n, 1);
  for (std::size_t i = n - 1; i-- > 0;) stride[i] = stride[i + 1] * game.strategy_count(static_cast<int>(i + 1));
  const auto line_of = [&](std::uint64_t l, std::size_t i) {
    const std::uint64_t block = stride[i] * game.strategy_count(static_cast<int>(i));
    return (l / block) * stride[i] + l % stride[i];
  };
  std::vector<std::vector<double>> best(n);
  for (std::size_t i = 0; i < n; ++i) {
    best[i].assign(total / game.strategy_count(static_cast<int>(i)),
                   -std::numeric_limits<double>::infinity());
    for (std::uint64_t l = 0; l < total; ++l) {
      double& b = best[i][line_of(l, i)];
      b = std::max(b, payoff[l * n + i]);
    }
  }

  std::vector<NashReport> reports;
  for (std::uint64_t l = 0; l < total; ++l) {
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, best[i][line_of(l, i)] - payoff[l * n + i]);
    if (gap > epsilon + kTieTol) continue;
    NashReport r;
    r.profile = decode(game, l);
    for (std::size_t i = 0; i < n; ++i) r.labels.push_back(game.strategy_label(static_cast<int>(i), r.profile[i]));
    r.payoffs.assign(payoff.begin() + static_cast<std::ptrdiff_t>(l * n),
                     payoff.begin() + static_cast<std::ptrdiff_t>((l + 1) * n));
    r.epsilon = gap;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::optional<std::size_t> find_dominating(const InducedGame& game, std::span<const double> payoffs,
                                           const std::vector<IndexProfile>& candidates) {
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto other = game.payoff(candidates[k]);
    bool weakly_better = true;
    bool strictly_better = false;
    for (std::size_t i = 0; i < payoffs.size(); ++i) {
      if (other[i] < payoffs[i] - kTieTol) weakly_better = false;
      if (other[i] > payoffs[i] + kTieTol) strictly_better = true;
    }
    if (weakly_better && strictly_better) return k;
  }
  return std::nullopt;
}

bool is_pareto_optimal(const InducedGame& game, std::span<const std::size_t> profile,
                       const std::vector<IndexProfile>& candidates) {
  return !find_dominating(game, game.payoff(profile), candidates).has_value();
}

std::string ResponseFunction::name() const {
  return "f(0)=" + std::to_string(on_zero) + ",f(1)=" + std::to_string(on_one);
}

double deterministic_value(const Scenario& s, std::span<const ResponseFunction> profile) {
  const int n = s.num_players();
  if (profile.size() != static_cast<std::size_t>(n)) {
    throw ConstraintError("response profile length does not match the player count");
  }
  if (!s.has_input()) throw ConstraintError("scenario '" + s.name() + "' has no input");
  double total = 0.0;
  for (std::size_t slot = 0; slot < s.inputs().size(); ++slot) {
    const BitString x = s.inputs()[slot];
    BitString y = 0;
    for (int i = 0; i < n; ++i) {
      y = (y << 1) | static_cast<BitString>(profile[static_cast<std::size_t>(i)](player_bit(x, i, n)));
    }
    if (!s.is_output(y)) throw ConstraintError("deterministic profile produces an invalid output");
    total += s.evaluate(slot, y, 0);
  }
  return total / static_cast<double>(s.inputs().size());
}

ClassicalBoundReport classical_deterministic_bound(const Scenario& s, std::uint64_t budget) {
  if (!s.has_input()) {
    throw ConstraintError("classical_deterministic_bound: scenario '" + s.name() + "' has no input");
  }
  const int n = s.num_players();
  const std::uint64_t total = std::uint64_t{1} << (2 * n);  // (k^k)^n with k = 2
  check_budget(total, budget, "classical_deterministic_bound");
  ClassicalBoundReport best{{}, -std::numeric_limits<double>::infinity()};
  std::vector<ResponseFunction> prof(static_cast<std::size_t>(n));
  for (std::uint64_t code = 0; code < total; ++code) {
    for (int i = 0; i < n; ++i) {
      const auto f = (code >> (2 * (n - 1 - i))) & 3u;
      prof[static_cast<std::size_t>(i)] = {static_cast<int>(f >> 1), static_cast<int>(f & 1u)};
    }
    const double v = deterministic_value(s, prof);
    if (v > best.value + kTieTol) best = {prof, v};
  }
  return best;
}

CardDeckSample card_deck_sampler(std::uint64_t num_samples, std::uint64_t seed) {
  if (num_samples == 0) throw ConstraintError("card_deck_sampler: num_samples must be >= 1");
  std::mt19937_64 rng(seed);
  CardDeckSample out;
  out.samples = num_samples;
  out.counts.assign(16, 0);
  for (std::uint64_t s = 0; s < num_samples; ++s) {
    const bool majority_one = (rng() & 1u) != 0;
    std::array<int, 4> deck = majority_one ? std::array{1, 1, 1, 0} : std::array{0, 0, 0, 1};
    // Fisher-Yates with raw engine output keeps the stream portable.
    for (std::size_t i = deck.size() - 1; i > 0; --i) {
      std::swap(deck[i], deck[rng() % (i + 1)]);
    }
    BitString y = 0;
    for (int card : deck) y = (y << 1) | static_cast<BitString>(card);
    ++out.counts[y];
  }
  out.distribution.num_players = 4;
  out.distribution.mass.resize(16);
  for (std::size_t y = 0; y < 16; ++y) {
    out.distribution.mass[y] = static_cast<double>(out.counts[y]) / static_cast<double>(num_samples);
  }
  return out;
}

SymmetricOptimum grid_search_symmetric_max(const InducedGame& game) {
  const int n = game.num_players();
  const std::size_t m = game.strategy_count(0);
  for (int i = 1; i < n; ++i) {
    if (game.strategy_count(i) != m) {
      throw ConstraintError("grid_search_symmetric_max: players have different strategy spaces");
    }
  }
  SymmetricOptimum best{0, {}, -std::numeric_limits<double>::infinity()};
  IndexProfile prof(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < m; ++s) {
    std::fill(prof.begin(), prof.end(), s);
    const auto v = game.payoff(prof);
    const double common = *std::min_element(v.begin(), v.end());
    if (common > best.payoff + kTieTol) best = {s, {}, common};
  }
  best.label = game.strategy_label(0, best.strategy);
  return best;
}

}  // namespace qgame
