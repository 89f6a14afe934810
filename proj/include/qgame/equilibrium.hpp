#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgame/ewl.hpp"
#include "qgame/scenario.hpp"

namespace qgame {

// Strategy indices into each player's space, in player order.
using IndexProfile = std::vector<std::size_t>;

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Payoff differences at or below this count as ties.
inline constexpr double kTieTol = 1e-12;

struct BestResponse {
  std::size_t strategy = 0;
  double payoff = 0.0;
};

/// Best unilateral reply of `player` against the rest of `profile`. Ties go
/// to the lowest strategy index.
BestResponse best_response(const InducedGame& game, int player,
                           std::span<const std::size_t> profile);

/// Largest gain any single player can get by deviating from `profile`
/// (never negative).
double nash_gap(const InducedGame& game, std::span<const std::size_t> profile);

struct NashReport {
  IndexProfile profile;
  std::vector<std::string> labels;
  std::vector<double> payoffs;
  double epsilon = 0.0;
};

/// Exhaustive pure-strategy ε-Nash enumeration over the game's discrete
/// profile set, in lexicographic profile order. Throws BudgetError if the
/// profile count exceeds `budget`.
std::vector<NashReport> find_pure_nash(const InducedGame& game, double epsilon,
                                       std::uint64_t budget = kDefaultBudget);

/// Number of pure profiles, saturating at UINT64_MAX.
std::uint64_t profile_count(const InducedGame& game);

// All profiles in lexicographic order. Throws BudgetError beyond `budget`.
std::vector<IndexProfile> all_profiles(const InducedGame& game,
                                       std::uint64_t budget = kDefaultBudget);

/// Position of the first candidate that weakly improves every component of
/// `payoffs` and strictly improves at least one.
std::optional<std::size_t> find_dominating(const InducedGame& game, std::span<const double> payoffs,
                                           const std::vector<IndexProfile>& candidates);

/// No candidate weakly improves every player and strictly improves one.
bool is_pareto_optimal(const InducedGame& game, std::span<const std::size_t> profile,
                       const std::vector<IndexProfile>& candidates);

/// A deterministic local strategy: output bit as a function of input bit.
struct ResponseFunction {
  int on_zero = 0;
  int on_one = 0;

  int operator()(int input_bit) const { return input_bit ? on_one : on_zero; }
  std::string name() const;  // "f(0)=a,f(1)=b"
  bool operator==(const ResponseFunction&) const = default;
};

struct ClassicalBoundReport {
  std::vector<ResponseFunction> best_profile;
  double value = 0.0;
};

/// Uniform input average of player 1's payoff under deterministic local
/// response functions.
double deterministic_value(const Scenario& s, std::span<const ResponseFunction> profile);

/// Maximum of deterministic_value() over all 4^n response-function profiles.
/// Ties keep the first profile in lexicographic order. Requires inputs.
ClassicalBoundReport classical_deterministic_bound(const Scenario& s,
                                                   std::uint64_t budget = kDefaultBudget);

struct CardDeckSample {
  OutcomeDistribution distribution;
  std::vector<std::uint64_t> counts;  // indexed by dealt 4-bit string
  std::uint64_t samples = 0;
};

/// Simulates picking one of the decks {0,0,0,1} / {1,1,1,0} uniformly,
/// shuffling it, and dealing one card to each of four players.
/// Deterministic in (num_samples, seed).
CardDeckSample card_deck_sampler(std::uint64_t num_samples, std::uint64_t seed);

struct SymmetricOptimum {
  std::size_t strategy = 0;
  std::string label;
  double payoff = 0.0;  // the smallest payoff component at the symmetric profile
};

/// Best strategy for "everyone plays the same thing", scored by the
/// smallest payoff component. Ties go to the lowest index.
SymmetricOptimum grid_search_symmetric_max(const InducedGame& game);

}  // namespace qgame
