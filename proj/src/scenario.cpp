#include "qgame/scenario.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

#include "qgame/errors.hpp"

namespace qgame {

std::string bit_string(BitString bits, int num_players) {
  std::string s(static_cast<std::size_t>(num_players), '0');
  for (int i = 0; i < num_players; ++i) {
    if (player_bit(bits, i, num_players)) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

PayoffTable2x2 PayoffTable2x2::default_prisoners_dilemma() {
  // index: (0,0) (0,1) (1,0) (1,1)
  return {{3, 0, 5, 1}, {3, 5, 0, 1}};
}

PayoffTable2x2 PayoffTable2x2::default_battle_of_sexes() {
  return {{2, 0, 0, 1}, {1, 0, 0, 2}};
}

Scenario::Scenario(std::string name, int num_players, std::vector<BitString> inputs,
                   std::vector<BitString> outputs, std::vector<double> payoffs)
    : name_(std::move(name)),
      n_(num_players),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      payoffs_(std::move(payoffs)) {
  if (n_ < 1 || n_ > 5) {
    throw ConstraintError("scenario: player count " + std::to_string(n_) + " outside [1, 5]");
  }
  const BitString limit = BitString{1} << n_;
  auto check_set = [&](const std::vector<BitString>& set, const char* what) {
    std::set<BitString> seen;
    for (BitString b : set) {
      if (b >= limit) throw ConstraintError(std::string("scenario: ") + what + " outside {0,1}^n");
      if (!seen.insert(b).second) throw ConstraintError(std::string("scenario: duplicate ") + what);
    }
  };
  check_set(inputs_, "input");
  check_set(outputs_, "output");
  if (outputs_.empty()) throw ConstraintError("scenario: output set is empty");
  const std::size_t expected = input_slots() * limit * static_cast<std::size_t>(n_);
  if (payoffs_.size() != expected) {
    throw ConstraintError("scenario: payoff table has " + std::to_string(payoffs_.size()) +
                          " entries, expected " + std::to_string(expected));
  }
  for (double v : payoffs_) {
    if (!std::isfinite(v)) throw ConstraintError("scenario: payoff is not finite");
  }
}

bool Scenario::is_output(BitString y) const {
  return std::find(outputs_.begin(), outputs_.end(), y) != outputs_.end();
}

std::size_t Scenario::slot_of(std::optional<BitString> input) const {
  if (!has_input()) {
    if (input) throw ConstraintError("scenario '" + name_ + "' takes no input");
    return 0;
  }
  if (!input) throw ConstraintError("scenario '" + name_ + "' requires an input");
  auto it = std::find(inputs_.begin(), inputs_.end(), *input);
  if (it == inputs_.end()) {
    throw ConstraintError("input " + bit_string(*input, n_) + " is not valid for '" + name_ + "'");
  }
  return static_cast<std::size_t>(it - inputs_.begin());
}

std::vector<double> Scenario::evaluate(std::optional<BitString> input, BitString output) const {
  const std::size_t slot = slot_of(input);
  if (!is_output(output)) {
    throw ConstraintError("output " + bit_string(output, n_) + " is not valid for '" + name_ + "'");
  }
  std::vector<double> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = evaluate(slot, output, i);
  return out;
}

double Scenario::evaluate(std::size_t input_slot, BitString output, int player) const {
  const std::size_t dim = std::size_t{1} << n_;
  return payoffs_[(input_slot * dim + output) * static_cast<std::size_t>(n_) +
                  static_cast<std::size_t>(player)];
}

double Scenario::min_payoff() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < input_slots(); ++s) {
    for (BitString y : outputs_) {
      for (int i = 0; i < n_; ++i) m = std::min(m, evaluate(s, y, i));
    }
  }
  return m;
}

double Scenario::max_payoff() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < input_slots(); ++s) {
    for (BitString y : outputs_) {
      for (int i = 0; i < n_; ++i) m = std::max(m, evaluate(s, y, i));
    }
  }
  return m;
}

namespace {

std::vector<BitString> all_strings(int n) {
  std::vector<BitString> v(std::size_t{1} << n);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<BitString>(i);
  return v;
}

std::vector<double> two_player_table(const PayoffTable2x2& t) {
  std::vector<double> payoffs(8);
  for (int y = 0; y < 4; ++y) {
    payoffs[static_cast<std::size_t>(2 * y)] = t.player1[static_cast<std::size_t>(y)];
    payoffs[static_cast<std::size_t>(2 * y + 1)] = t.player2[static_cast<std::size_t>(y)];
  }
  return payoffs;
}

}  // namespace

Scenario minority_scenario(int num_players) {
  if (num_players < 2 || num_players > 5) {
    throw ConstraintError("minority_scenario: n=" + std::to_string(num_players) +
                          " outside [2, 5]");
  }
  const int n = num_players;
  const auto outputs = all_strings(n);
  std::vector<double> payoffs(outputs.size() * static_cast<std::size_t>(n));
  for (BitString y : outputs) {
    const int ones = std::popcount(y);
    for (int i = 0; i < n; ++i) {
      const int same = player_bit(y, i, n) ? ones : n - ones;
      // |{j : y_j = y_i}| < n/2, compared as 2·count < n.
      payoffs[y * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
          2 * same < n ? 1.0 : 0.0;
    }
  }
  return Scenario("minority", n, {}, outputs, std::move(payoffs));
}

std::optional<std::string> prisoners_dilemma_violation(const PayoffTable2x2& t) {
  if (t.p1(1, 0) != t.p2(0, 1)) return "$1(1,0) = $2(0,1)";
  if (t.p1(0, 0) != t.p2(0, 0)) return "$1(0,0) = $2(0,0)";
  if (t.p1(1, 1) != t.p2(1, 1)) return "$1(1,1) = $2(1,1)";
  if (t.p1(0, 1) != t.p2(1, 0)) return "$1(0,1) = $2(1,0)";
  if (!(t.p1(1, 0) > t.p1(0, 0))) return "$1(1,0) > $1(0,0)";
  if (!(t.p1(0, 0) > t.p1(1, 1))) return "$1(0,0) > $1(1,1)";
  if (!(t.p1(1, 1) > t.p1(0, 1))) return "$1(1,1) > $1(0,1)";
  if (!(t.p1(0, 0) >= (t.p1(1, 0) + t.p1(0, 1)) / 2)) return "$1(0,0) >= ($1(1,0) + $1(0,1))/2";
  return std::nullopt;
}

std::optional<std::string> battle_sexes_violation(const PayoffTable2x2& t) {
  if (t.p1(0, 0) != t.p2(1, 1)) return "$1(0,0) = $2(1,1)";
  if (t.p1(1, 1) != t.p2(0, 0)) return "$1(1,1) = $2(0,0)";
  if (t.p1(0, 1) != t.p2(0, 1)) return "$1(0,1) = $2(0,1)";
  if (t.p2(0, 1) != t.p1(1, 0)) return "$2(0,1) = $1(1,0)";
  if (t.p1(1, 0) != t.p2(1, 0)) return "$1(1,0) = $2(1,0)";
  if (!(t.p1(0, 0) > t.p1(1, 1))) return "$1(0,0) > $1(1,1)";
  if (!(t.p1(1, 1) > t.p1(0, 1))) return "$1(1,1) > $1(0,1)";
  return std::nullopt;
}

Scenario prisoners_dilemma_scenario(const PayoffTable2x2& table) {
  if (auto v = prisoners_dilemma_violation(table)) {
    throw ConstraintError("prisoners_dilemma: violates " + *v);
  }
  return Scenario("prisoners_dilemma", 2, {}, all_strings(2), two_player_table(table));
}

Scenario battle_sexes_scenario(const PayoffTable2x2& table) {
  if (auto v = battle_sexes_violation(table)) {
    throw ConstraintError("battle_of_sexes: violates " + *v);
  }
  return Scenario("battle_of_sexes", 2, {}, all_strings(2), two_player_table(table));
}

Scenario modulo4_scenario() {
  const std::vector<BitString> inputs{0b000, 0b110, 0b101, 0b011};
  const auto outputs = all_strings(3);
  std::vector<double> payoffs(inputs.size() * outputs.size() * 3);
  for (std::size_t slot = 0; slot < inputs.size(); ++slot) {
    const int xsum = std::popcount(inputs[slot]);
    for (BitString y : outputs) {
      const int ysum = std::popcount(y);
      const double win = (2 * ysum - xsum) % 4 == 0 ? 1.0 : 0.0;
      for (std::size_t i = 0; i < 3; ++i) payoffs[(slot * 8 + y) * 3 + i] = win;
    }
  }
  return Scenario("modulo4", 3, inputs, outputs, std::move(payoffs));
}

}  // namespace qgame
