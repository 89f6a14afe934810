#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qgame {

// Bit vectors are stored as their big-endian integer reading:
// player 1 is the most significant of n bits.
using BitString = std::uint32_t;

inline int player_bit(BitString bits, int player, int num_players) {
  return static_cast<int>((bits >> (num_players - 1 - player)) & 1u);
}

std::string bit_string(BitString bits, int num_players);

/// Payoffs of a two-player, two-output scenario, indexed by the output
/// (y1, y2) as 0b00, 0b01, 0b10, 0b11.
struct PayoffTable2x2 {
  std::array<double, 4> player1{};
  std::array<double, 4> player2{};

  double p1(int y1, int y2) const { return player1[2 * y1 + y2]; }
  double p2(int y1, int y2) const { return player2[2 * y1 + y2]; }

  // T=5, R=3, P=1, S=0 (output 1 = defect).
  static PayoffTable2x2 default_prisoners_dilemma();
  // $1(0,0)=2, $1(1,1)=1, miscoordination 0; player 2 mirrored.
  static PayoffTable2x2 default_battle_of_sexes();
};

/// A scenario (inputs, outputs, evaluating function) over n players with
/// binary alternatives. The evaluating function is stored as an explicit
/// table over inputs × outputs. The no-input case is an empty input set;
/// evaluation then takes the single null input.
class Scenario {
 public:
  /// `payoffs` is laid out as [input slot][output index][player], where the
  /// input slot is the position of the input in `inputs` (or 0 when there
  /// are no inputs) and the output index runs over all 2^n bit strings.
  /// Entries for bit strings outside `outputs` are ignored.
  Scenario(std::string name, int num_players, std::vector<BitString> inputs,
           std::vector<BitString> outputs, std::vector<double> payoffs);

  const std::string& name() const { return name_; }
  int num_players() const { return n_; }
  int alternatives() const { return 2; }
  bool has_input() const { return !inputs_.empty(); }
  const std::vector<BitString>& inputs() const { return inputs_; }
  const std::vector<BitString>& outputs() const { return outputs_; }
  bool is_output(BitString y) const;
  // Number of input slots: |inputs|, or 1 for the null input.
  std::size_t input_slots() const { return inputs_.empty() ? 1 : inputs_.size(); }

  /// $(x, y). `input` must be std::nullopt exactly when the scenario has
  /// no input. Throws ConstraintError for unknown inputs/outputs.
  std::vector<double> evaluate(std::optional<BitString> input, BitString output) const;
  double evaluate(std::size_t input_slot, BitString output, int player) const;

  double min_payoff() const;
  double max_payoff() const;

  const std::vector<double>& raw_payoffs() const { return payoffs_; }

 private:
  std::size_t slot_of(std::optional<BitString> input) const;

  std::string name_;
  int n_;
  std::vector<BitString> inputs_;
  std::vector<BitString> outputs_;
  std::vector<double> payoffs_;
};

/// Player i is paid 1 iff strictly fewer than n/2 players (including i)
/// output y_i. 2 <= n <= 5.
Scenario minority_scenario(int num_players);

/// Throws ConstraintError naming the violated inequality.
Scenario prisoners_dilemma_scenario(const PayoffTable2x2& table);
Scenario battle_sexes_scenario(const PayoffTable2x2& table);

// Returns the first violated ordering constraint, or nullopt if admissible.
std::optional<std::string> prisoners_dilemma_violation(const PayoffTable2x2& table);
std::optional<std::string> battle_sexes_violation(const PayoffTable2x2& table);

/// Three players, even-parity inputs; everyone is paid 1 iff
/// 2(y1+y2+y3) ≡ x1+x2+x3 (mod 4).
Scenario modulo4_scenario();

}  // namespace qgame
