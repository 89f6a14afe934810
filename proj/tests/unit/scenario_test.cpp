#include "qgame/scenario.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qgame/errors.hpp"

namespace qgame {
namespace {

BitString bits(const char* s) {
  BitString b = 0;
  for (; *s; ++s) b = (b << 1) | static_cast<BitString>(*s == '1');
  return b;
}

TEST(MinorityScenario, Examples) {
  const Scenario s = minority_scenario(4);
  EXPECT_FALSE(s.has_input());
  EXPECT_EQ(s.evaluate(std::nullopt, bits("0001")), (std::vector<double>{0, 0, 0, 1}));
  EXPECT_EQ(s.evaluate(std::nullopt, bits("1100")), (std::vector<double>{0, 0, 0, 0}));
  EXPECT_EQ(s.evaluate(std::nullopt, bits("1011")), (std::vector<double>{0, 1, 0, 0}));
  EXPECT_THROW(minority_scenario(1), ConstraintError);
  EXPECT_THROW(minority_scenario(6), ConstraintError);
  EXPECT_THROW(s.evaluate(BitString{0}, bits("0000")), ConstraintError);
}

TEST(MinorityScenario, OddPlayerCountUsesStrictHalf) {
  // n=3: a lone bit has count 1 < 1.5; the pair has count 2, not < 1.5.
  const Scenario s = minority_scenario(3);
  EXPECT_EQ(s.evaluate(std::nullopt, bits("001")), (std::vector<double>{0, 0, 1}));
  EXPECT_EQ(s.evaluate(std::nullopt, bits("000")), (std::vector<double>{0, 0, 0}));
  const Scenario five = minority_scenario(5);
  EXPECT_EQ(five.evaluate(std::nullopt, bits("00011")), (std::vector<double>{0, 0, 0, 1, 1}));
}

TEST(MinorityScenario, PermutationEquivariant) {
  for (int n = 2; n <= 5; ++n) {
    const Scenario s = minority_scenario(n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (BitString y = 0; y < (BitString{1} << n); ++y) {
        BitString permuted = 0;
        for (int i = 0; i < n; ++i) {
          const int src = perm[static_cast<std::size_t>(i)];
          permuted |= static_cast<BitString>(player_bit(y, src, n)) << (n - 1 - i);
        }
        const auto base = s.evaluate(std::nullopt, y);
        const auto moved = s.evaluate(std::nullopt, permuted);
        for (int i = 0; i < n; ++i) {
          EXPECT_EQ(moved[static_cast<std::size_t>(i)], base[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(PrisonersDilemma, DefaultTableAndLookup) {
  const Scenario s = prisoners_dilemma_scenario(PayoffTable2x2::default_prisoners_dilemma());
  EXPECT_EQ(s.evaluate(std::nullopt, bits("11")), (std::vector<double>{1, 1}));
  EXPECT_EQ(s.evaluate(std::nullopt, bits("10")), (std::vector<double>{5, 0}));
  EXPECT_EQ(s.evaluate(std::nullopt, bits("00")), (std::vector<double>{3, 3}));
}

TEST(PrisonersDilemma, RejectsAveragingViolation) {
  PayoffTable2x2 t = PayoffTable2x2::default_prisoners_dilemma();
  t.player1[0b00] = t.player2[0b00] = 2;  // 2 < (5 + 0) / 2
  try {
    prisoners_dilemma_scenario(t);
    FAIL() << "expected rejection";
  } catch (const ConstraintError& e) {
    EXPECT_NE(std::string(e.what()).find("$1(0,0) >= ($1(1,0) + $1(0,1))/2"), std::string::npos);
  }
}

TEST(BattleSexes, DefaultTableAndLookup) {
  const Scenario s = battle_sexes_scenario(PayoffTable2x2::default_battle_of_sexes());
  EXPECT_EQ(s.evaluate(std::nullopt, bits("00")), (std::vector<double>{2, 1}));
  EXPECT_EQ(s.evaluate(std::nullopt, bits("11")), (std::vector<double>{1, 2}));
  EXPECT_EQ(s.evaluate(std::nullopt, bits("01")), (std::vector<double>{0, 0}));
}

TEST(BattleSexes, RejectsSymmetricCoordination) {
  PayoffTable2x2 t = PayoffTable2x2::default_battle_of_sexes();
  t.player1[0b11] = t.player2[0b00] = 2;
  EXPECT_THROW(battle_sexes_scenario(t), ConstraintError);
}

// Spelled-out admissibility predicates used as the oracle below.
bool pd_admissible(const PayoffTable2x2& t) {
  const double T = t.p1(1, 0), R = t.p1(0, 0), P = t.p1(1, 1), S = t.p1(0, 1);
  const bool mirrored = t.p2(0, 1) == T && t.p2(0, 0) == R && t.p2(1, 1) == P && t.p2(1, 0) == S;
  return mirrored && T > R && R > P && P > S && 2 * R >= T + S;
}

bool bos_admissible(const PayoffTable2x2& t) {
  const double hi = t.p1(0, 0), lo = t.p1(1, 1), miss = t.p1(0, 1);
  return t.p2(1, 1) == hi && t.p2(0, 0) == lo && t.p2(0, 1) == miss && t.p1(1, 0) == miss &&
         t.p2(1, 0) == miss && hi > lo && lo > miss;
}

PayoffTable2x2 random_table(std::mt19937_64& rng, bool mirror_pd, bool mirror_bos) {
  std::uniform_int_distribution<int> v(0, 5);
  PayoffTable2x2 t;
  for (auto& x : t.player1) x = v(rng);
  for (auto& x : t.player2) x = v(rng);
  if (mirror_pd) {
    t.player2 = {t.player1[0b00], t.player1[0b10], t.player1[0b01], t.player1[0b11]};
  }
  if (mirror_bos) {
    t.player1[0b10] = t.player1[0b01];
    t.player2 = {t.player1[0b11], t.player1[0b01], t.player1[0b01], t.player1[0b00]};
  }
  return t;
}

TEST(PayoffTableValidation, AcceptsExactlyTheAdmissibleTables) {
  std::mt19937_64 rng(20);
  int pd_accepted = 0, bos_accepted = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const PayoffTable2x2 t = random_table(rng, trial % 3 != 0, trial % 3 == 0);
    const auto pd_violation = prisoners_dilemma_violation(t);
    EXPECT_EQ(!pd_violation.has_value(), pd_admissible(t));
    if (pd_violation) {
      try {
        prisoners_dilemma_scenario(t);
        ADD_FAILURE() << "inadmissible table accepted";
      } catch (const ConstraintError& e) {
        EXPECT_NE(std::string(e.what()).find(*pd_violation), std::string::npos);
      }
    } else {
      EXPECT_NO_THROW(prisoners_dilemma_scenario(t));
      ++pd_accepted;
    }
    const auto bos_violation = battle_sexes_violation(t);
    EXPECT_EQ(!bos_violation.has_value(), bos_admissible(t));
    if (bos_violation) {
      EXPECT_THROW(battle_sexes_scenario(t), ConstraintError);
    } else {
      EXPECT_NO_THROW(battle_sexes_scenario(t));
      ++bos_accepted;
    }
  }
  // Both branches must actually be exercised.
  EXPECT_GT(pd_accepted, 10);
  EXPECT_GT(bos_accepted, 10);
}

TEST(Modulo4Scenario, Examples) {
  const Scenario s = modulo4_scenario();
  EXPECT_EQ(s.num_players(), 3);
  EXPECT_EQ(s.inputs(), (std::vector<BitString>{bits("000"), bits("110"), bits("101"), bits("011")}));
  EXPECT_EQ(s.evaluate(bits("000"), bits("000")), (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(s.evaluate(bits("110"), bits("100")), (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(s.evaluate(bits("110"), bits("000")), (std::vector<double>{0, 0, 0}));
  EXPECT_THROW(s.evaluate(bits("100"), bits("000")), ConstraintError);
  EXPECT_THROW(s.evaluate(std::nullopt, bits("000")), ConstraintError);
}

TEST(Modulo4Scenario, HalfTheOutputsWinForEveryInput) {
  const Scenario s = modulo4_scenario();
  for (BitString x : s.inputs()) {
    int wins = 0;
    for (BitString y = 0; y < 8; ++y) {
      const auto v = s.evaluate(x, y);
      EXPECT_TRUE(v[0] == v[1] && v[1] == v[2]);
      // Oracle: literal congruence on the summed bits.
      const int xs = player_bit(x, 0, 3) + player_bit(x, 1, 3) + player_bit(x, 2, 3);
      const int ys = player_bit(y, 0, 3) + player_bit(y, 1, 3) + player_bit(y, 2, 3);
      EXPECT_EQ(v[0], ((2 * ys) % 4 == xs % 4) ? 1.0 : 0.0);
      wins += static_cast<int>(v[0]);
    }
    EXPECT_EQ(wins, 4);
  }
}

TEST(Scenario, ConstructorValidation) {
  EXPECT_THROW(Scenario("x", 2, {}, {}, {}), ConstraintError);
  EXPECT_THROW(Scenario("x", 2, {}, {0, 4}, std::vector<double>(8)), ConstraintError);
  EXPECT_THROW(Scenario("x", 2, {}, {0, 0}, std::vector<double>(8)), ConstraintError);
  EXPECT_THROW(Scenario("x", 2, {}, {0, 1, 2, 3}, std::vector<double>(7)), ConstraintError);
  EXPECT_NO_THROW(Scenario("x", 2, {1}, {0, 1, 2, 3}, std::vector<double>(8)));
  const Scenario s("x", 1, {}, {0, 1}, {-1.0, 3.0});
  EXPECT_EQ(s.min_payoff(), -1.0);
  EXPECT_EQ(s.max_payoff(), 3.0);
}

}  // namespace
}  // namespace qgame
