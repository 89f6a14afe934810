#include "qgame/experiments.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qgame/errors.hpp"

namespace qgame {
namespace {

using nlohmann::json;

std::string field_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

TEST(ParseConfig, CatalogNameResolves) {
  const auto cfg = parse_config(json{{"procedure", "minority_p2"}, {"analysis", "nash"}});
  EXPECT_EQ(cfg.analysis, Analysis::kNash);
  ASSERT_TRUE(cfg.procedure && cfg.scenario);
  EXPECT_EQ(cfg.procedure->num_players(), 4);
  EXPECT_EQ(cfg.procedure->initial_state(), minority_rho_in());
  EXPECT_EQ(cfg.scenario->name(), "minority");
  EXPECT_EQ(cfg.procedure->strategy_space().size(), 2u);
}

TEST(ParseConfig, RejectsNonUnitaryStrategy) {
  const json doc{{"procedure", "bos_p1"},
                 {"analysis", "payoff"},
                 {"parameters", {{"profile", json::array({json::array({json::array({1, 0}), json::array({0, 2})}),
                                                          "identity"})}}}};
  const std::string f = field_of(doc);
  EXPECT_EQ(f.rfind("parameters.profile", 0), 0u) << f;
}

TEST(ParseConfig, FieldPaths) {
  EXPECT_EQ(field_of(json{{"procedure", "bos_p1"}, {"analysis", ""}}), "analysis");
  EXPECT_EQ(field_of(json{{"procedure", "bos_p1"}}), "analysis");
  EXPECT_EQ(field_of(json{{"procedure", "nope"}, {"analysis", "payoff"}}), "procedure");
  EXPECT_EQ(field_of(json{{"procedure", "bos_p1"}, {"analysis", "payoff"}, {"extra", 1}}), "extra");
  EXPECT_EQ(field_of(json{{"procedure", "bos_p1"}, {"analysis", "payoff"}, {"parameters", {{"gamma", "x"}}}}),
            "parameters.gamma");
  EXPECT_EQ(field_of(json{{"procedure", "bos_p1"}, {"analysis", "payoff"}, {"output", {{"format", "xml"}}}}),
            "output.format");
  EXPECT_EQ(field_of(json{{"procedure", "bos_p1"},
                          {"analysis", "payoff"},
                          {"parameters", {{"profile", json::array({"hadamard", "identity"})}}}}),
            "parameters.profile[0]");
  EXPECT_EQ(field_of(json{{"procedure", "bos_p1"}, {"analysis", "payoff"}}), "<accepted>");
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(ParseConfig, ExplicitTupleRejectsBadOperators) {
  json proc{{"name", "custom"},
            {"n", 1},
            {"h", "identity"},
            {"j", json::array({json::array({json::array({1, 0}), json::array({0, 0})}),
                               json::array({json::array({0, 0}), json::array({2, 0})})})},
            {"initial_state", {{"basis", "0"}}},
            {"strategy_space", {{"finite", json::array({"identity"})}}}};
  const json doc{{"procedure", proc}, {"scenario", "minority"}, {"analysis", "payoff"}};
  EXPECT_EQ(field_of(doc).rfind("procedure", 0), 0u);
}

Report run_json(const json& doc) { return run_analysis(parse_config(doc)); }

TEST(RunAnalysis, BosP1PayoffCsv) {
  const auto report = run_json({{"procedure", "bos_p1"},
                                {"analysis", "payoff"},
                                {"parameters", {{"profile", "identity"}}},
                                {"output", {{"format", "table_csv"}}}});
  ASSERT_EQ(report.csv_rows.size(), 1u);
  const auto& row = report.csv_rows[0];
  ASSERT_GE(row.size(), 2u);
  EXPECT_EQ(row[row.size() - 2], "2");
  EXPECT_EQ(row[row.size() - 1], "1");
  const std::string csv = report.render(OutputFormat::kTableCsv);
  EXPECT_NE(csv.find("2,1"), std::string::npos) << csv;
}

TEST(RunAnalysis, Modulo4ClassicalBoundJson) {
  const auto report = run_json({{"scenario", "modulo4"}, {"analysis", "classical_bound"}});
  EXPECT_EQ(report.json.at("value").get<double>(), 0.75);
  const json parsed = json::parse(report.render(OutputFormat::kReportJson));
  EXPECT_EQ(parsed.at("value").get<double>(), 0.75);
}

TEST(RunAnalysis, MinorityP2DistributionRows) {
  const auto report = run_json({{"procedure", "minority_p2"},
                                {"analysis", "distribution"},
                                {"parameters", {{"profile", "identity"}}}});
  ASSERT_EQ(report.csv_rows.size(), 8u);
  for (const auto& row : report.csv_rows) {
    EXPECT_EQ(row.back(), "0.125");
    int ones = 0;
    for (char c : row[0]) ones += c == '1';
    EXPECT_EQ(ones % 2, 1) << row[0];
  }
}

TEST(RunAnalysis, FormatNumberUsesTwelveDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(0.25), "0.25");
  EXPECT_EQ(format_number(2.0), "2");
}

TEST(RunAnalysis, ComplexNumbersSerializeAsPairs) {
  const json m = matrix_to_json(CMatrix{{Complex(1, 2), 0.0}, {0.0, Complex(0, -1)}});
  EXPECT_EQ(m[0][0], json::array({1.0, 2.0}));
  EXPECT_EQ(m[1][1], json::array({0.0, -1.0}));
}

TEST(RoundTrip, CatalogEntriesAreBitIdentical) {
  for (const auto& name : catalog_names()) {
    const auto e = catalog(name);
    const json doc{{"procedure", procedure_to_json(e.procedure)},
                   {"scenario", scenario_to_json(e.scenario)},
                   {"analysis", "payoff"}};
    // Through text, the way a config file would carry it.
    const auto cfg = parse_config(json::parse(doc.dump()));
    ASSERT_TRUE(cfg.procedure) << name;
    EXPECT_EQ(cfg.procedure->h_op(), e.procedure.h_op()) << name;
    EXPECT_EQ(cfg.procedure->j_op(), e.procedure.j_op()) << name;
    EXPECT_EQ(cfg.procedure->initial_state(), e.procedure.initial_state()) << name;
    const auto& a = cfg.procedure->strategy_space();
    const auto& b = e.procedure.strategy_space();
    ASSERT_EQ(a.size(), b.size()) << name;
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a.at(k).matrix, b.at(k).matrix) << name;
    EXPECT_EQ(cfg.scenario->raw_payoffs(), e.scenario.raw_payoffs()) << name;
    EXPECT_EQ(cfg.scenario->inputs(), e.scenario.inputs()) << name;
  }
}

TEST(Determinism, IdenticalConfigsRenderIdentically) {
  const std::vector<json> docs{
      {{"procedure", "bos_p4"}, {"analysis", "nash"}, {"parameters", {{"grid", {{"theta", 5}, {"phi", 4}}}, {"nash_epsilon", 0.05}}}},
      {{"procedure", "minority_p2"}, {"analysis", "pareto"}, {"parameters", {{"profile", "identity"}}}},
      {{"procedure", "minority_p2"}, {"analysis", "payoff"}},
      {{"scenario", "modulo4"}, {"analysis", "classical_bound"}},
  };
  for (const auto& doc : docs) {
    for (OutputFormat f : {OutputFormat::kTableCsv, OutputFormat::kReportJson}) {
      EXPECT_EQ(run_json(doc).render(f), run_json(doc).render(f)) << doc.dump();
    }
  }
}

TEST(Judge, Comparisons) {
  ClaimResult c{"c", "", {1.0, 2.0}, {1.0 + 1e-13, 2.0}, 1e-12};
  EXPECT_TRUE(judge(c).pass);
  c.computed = {1.0, 2.1};
  EXPECT_FALSE(judge(c).pass);
  c.computed = {1.0};
  EXPECT_FALSE(judge(c).pass);
  ClaimResult at_least{"a", "", {0.23}, {0.23}, 0.0, ClaimResult::Comparison::kAtLeast};
  EXPECT_TRUE(judge(at_least).pass);
  at_least.computed = {0.2299};
  EXPECT_FALSE(judge(at_least).pass);
  ClaimResult gt{"g", "", {0.75}, {0.75}, 0.0, ClaimResult::Comparison::kGreaterThan};
  EXPECT_FALSE(judge(gt).pass);
  gt.computed = {1.0};
  EXPECT_TRUE(judge(gt).pass);
}

TEST(WriteReport, RelativePathsUseOutputDirEnv) {
  const auto dir = std::filesystem::temp_directory_path() / "qgame_env_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  ::setenv(kOutputDirEnv, dir.c_str(), 1);
  auto cfg = parse_config(json{{"scenario", "modulo4"}, {"analysis", "classical_bound"},
                               {"output", {{"format", "table_csv"}, {"path", "bound.csv"}}}});
  const auto written = write_report(cfg, run_analysis(cfg));
  EXPECT_EQ(written, dir / "bound.csv");
  std::ifstream in(written);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str().rfind("value", 0), 0u);

  cfg.output_path.clear();
  EXPECT_EQ(write_report(cfg, run_analysis(cfg)), dir / "classical_bound.csv");
  ::unsetenv(kOutputDirEnv);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace qgame
