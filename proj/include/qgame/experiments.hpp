#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/ewl.hpp"

namespace qgame {

enum class Analysis {
  kDistribution,
  kPayoff,
  kNash,
  kPareto,
  kClassicalBound,
  kSymmetricMax,
  kVerifyClaims,
};

enum class OutputFormat { kTableCsv, kReportJson };

std::string to_string(Analysis a);
std::string to_string(OutputFormat f);

// Environment variable naming the directory that relative output paths resolve against.
inline constexpr const char* kOutputDirEnv = "QGAME_OUTPUT_DIR";

struct ExperimentParameters {
  CatalogParams catalog;
  double nash_epsilon = 0.0;
  std::uint64_t seed = 12345;
  std::uint64_t samples = 1'000'000;
  std::uint64_t budget = kDefaultBudget;
  std::optional<StrategyProfile> profile;
  std::optional<BitString> input;
};

struct ExperimentConfig {
  std::string procedure_name;
  std::optional<EwlProcedure> procedure;  // empty only for verify_claims
  std::optional<Scenario> scenario;
  Analysis analysis = Analysis::kVerifyClaims;
  ExperimentParameters parameters;
  OutputFormat format = OutputFormat::kReportJson;
  std::string output_path;  // empty: "<analysis>.<csv|json>"
};

/// Parses and validates a JSON experiment description (schema in
/// docs/config.md). Throws ConfigError carrying the offending field path.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

// Serialized forms accepted back by parse_config().
nlohmann::json matrix_to_json(const CMatrix& m);
nlohmann::json procedure_to_json(const EwlProcedure& p);
nlohmann::json scenario_to_json(const Scenario& s);

/// One checked statement of the verification suite.
struct ClaimResult {
  enum class Comparison {
    kWithinTolerance,  // max_i |computed_i - expected_i| <= tolerance
    kAtLeast,          // computed_i >= expected_i for all i
    kGreaterThan,      // computed_i > expected_i for all i
  };

  std::string id;
  std::string provenance;
  std::vector<double> expected;
  std::vector<double> computed;
  double tolerance = 0.0;
  Comparison comparison = Comparison::kWithinTolerance;
  bool pass = false;
};

std::string to_string(ClaimResult::Comparison c);

// Fills in `pass` from the other fields.
ClaimResult judge(ClaimResult claim);

std::vector<ClaimResult> verify_claims();

/// Rendered analysis output: a JSON report and an equivalent CSV table.
struct Report {
  nlohmann::json json;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;

  std::string render(OutputFormat format) const;
};

// "%.12g"
std::string format_number(double v);

/// Executes the configured analysis. `all_claims_passed` is cleared when a
/// verify_claims run has failures.
Report run_analysis(const ExperimentConfig& config, bool* all_claims_passed = nullptr);

/// Resolves the output path (relative paths against $QGAME_OUTPUT_DIR, else
/// the working directory), writes the report and returns the path.
std::filesystem::path write_report(const ExperimentConfig& config, const Report& report);

}  // namespace qgame
