// qgame: run experiment configs, verify the reference claims, list the
// built-in procedures.
//
// Exit status: 0 success / all claims pass, 1 claim failure or runtime
// failure, 2 configuration error.

#include <iostream>

#include "CLI11.hpp"
#include "qgame/errors.hpp"
#include "qgame/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

int run_config(const std::string& path) {
  const qgame::ExperimentConfig config = qgame::load_config(path);
  bool all_passed = true;
  const qgame::Report report = qgame::run_analysis(config, &all_passed);
  const auto written = qgame::write_report(config, report);
  std::cout << "wrote " << written.string() << "\n";
  return all_passed ? kExitOk : kExitFail;
}

int verify(const std::string& format, const std::string& output) {
  qgame::ExperimentConfig config;
  config.analysis = qgame::Analysis::kVerifyClaims;
  config.format = format == "table_csv" ? qgame::OutputFormat::kTableCsv : qgame::OutputFormat::kReportJson;
  config.output_path = output;
  bool all_passed = true;
  const qgame::Report report = qgame::run_analysis(config, &all_passed);
  for (const auto& claim : report.json["claims"]) {
    std::cout << (claim["pass"].get<bool>() ? "PASS  " : "FAIL  ") << claim["id"].get<std::string>()
              << "\n";
  }
  if (!output.empty()) std::cout << "wrote " << qgame::write_report(config, report).string() << "\n";
  return all_passed ? kExitOk : kExitFail;
}

int list_catalog() {
  for (const std::string& name : qgame::catalog_names()) {
    std::cout << name << "\t" << qgame::catalog_description(name) << "\n";
  }
  return kExitOk;
}

int show(const std::string& name) {
  const qgame::CatalogEntry entry = qgame::catalog(name);
  const nlohmann::json doc{{"procedure", qgame::procedure_to_json(entry.procedure)},
                           {"scenario", qgame::scenario_to_json(entry.scenario)}};
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate EWL-type procedures within game scenarios and analyse the games they induce"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the analysis described by a JSON config file");
  run->add_option("config", config_path, "Path to the config file")->required();

  std::string format = "report_json";
  std::string output;
  auto* ver = app.add_subcommand("verify", "Check every reference claim; exit 0 iff all pass");
  ver->add_option("--format", format, "table_csv or report_json")
      ->check(CLI::IsMember({"table_csv", "report_json"}));
  ver->add_option("--output", output, "Also write the claim report to this path");

  auto* list = app.add_subcommand("list-catalog", "List the built-in procedures");

  std::string show_name;
  auto* sh = app.add_subcommand("show", "Print a catalog entry as an explicit config fragment");
  sh->add_option("name", show_name, "Catalog name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return run_config(config_path);
    if (*ver) return verify(format, output);
    if (*list) return list_catalog();
    if (*sh) return show(show_name);
  } catch (const qgame::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qgame::BudgetError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qgame::ConstraintError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
