#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pursuitsim/errors.hpp"
#include "pursuitsim/exporter.hpp"
#include "pursuitsim/scenario.hpp"

namespace fs = std::filesystem;
using namespace pursuitsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

// A scenario argument is a file path, or the name/number of a bundled
// scenario when no such file exists.
ScenarioConfig resolve_scenario(const std::string& arg) {
  if (fs::exists(arg)) return load_scenario(arg);
  for (const BundledScenario& b : bundled_scenarios())
    if (arg == b.name || arg == b.filename)
      return parse_scenario(b.text);
  if (arg.size() == 1 && arg[0] >= '1' && arg[0] <= '3')
    return bundled_scenario_config(arg);
  throw ValidationError("no scenario file or bundled scenario named '" + arg + "'");
}

fs::path default_out_dir(const std::string& scenario_name) {
  if (const char* env = std::getenv("PURSUITSIM_OUT_DIR"))
    return fs::path(env) / scenario_name;
  return fs::path("runs") / scenario_name;
}

std::set<ExportFormat> parse_formats(const std::string& csv_list) {
  std::set<ExportFormat> formats;
  std::string token;
  std::istringstream in(csv_list);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) formats.insert(parse_format_name(token));
  }
  if (formats.empty())
    throw ValidationError("--formats: expected at least one of csv, kml, geojson");
  return formats;
}

int cmd_run(const std::string& scenario_arg, const std::string& out_arg,
            long long seed_arg, bool seed_given, const std::string& formats_arg) {
  ScenarioConfig cfg = resolve_scenario(scenario_arg);
  if (seed_given) {
    if (seed_arg < 0) throw ValidationError("--seed: must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed_arg);
  }

  const std::set<ExportFormat> formats = parse_formats(formats_arg);
  const fs::path out_dir =
      out_arg.empty() ? default_out_dir(cfg.name) : fs::path(out_arg);

  const RunRecord rec = run(cfg);
  const auto written = export_run(rec, formats, out_dir);

  for (const PursuerMetrics& m : rec.metrics.pursuers) {
    std::cout << m.vessel_id << ": ";
    if (m.capture_time_s)
      std::cout << "captured at t=" << *m.capture_time_s << " s";
    else
      std::cout << "not captured";
    std::cout << ", min distance " << m.min_distance_m << " m\n";
  }
  for (const auto& p : written) std::cout << "wrote " << p.string() << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& scenario_arg) {
  const ScenarioConfig cfg = resolve_scenario(scenario_arg);
  std::cout << cfg.name << ": valid (" << cfg.pursuers.size() << " pursuers, "
            << cfg.events.size() << " events)\n";
  return kExitOk;
}

int cmd_scenarios_ship(const std::string& dir_arg) {
  const fs::path dir = dir_arg.empty() ? fs::path("scenarios") : fs::path(dir_arg);
  fs::create_directories(dir);
  for (const BundledScenario& b : bundled_scenarios()) {
    const fs::path path = dir / b.filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimulationError("cannot write " + path.string());
    out << b.text;
    std::cout << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic pursuer-evader simulation engine"};
  app.require_subcommand(1);

  std::string scenario_arg, out_arg, formats_arg = "csv,kml,geojson", dir_arg;
  long long seed_arg = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "run a scenario and export artifacts");
  run_cmd->add_option("scenario", scenario_arg,
                      "scenario file path, or bundled name/number")
      ->required();
  run_cmd->add_option("--out", out_arg,
                      "output directory (default: $PURSUITSIM_OUT_DIR/<name> "
                      "or runs/<name>)");
  CLI::Option* seed_opt =
      run_cmd->add_option("--seed", seed_arg, "override the scenario seed");
  run_cmd->add_option("--formats", formats_arg,
                      "comma list of csv,kml,geojson (default all)");

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "parse and validate a scenario");
  validate_cmd->add_option("scenario", scenario_arg, "scenario file path")
      ->required();

  CLI::App* scenarios_cmd = app.add_subcommand("scenarios", "bundled scenarios");
  CLI::App* ship_cmd =
      scenarios_cmd->add_subcommand("ship", "write the bundled scenario files");
  ship_cmd->add_option("--dir", dir_arg, "target directory (default: scenarios)");
  scenarios_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (run_cmd->parsed())
      return cmd_run(scenario_arg, out_arg, seed_arg, seed_opt->count() > 0,
                     formats_arg);
    if (validate_cmd->parsed()) return cmd_validate(scenario_arg);
    if (scenarios_cmd->parsed() && ship_cmd->parsed())
      return cmd_scenarios_ship(dir_arg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}
