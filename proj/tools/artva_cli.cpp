// Command-line front end: single simulation runs with CSV traces, and
// Monte Carlo batches with JSON/boxplot summaries.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "artva/config.hpp"
#include "artva/engine.hpp"
#include "artva/errors.hpp"
#include "artva/mc.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
  std::filesystem::path dir{out_dir};
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw artva::IoError{"cannot create output directory '" + out_dir +
                         "': " + ec.message()};
  return dir;
}

std::vector<artva::Mode> parse_modes(const std::vector<std::string>& names) {
  std::vector<artva::Mode> modes;
  for (const auto& name : names) {
    const auto mode = artva::parse_mode(name);
    if (!mode)
      throw artva::ConfigError{"--modes: unknown mode '" + name +
                               "' (expected es, ls or esls)"};
    modes.push_back(*mode);
  }
  return modes;
}

struct CriterionFlags {
  std::optional<double> threshold;
  std::optional<int> window;
  std::optional<std::uint64_t> max_steps;

  void attach(CLI::App* cmd) {
    cmd->add_option("--threshold", threshold,
                    "convergence error threshold in meters (default 2)");
    cmd->add_option("--window", window,
                    "consecutive steps the error must hold (default 30)");
    cmd->add_option("--max-steps", max_steps,
                    "research-step budget per run (default 10000)");
  }

  artva::ConvergenceCriterion resolve() const {
    artva::ConvergenceCriterion crit;
    if (threshold) crit.threshold = *threshold;
    if (window) crit.window = *window;
    if (max_steps) crit.max_steps = *max_steps;
    return crit;
  }
};

int run_cli(int argc, char** argv) {
  CLI::App app{"artva: multi-agent magnetic-beacon localization simulator"};
  app.set_version_flag("--version", std::string{"artva "} + kVersion);
  app.require_subcommand(1);

  std::string run_config_path;
  std::string run_mode;
  std::optional<std::uint64_t> run_seed;
  std::string run_out = ".";
  CriterionFlags run_crit;
  auto* run_cmd =
      app.add_subcommand("run", "run one simulation and write its trace CSV");
  run_cmd->add_option("--config", run_config_path, "config file (key = value)")
      ->required();
  run_cmd->add_option("--mode", run_mode,
                      "override the config mode: es, ls or esls");
  run_cmd->add_option("--seed", run_seed, "override the config seed");
  run_cmd->add_option("--out", run_out, "output directory (default .)");
  run_crit.attach(run_cmd);

  std::string mc_config_path;
  int mc_runs = 0;
  std::optional<std::uint64_t> mc_seed;
  std::vector<std::string> mc_modes{"esls"};
  std::string mc_out = ".";
  int mc_threads = 0;
  CriterionFlags mc_crit;
  auto* mc_cmd = app.add_subcommand(
      "mc", "run a Monte Carlo batch and write summary + boxplot files");
  mc_cmd->add_option("--config", mc_config_path, "config file (key = value)")
      ->required();
  mc_cmd->add_option("--runs", mc_runs, "number of runs per mode")->required();
  mc_cmd->add_option("--seed", mc_seed,
                     "base seed; run r uses seed base+r (default: config seed)");
  mc_cmd->add_option("--modes", mc_modes, "comma-separated modes to compare")
      ->delimiter(',');
  mc_cmd->add_option("--out", mc_out, "output directory (default .)");
  mc_cmd->add_option("--threads", mc_threads,
                     "worker threads, 0 = hardware concurrency");
  mc_crit.attach(mc_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (run_cmd->parsed()) {
    artva::SimConfig config = artva::load_config(run_config_path);
    if (!run_mode.empty()) {
      const auto mode = artva::parse_mode(run_mode);
      if (!mode)
        throw artva::ConfigError{"--mode: unknown mode '" + run_mode +
                                 "' (expected es, ls or esls)"};
      config.mode = *mode;
    }
    if (run_seed) config.seed = *run_seed;
    const artva::ConvergenceCriterion crit = run_crit.resolve();
    if (run_crit.max_steps) config.max_research_steps = *run_crit.max_steps;
    artva::validate(config);

    const auto dir = prepare_out_dir(run_out);
    const artva::RunTrace trace = artva::run_simulation(config);
    const auto trace_path =
        dir / (std::string{"trace_"} + artva::mode_name(config.mode) + ".csv");
    artva::write_trace_csv(trace, trace_path.string());

    std::vector<double> err_norms;
    err_norms.reserve(trace.rows.size());
    for (const auto& row : trace.rows) err_norms.push_back(row.err_norm);
    const auto steps = artva::convergence_step(err_norms, crit);

    const auto& last = trace.rows.back();
    std::cout << "mode " << artva::mode_name(config.mode) << ", seed "
              << config.seed << ": " << trace.rows.size()
              << " research steps, final error " << last.err_norm << " m, ";
    if (steps)
      std::cout << "converged in " << *steps << " steps";
    else
      std::cout << "not converged (<= " << crit.threshold << " m for "
                << crit.window << " steps)";
    std::cout << "\ntrace: " << trace_path.string() << "\n";
    return 0;
  }

  artva::SimConfig config = artva::load_config(mc_config_path);
  const std::uint64_t base_seed = mc_seed ? *mc_seed : config.seed;
  const std::vector<artva::Mode> modes = parse_modes(mc_modes);
  const artva::ConvergenceCriterion crit = mc_crit.resolve();

  const auto dir = prepare_out_dir(mc_out);
  const artva::McSummary summary =
      artva::run_batch(config, mc_runs, base_seed, modes, crit, mc_threads);
  const auto summary_path = dir / "mc_summary.json";
  const auto boxplot_path = dir / "mc_boxplot.csv";
  artva::write_summary_json(summary, summary_path.string());
  artva::write_boxplot_csv(summary, boxplot_path.string());

  std::cout << artva::format_summary_table(summary);
  std::cout << "summary: " << summary_path.string() << "\n";
  std::cout << "boxplot: " << boxplot_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const artva::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const artva::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
