#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "artva/config.hpp"

namespace artva {

/// When a run counts as converged: the estimate error must stay at or
/// below `threshold` for `window` consecutive research steps, within a
/// budget of `max_steps` research steps.
struct ConvergenceCriterion {
  double threshold = 2.0;          // [m]
  int window = 30;                 // consecutive research steps
  std::uint64_t max_steps = 10000;
};

/// Smallest s such that err_norms[t] <= threshold for all research steps
/// t in [s, s+window-1] (1-based indices into the sequence), reported as
/// s+window-1: the number of steps required to *know* the error is held.
/// Empty when no sustained window exists.
std::optional<std::uint64_t> convergence_step(
    const std::vector<double>& err_norms, const ConvergenceCriterion& crit);

/// Convergence statistics of one mode over a batch. Mean/stddev/quartiles
/// cover converged runs only; non-converged runs are counted separately.
/// Quartiles use linear interpolation; outliers follow the 1.5*IQR rule
/// and whiskers reach the most extreme non-outlier values.
struct ModeStats {
  Mode mode = Mode::Combined;
  int runs = 0;
  int converged = 0;
  int non_converged = 0;
  std::vector<std::optional<std::uint64_t>> steps;  // per run, by run index
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;
};

struct McSummary {
  std::uint64_t base_seed = 0;
  int runs = 0;
  ConvergenceCriterion criterion;
  std::vector<ModeStats> modes;
};

/// Convergence step of a single simulation. Steps are simulated only
/// until the criterion window first completes (stopping there cannot
/// change the answer), so converging runs cost far less than max_steps.
std::optional<std::uint64_t> run_convergence(const SimConfig& config,
                                             const ConvergenceCriterion& crit);

/// Aggregate per-run detections into the boxplot statistics.
ModeStats summarize_mode(Mode mode,
                         std::vector<std::optional<std::uint64_t>> steps);

/// Run `runs` independent simulations per mode, seeded base_seed +
/// run_index, and aggregate. Results are merged by run index, so the
/// summary does not depend on `threads` (0 = hardware concurrency).
McSummary run_batch(const SimConfig& config, int runs,
                    std::uint64_t base_seed, const std::vector<Mode>& modes,
                    const ConvergenceCriterion& crit, int threads = 0);

/// Machine-readable summary document (JSON, one record per mode with all
/// ModeStats fields). Throws IoError with path context.
void write_summary_json(const McSummary& summary, const std::string& path);
std::string summary_json(const McSummary& summary);
McSummary read_summary_json(const std::string& path);
McSummary parse_summary_json(const std::string& text);

/// Plot-ready boxplot data: one CSV row per mode with quartiles,
/// whiskers, mean and the outlier list.
void write_boxplot_csv(const McSummary& summary, const std::string& path);

/// Aligned human-readable table of the summary (for terminal output).
std::string format_summary_table(const McSummary& summary);

}  // namespace artva
