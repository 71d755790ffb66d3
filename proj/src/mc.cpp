#include "artva/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "artva/engine.hpp"
#include "artva/errors.hpp"

namespace artva {
namespace {

using Json = nlohmann::ordered_json;

/// Linear-interpolation quantile of a sorted sample.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted.front();
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - std::floor(h);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Json mode_json(const ModeStats& stats) {
  Json j;
  j["mode"] = mode_name(stats.mode);
  j["runs"] = stats.runs;
  j["converged"] = stats.converged;
  j["non_converged"] = stats.non_converged;
  Json steps = Json::array();
  for (const auto& s : stats.steps) {
    if (s) steps.push_back(*s);
    else steps.push_back(nullptr);
  }
  j["steps"] = std::move(steps);
  j["mean"] = stats.mean;
  j["stddev"] = stats.stddev;
  j["q1"] = stats.q1;
  j["median"] = stats.median;
  j["q3"] = stats.q3;
  j["whisker_low"] = stats.whisker_low;
  j["whisker_high"] = stats.whisker_high;
  j["outliers"] = stats.outliers;
  return j;
}

ModeStats mode_from_json(const Json& j) {
  ModeStats stats;
  const auto mode = parse_mode(j.at("mode").get<std::string>());
  if (!mode) throw IoError{"summary document: unknown mode name"};
  stats.mode = *mode;
  stats.runs = j.at("runs").get<int>();
  stats.converged = j.at("converged").get<int>();
  stats.non_converged = j.at("non_converged").get<int>();
  for (const auto& s : j.at("steps")) {
    if (s.is_null()) stats.steps.emplace_back(std::nullopt);
    else stats.steps.emplace_back(s.get<std::uint64_t>());
  }
  stats.mean = j.at("mean").get<double>();
  stats.stddev = j.at("stddev").get<double>();
  stats.q1 = j.at("q1").get<double>();
  stats.median = j.at("median").get<double>();
  stats.q3 = j.at("q3").get<double>();
  stats.whisker_low = j.at("whisker_low").get<double>();
  stats.whisker_high = j.at("whisker_high").get<double>();
  stats.outliers = j.at("outliers").get<std::vector<double>>();
  return stats;
}

}  // namespace

std::optional<std::uint64_t> convergence_step(
    const std::vector<double>& err_norms, const ConvergenceCriterion& crit) {
  int streak = 0;
  for (std::size_t i = 0; i < err_norms.size(); ++i) {
    if (err_norms[i] <= crit.threshold) {
      ++streak;
      if (streak >= crit.window) return static_cast<std::uint64_t>(i + 1);
    } else {
      streak = 0;
    }
  }
  return std::nullopt;
}

std::optional<std::uint64_t> run_convergence(
    const SimConfig& config, const ConvergenceCriterion& crit) {
  SimConfig run_config = config;
  run_config.max_research_steps = crit.max_steps;
  Engine engine{run_config};
  int streak = 0;
  for (std::uint64_t s = 1; s <= crit.max_steps; ++s) {
    const TraceRow row = engine.research_step();
    if (row.err_norm <= crit.threshold) {
      ++streak;
      if (streak >= crit.window) return s;
    } else {
      streak = 0;
    }
  }
  return std::nullopt;
}

ModeStats summarize_mode(Mode mode,
                         std::vector<std::optional<std::uint64_t>> steps) {
  ModeStats stats;
  stats.mode = mode;
  stats.runs = static_cast<int>(steps.size());
  stats.steps = std::move(steps);

  std::vector<double> converged;
  converged.reserve(stats.steps.size());
  for (const auto& s : stats.steps)
    if (s) converged.push_back(static_cast<double>(*s));
  stats.converged = static_cast<int>(converged.size());
  stats.non_converged = stats.runs - stats.converged;
  if (converged.empty()) return stats;

  double sum = 0.0;
  for (double v : converged) sum += v;
  stats.mean = sum / static_cast<double>(converged.size());
  if (converged.size() > 1) {
    double ss = 0.0;
    for (double v : converged) ss += (v - stats.mean) * (v - stats.mean);
    stats.stddev = std::sqrt(ss / static_cast<double>(converged.size() - 1));
  }

  std::sort(converged.begin(), converged.end());
  stats.q1 = quantile(converged, 0.25);
  stats.median = quantile(converged, 0.50);
  stats.q3 = quantile(converged, 0.75);
  const double iqr = stats.q3 - stats.q1;
  const double fence_low = stats.q1 - 1.5 * iqr;
  const double fence_high = stats.q3 + 1.5 * iqr;
  stats.whisker_low = stats.q3;
  stats.whisker_high = stats.q1;
  for (double v : converged) {
    if (v < fence_low || v > fence_high) {
      stats.outliers.push_back(v);
    } else {
      stats.whisker_low = std::min(stats.whisker_low, v);
      stats.whisker_high = std::max(stats.whisker_high, v);
    }
  }
  return stats;
}

McSummary run_batch(const SimConfig& config, int runs,
                    std::uint64_t base_seed, const std::vector<Mode>& modes,
                    const ConvergenceCriterion& crit, int threads) {
  if (runs < 1) throw ConfigError{"mc batch: runs must be >= 1"};
  if (modes.empty()) throw ConfigError{"mc batch: at least one mode required"};
  if (!(crit.threshold > 0.0))
    throw ConfigError{"mc batch: threshold must be positive"};
  if (crit.window < 1) throw ConfigError{"mc batch: window must be >= 1"};
  if (crit.max_steps < 1)
    throw ConfigError{"mc batch: max_steps must be >= 1"};
  validate(config);

  struct Job {
    std::size_t mode_index;
    int run_index;
  };
  std::vector<Job> jobs;
  jobs.reserve(modes.size() * static_cast<std::size_t>(runs));
  for (std::size_t m = 0; m < modes.size(); ++m)
    for (int r = 0; r < runs; ++r) jobs.push_back({m, r});

  std::vector<std::vector<std::optional<std::uint64_t>>> results(
      modes.size(),
      std::vector<std::optional<std::uint64_t>>(
          static_cast<std::size_t>(runs)));

  const auto worker_body = [&](std::atomic<std::size_t>& next) {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= jobs.size()) return;
      const Job job = jobs[idx];
      SimConfig run_config = config;
      run_config.mode = modes[job.mode_index];
      run_config.seed = base_seed + static_cast<std::uint64_t>(job.run_index);
      results[job.mode_index][static_cast<std::size_t>(job.run_index)] =
          run_convergence(run_config, crit);
    }
  };

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(
                               n_threads, static_cast<unsigned>(jobs.size())));
  std::atomic<std::size_t> next{0};
  if (n_threads == 1) {
    worker_body(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i)
      pool.emplace_back([&] { worker_body(next); });
    for (auto& th : pool) th.join();
  }

  McSummary summary;
  summary.base_seed = base_seed;
  summary.runs = runs;
  summary.criterion = crit;
  summary.modes.reserve(modes.size());
  for (std::size_t m = 0; m < modes.size(); ++m)
    summary.modes.push_back(summarize_mode(modes[m], std::move(results[m])));
  return summary;
}

std::string summary_json(const McSummary& summary) {
  if (summary.modes.empty())
    throw ConfigError{"mc summary: refusing to emit an empty batch"};
  Json j;
  j["base_seed"] = summary.base_seed;
  j["runs"] = summary.runs;
  j["criterion"] = {{"threshold", summary.criterion.threshold},
                    {"window", summary.criterion.window},
                    {"max_steps", summary.criterion.max_steps}};
  Json modes = Json::array();
  for (const auto& stats : summary.modes) modes.push_back(mode_json(stats));
  j["modes"] = std::move(modes);
  return j.dump(2) + "\n";
}

void write_summary_json(const McSummary& summary, const std::string& path) {
  const std::string text = summary_json(summary);
  std::ofstream out{path};
  if (!out) throw IoError{"cannot open summary file '" + path + "'"};
  out << text;
  out.flush();
  if (!out) throw IoError{"failed writing summary file '" + path + "'"};
}

McSummary parse_summary_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
    McSummary summary;
    summary.base_seed = j.at("base_seed").get<std::uint64_t>();
    summary.runs = j.at("runs").get<int>();
    summary.criterion.threshold =
        j.at("criterion").at("threshold").get<double>();
    summary.criterion.window = j.at("criterion").at("window").get<int>();
    summary.criterion.max_steps =
        j.at("criterion").at("max_steps").get<std::uint64_t>();
    for (const auto& m : j.at("modes")) summary.modes.push_back(mode_from_json(m));
    return summary;
  } catch (const Json::exception& e) {
    throw IoError{std::string{"summary document: "} + e.what()};
  }
}

McSummary read_summary_json(const std::string& path) {
  std::ifstream in{path};
  if (!in) throw IoError{"cannot open summary file '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError{"failed reading summary file '" + path + "'"};
  return parse_summary_json(buf.str());
}

void write_boxplot_csv(const McSummary& summary, const std::string& path) {
  if (summary.modes.empty())
    throw ConfigError{"mc summary: refusing to emit an empty batch"};
  std::ofstream out{path};
  if (!out) throw IoError{"cannot open boxplot file '" + path + "'"};
  out << "mode,runs,converged,non_converged,mean,stddev,q1,median,q3,"
         "whisker_low,whisker_high,outliers\n";
  for (const auto& stats : summary.modes) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g",
                  mode_name(stats.mode), stats.runs, stats.converged,
                  stats.non_converged, stats.mean, stats.stddev, stats.q1,
                  stats.median, stats.q3, stats.whisker_low,
                  stats.whisker_high);
    out << buf << ',';
    for (std::size_t i = 0; i < stats.outliers.size(); ++i) {
      if (i > 0) out << ';';
      char cell[32];
      std::snprintf(cell, sizeof cell, "%.9g", stats.outliers[i]);
      out << cell;
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError{"failed writing boxplot file '" + path + "'"};
}

std::string format_summary_table(const McSummary& summary) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-6s %6s %6s %10s %10s %10s %10s %10s %9s\n",
                "mode", "runs", "conv", "mean", "stddev", "q1", "median", "q3",
                "outliers");
  out << line;
  for (const auto& stats : summary.modes) {
    std::snprintf(line, sizeof line,
                  "%-6s %6d %6d %10.1f %10.1f %10.1f %10.1f %10.1f %9zu\n",
                  mode_name(stats.mode), stats.runs, stats.converged,
                  stats.mean, stats.stddev, stats.q1, stats.median, stats.q3,
                  stats.outliers.size());
    out << line;
  }
  return out.str();
}

}  // namespace artva
