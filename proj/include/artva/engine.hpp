#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "artva/config.hpp"
#include "artva/es_gradient.hpp"
#include "artva/field_model.hpp"
#include "artva/formation.hpp"
#include "artva/rng.hpp"
#include "artva/timebase.hpp"
#include "artva/tx_estimator.hpp"

namespace artva {

/// Everything recorded about one research step. Positions and directions
/// refer to the state the step actually used: `centroid` is the fleet
/// center the agents flew around during the step (before it moved), while
/// `p_hat` is the estimate produced at the end of the step.
struct TraceRow {
  std::uint64_t t = 0;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  Eigen::Vector3d p_hat = Eigen::Vector3d::Zero();
  Eigen::Vector3d error = Eigen::Vector3d::Zero();  // p_hat - true source
  double err_norm = 0.0;
  double dist_centroid = 0.0;  // |centroid - true source|
  double sigma = 0.0;          // raw blend weight sigma(t, N)
  double sigma_smooth = 0.0;   // exponential moving average of sigma
  bool reset_fallback = false;  // estimate re-anchor was degenerate
  std::vector<Eigen::Vector3d> bases;      // undithered agent positions
  std::vector<Eigen::Vector3d> positions;  // dithered agent positions
  std::vector<double> intensities;         // agent measurements
  std::vector<Eigen::Vector3d> grads;      // post-update gradient estimates
  std::vector<Eigen::Vector3d> bearings;   // regularized unit bearings
};

struct RunTrace {
  SimConfig config;  // echo of the configuration that produced the rows
  std::uint64_t seed = 0;
  std::vector<TraceRow> rows;
};

/// Per-agent simulation state: rigid formation offset, the gradient
/// estimator, and an independent noise stream.
struct AgentState {
  EsState es;
  RngStream rng{0};
};

/// Drives one full simulation: agents dither and measure the magnetic
/// intensity, each runs its gradient estimator, the shared source estimate
/// is refreshed from the resulting bearings, and the formation centroid
/// moves along a blend of the gradient-consensus and estimate-seeking
/// directions. All randomness derives from the config seed, so runs are
/// bit-reproducible.
class Engine {
 public:
  explicit Engine(const SimConfig& config);  // validates the config

  /// Research step index (1-based) the next call to research_step runs.
  std::uint64_t next_step() const { return timebase_.t; }

  /// Advance one research step (one measurement per agent, one estimator
  /// refresh, one centroid move) and report what happened.
  TraceRow research_step();

  /// Run research steps up to config.max_research_steps and collect rows.
  RunTrace run();

  const SimConfig& config() const { return config_; }
  const FormationState& formation() const { return formation_; }
  const EstimatorState& estimator() const { return estimator_; }
  const Timebase& timebase() const { return timebase_; }
  std::vector<AgentState>& agents() { return agents_; }
  const std::vector<AgentState>& agents() const { return agents_; }

 private:
  SimConfig config_;
  TxSource tx_;
  NoiseModel noise_;
  DitherParams dither_;
  FormationState formation_;
  EstimatorState estimator_;
  std::vector<AgentState> agents_;
  Timebase timebase_;
  double sigma_smooth_ = 0.0;
  bool first_step_done_ = false;
};

/// Convenience wrapper: construct an engine and run it to completion.
RunTrace run_simulation(const SimConfig& config);

/// Stream a trace as CSV: a fixed prefix
///   t,cx,cy,cz,ex,ey,ez,err_norm,dist_centroid,sigma
/// followed by per-agent groups (base, position, intensity, gradient,
/// bearing) and the trailing diagnostics sigma_smooth,reset_fallback.
/// Floating-point cells use nine significant digits.
void write_trace_csv(const RunTrace& trace, std::ostream& out);

/// Write the CSV to a file; throws IoError on failure.
void write_trace_csv(const RunTrace& trace, const std::string& path);

}  // namespace artva
