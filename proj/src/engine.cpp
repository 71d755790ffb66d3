#include "artva/engine.hpp"

#include <cassert>
#include <utility>

namespace artva {
namespace {

// Weight of the newest sigma sample in the smoothed diagnostic series.
constexpr double kSigmaEmaWeight = 0.1;

}  // namespace

Engine::Engine(const SimConfig& config) : config_(config) {
  validate(config_);
  tx_ = config_.tx_source();
  noise_ = NoiseModel{config_.noise_bound};
  dither_ = config_.dither_params();

  formation_.centroid = config_.centroid_init;
  formation_.offsets = config_.resolved_offsets();
  formation_.gain = config_.gamma;
  formation_.sigma = 0.0;

  estimator_.p_hat = config_.centroid_init;
  estimator_.beta = config_.beta;
  estimator_.rho_hat = config_.rho_hat;
  estimator_.eps_reg = config_.eps_reg;

  timebase_ = Timebase::start(config_.period);

  const auto bases = agent_bases(formation_);
  agents_.reserve(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    AgentState agent;
    agent.rng = RngStream{derive_stream_seed(config_.seed, i)};
    agent.es.alpha = config_.alpha;
    agent.es.grad_hat = agent.rng.normal3(config_.grad_init_std);
    if (config_.dimensions == 2) agent.es.grad_hat.z() = 0.0;
    // Seed the high-pass state with an intensity sample at the agent's
    // first dithered position, so the filter starts at the working
    // intensity level instead of ramping up from zero.
    const Eigen::Vector3d p0 = agent_position(bases[i], dither_, 1);
    agent.es.z =
        measure(tx_, RxPose{p0, Eigen::Matrix3d::Identity()}, noise_,
                agent.rng)
            .intensity;
    agents_.push_back(std::move(agent));
  }
}

TraceRow Engine::research_step() {
  assert(timebase_.tau == 1);
  const std::uint64_t t = timebase_.t;
  const int n = static_cast<int>(agents_.size());

  TraceRow row;
  row.t = t;
  row.centroid = formation_.centroid;
  row.bases = agent_bases(formation_);
  row.positions.resize(n);
  row.intensities.resize(n);
  row.grads.resize(n);
  row.bearings.resize(n);

  // (1)-(4): dither, measure, filter, bearing -- once per agent.
  const Eigen::Vector3d probe = dither(dither_, t);
  for (int i = 0; i < n; ++i) {
    auto& agent = agents_[static_cast<std::size_t>(i)];
    const Eigen::Vector3d pos = agent_position(row.bases[i], dither_, t);
    const Measurement m = measure(
        tx_, RxPose{pos, Eigen::Matrix3d::Identity()}, noise_, agent.rng);
    agent.es = es_update(agent.es, m.intensity, probe);
    row.positions[i] = pos;
    row.intensities[i] = m.intensity;
    row.grads[i] = agent.es.grad_hat;
    row.bearings[i] =
        bearing(agent.es.grad_hat, config_.eps_reg, config_.bearing_sign);
  }

  // (5): refresh the shared source estimate. On the very first research
  // step a degenerate reset falls back to a point at rho_hat along the
  // fleet gradient-consensus direction; afterwards it falls back to the
  // previous estimate.
  const FleetDirections pre = fleet_directions(
      row.grads, estimator_.p_hat, formation_.centroid, config_.eps_reg,
      config_.bearing_sign);
  std::optional<Eigen::Vector3d> first_dir;
  if (!first_step_done_) first_dir = pre.es;
  const BearingSet bearings{row.bearings, row.bases};
  const EstimateTrace est = estimate_research_step(
      bearings, formation_.centroid, estimator_, config_.period, first_dir);
  estimator_ = est.state;
  row.p_hat = estimator_.p_hat;
  row.reset_fallback = est.reset_fallback;

  // (6): reliability blend from the final inner-loop residual.
  const double sigma_raw = sigma_from_residual(est.residual_norms.back(), n);
  row.sigma = sigma_raw;
  double sigma_eff = sigma_raw;
  switch (config_.mode) {
    case Mode::EsOnly: sigma_eff = 1.0; break;
    case Mode::LsOnly: sigma_eff = 0.0; break;
    case Mode::Combined:
      if (config_.sigma_force == SigmaForce::Zero) sigma_eff = 0.0;
      if (config_.sigma_force == SigmaForce::One) sigma_eff = 1.0;
      break;
  }

  // (7): move the centroid along the blended direction. The LS direction
  // uses the estimate just produced.
  const FleetDirections dirs = fleet_directions(
      row.grads, estimator_.p_hat, formation_.centroid, config_.eps_reg,
      config_.bearing_sign);
  formation_ = centroid_update(formation_, dirs.es, dirs.ls, sigma_eff);

  sigma_smooth_ = first_step_done_
                      ? (1.0 - kSigmaEmaWeight) * sigma_smooth_ +
                            kSigmaEmaWeight * sigma_raw
                      : sigma_raw;
  row.sigma_smooth = sigma_smooth_;
  first_step_done_ = true;

  row.error = row.p_hat - tx_.position;
  row.err_norm = row.error.norm();
  row.dist_centroid = (row.centroid - tx_.position).norm();

  // (9): the research step spans N clock ticks.
  for (std::uint64_t i = 0; i < config_.period; ++i)
    timebase_ = advance(timebase_);
  return row;
}

RunTrace Engine::run() {
  RunTrace trace;
  trace.config = config_;
  trace.seed = config_.seed;
  trace.rows.reserve(config_.max_research_steps);
  for (std::uint64_t s = 0; s < config_.max_research_steps; ++s)
    trace.rows.push_back(research_step());
  return trace;
}

RunTrace run_simulation(const SimConfig& config) {
  Engine engine{config};
  return engine.run();
}

}  // namespace artva
