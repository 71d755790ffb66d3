#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "artva/es_gradient.hpp"
#include "artva/field_model.hpp"

namespace artva {

/// Which direction feeds the centroid update.
enum class Mode { EsOnly, LsOnly, Combined };

/// Optional hard override of the blend in combined mode; used to check
/// that forcing sigma reproduces the single-mode controllers exactly.
enum class SigmaForce { None, Zero, One };

const char* mode_name(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

/// Full simulation configuration. Defaults reproduce the reference
/// scenario: four agents on a 10 m square centered at (25, 25) localising
/// a unit-power source at the origin.
struct SimConfig {
  int dimensions = 2;  // 2 restricts everything to the z = 0 plane
  Mode mode = Mode::Combined;
  SigmaForce sigma_force = SigmaForce::None;
  std::uint64_t seed = 1;

  int n_agents = 4;
  double formation_edge = 10.0;              // [m], used when offsets empty
  std::vector<Eigen::Vector3d> offsets;      // zero-mean rigid offsets [m]
  Eigen::Vector3d centroid_init{25.0, 25.0, 0.0};

  Eigen::Vector3d tx_position{0.0, 0.0, 0.0};
  Eigen::Vector3d tx_attitude_rpy_deg{0.0, 0.0, 0.0};  // roll, pitch, yaw
  double tx_power = 1.0;       // [W]
  double noise_bound = 1e-5;   // [T], per-component uniform bound

  double delta = 2.0;                  // dither amplitude [m]
  double omega = 1.5707963267948966;   // dither pulsation [rad/step]
  std::optional<double> kappa;         // default 0 planar, 0.7 in 3-D
  double alpha = 1e-2;                 // ES filter gain
  double beta = 0.5;                   // estimator step size
  double gamma = 1e-2;                 // formation gain [m/step]
  double rho_hat = 50.0;               // estimate constraint radius [m]
  double eps_reg = 1e-6;               // shared normalisation regularizer
  std::uint64_t period = 200;          // N, inner iterations per research step
  std::uint64_t max_research_steps = 10000;
  double grad_init_std = 3.1622776601683794e-3;  // std of Gaussian initial grad
  double bearing_sign = -1.0;  // -1: bearings point toward the source

  std::vector<Eigen::Vector3d> resolved_offsets() const;
  double resolved_kappa() const;
  TxSource tx_source() const;
  DitherParams dither_params() const;
};

/// Roll-pitch-yaw (degrees, applied x-y-z extrinsic) to rotation matrix.
Eigen::Matrix3d rotation_from_rpy_deg(const Eigen::Vector3d& rpy_deg);

/// Throws ConfigError naming the offending field.
void validate(const SimConfig& config);

/// Parse the flat key = value schema (one key per field, '#' comments,
/// unknown keys rejected). Throws ConfigError.
SimConfig parse_config_text(const std::string& text);

/// Load and parse a config file. Throws IoError / ConfigError.
SimConfig load_config(const std::string& path);

/// Canonical textual echo of a config; parse_config_text round-trips it.
std::string format_config(const SimConfig& config);

}  // namespace artva
