#pragma once

#include <Eigen/Core>

namespace artva {

/// Dither signal parameters. omega must lie in (0, 2*pi/3] and kappa in
/// [0, 1) so the third-axis probe stays below the planar probe frequency.
struct DitherParams {
  double amplitude = 2.0;  // delta [m]
  double omega = 1.5707963267948966;  // pulsation [rad/step], default pi/2
  double kappa = 0.0;      // third-axis frequency ratio
  bool planar = true;      // force the third dither component to 0
};

/// Per-agent extremum-seeking state: the low-passed gradient estimate and
/// the high-pass filter tracking the DC component of the intensity.
struct EsState {
  Eigen::Vector3d grad_hat = Eigen::Vector3d::Zero();  // intensity units / m
  double z = 0.0;          // high-pass state, intensity units
  double alpha = 1e-2;     // filter gain, in (0, 1)
};

/// Probe direction at research step t:
///   Gamma(omega t) = (sin(omega t), cos(omega t), sin(kappa omega t)),
/// third component forced to 0 in planar mode. The first two components
/// always have unit norm jointly.
Eigen::Vector3d dither(const DitherParams& params, std::uint64_t t);

/// Controlled agent position: base + amplitude * dither(t).
Eigen::Vector3d agent_position(const Eigen::Vector3d& base,
                               const DitherParams& params, std::uint64_t t);

/// One extremum-seeking update from intensity sample y and the dither
/// value used to collect it:
///   eps      = y - z                      (high-pass output)
///   grad_hat' = (1-alpha) grad_hat + alpha * eps * gamma
///   z'       = z + alpha * eps
/// eps uses the pre-update z; the order is load-bearing.
EsState es_update(const EsState& s, double y, const Eigen::Vector3d& gamma);

/// Regularised unit-capped bearing: sign * g / sqrt(eps_reg + |g|^2).
/// Always |b| < 1. The intensity is minimised at the source, so its raw
/// gradient points away from it; sign = -1 turns the bearing toward the
/// source (the convention the estimator and the fleet rely on), sign = +1
/// keeps the raw gradient direction.
Eigen::Vector3d bearing(const Eigen::Vector3d& grad_hat, double eps_reg,
                        double sign);

}  // namespace artva
