#pragma once

#include <Eigen/Core>

#include "artva/rng.hpp"

namespace artva {

/// Below this TX-RX distance the dipole model is considered singular.
inline constexpr double kSingularityRadius = 1e-6;  // meters

/// The hidden transmitter: position, attitude and nominal power.
struct TxSource {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();       // p_T [m]
  Eigen::Matrix3d attitude = Eigen::Matrix3d::Identity();   // R_T
  double power = 1.0;                                       // Pi [W], > 0
};

/// One receiver pose. The receive antenna is isometric, so the attitude
/// never affects the intensity; it is kept for model fidelity.
struct RxPose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d attitude = Eigen::Matrix3d::Identity();
};

/// Bounded measurement noise, drawn per component uniformly on
/// [-amplitude_bound, +amplitude_bound], i.i.d. across components,
/// agents and steps (zero-mean, bounded, ergodic).
struct NoiseModel {
  double amplitude_bound = 0.0;  // nu_bar [T]

  Eigen::Vector3d draw(RngStream& rng) const {
    return amplitude_bound > 0.0 ? rng.uniform_box3(amplitude_bound)
                                 : Eigen::Vector3d::Zero();
  }
};

/// Scalar intensity reading plus the noisy field vector it came from.
struct Measurement {
  double intensity = 0.0;                          // y, always >= 0
  Eigen::Vector3d reading = Eigen::Vector3d::Zero();  // v [T]
};

/// R within tolerance of SO(3): R*R^T = I and det(R) = 1.
bool is_rotation(const Eigen::Matrix3d& r, double tol = 1e-12);

/// Anisotropy of the dipole pattern: m(p) = (2x^2-y^2-z^2, 3xy, 3xz).
/// Homogeneous of degree 2.
Eigen::Vector3d moment(const Eigen::Vector3d& p);

/// Magnetic dipole field at the receiver, expressed in the receiver frame:
///   h = Pi/(4 pi) * R_i * R_T^T * m(R_T (p_i - p_T)) / |p_i - p_T|^5.
/// Throws SingularField when the receiver sits within kSingularityRadius
/// of the source.
Eigen::Vector3d field_at(const TxSource& tx, const RxPose& rx);

/// Intensity of a (possibly noisy) field reading: y = |v|^(-2/3), with
/// y = 0 when |v| vanishes or exceeds 1/eps_machine. Zero-noise intensity
/// grows as distance^2 along any fixed ray from the source and tends to 0
/// at the source itself.
double intensity_of(const Eigen::Vector3d& reading);

/// One noisy intensity measurement: v = field_at(...) + noise draw.
Measurement measure(const TxSource& tx, const RxPose& rx,
                    const NoiseModel& noise, RngStream& rng);

}  // namespace artva
