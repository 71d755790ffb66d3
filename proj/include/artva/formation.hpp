#pragma once

#include <vector>

#include <Eigen/Core>

namespace artva {

/// Rigid-formation state. Offsets are constant over the whole run and must
/// average to zero so the centroid stays the mean of the agent bases.
struct FormationState {
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();  // p_bar_c [m]
  std::vector<Eigen::Vector3d> offsets;                // p_ib [m], zero-mean
  double gain = 1e-2;   // gamma [m/step]
  double sigma = 0.0;   // last blend value, in [0, 1]
};

/// ES- and LS-based directions the centroid can be steered along.
struct FleetDirections {
  Eigen::Vector3d es = Eigen::Vector3d::Zero();
  Eigen::Vector3d ls = Eigen::Vector3d::Zero();
};

/// Reliability blend sigma = |b - f_val| / (2 sqrt(n)), clamped to [0, 1].
/// 0 means the TX estimate fits the bearings exactly, 1 means it is
/// totally unreliable (antipodal residual).
double sigma_blend(const Eigen::VectorXd& b, const Eigen::VectorXd& f_val);

/// Same blend computed from an already-known residual norm (the inner
/// loop records it per iteration, so no re-evaluation is needed).
double sigma_from_residual(double residual_norm, int n_agents);

/// ES direction: sign * sum_i grad_i, unit-capped; LS direction:
/// p_hat - centroid, unit-capped. Both use the shared regularizer.
FleetDirections fleet_directions(const std::vector<Eigen::Vector3d>& grads,
                                 const Eigen::Vector3d& p_hat,
                                 const Eigen::Vector3d& centroid,
                                 double eps_reg, double sign);

/// Move the centroid one research step along the blended direction:
///   centroid' = centroid + gain * (sigma * es + (1 - sigma) * ls).
/// The step length never exceeds the gain.
FormationState centroid_update(const FormationState& fs,
                               const Eigen::Vector3d& es_dir,
                               const Eigen::Vector3d& ls_dir, double sigma_n);

/// base_i = offset_i + centroid for every agent.
std::vector<Eigen::Vector3d> agent_bases(const FormationState& fs);

/// Zero-mean offsets at the corners of an edge-length`edge` square in the
/// x-y plane (the default four-agent formation).
std::vector<Eigen::Vector3d> square_offsets(double edge);

}  // namespace artva
