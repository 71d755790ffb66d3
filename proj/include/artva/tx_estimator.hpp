#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace artva {

/// Condition-number ceiling for the closed-form reset solve.
inline constexpr double kResetCondMax = 1e8;

/// Centralized TX-position estimate plus the knobs of the recursive
/// Gauss-Newton scheme. After every update |p_hat - centroid| <= rho_hat.
struct EstimatorState {
  Eigen::Vector3d p_hat = Eigen::Vector3d::Zero();  // [m]
  double beta = 0.5;      // step size
  double rho_hat = 50.0;  // constraint-ball radius [m]
  double eps_reg = 1e-6;  // shared normalisation regularizer
};

/// Bearings with the base positions they were taken from. Blocks are
/// unit-capped (|b_i| < 1); at least two agents are required for the
/// estimate to be well posed.
struct BearingSet {
  std::vector<Eigen::Vector3d> bearings;
  std::vector<Eigen::Vector3d> bases;

  int size() const { return static_cast<int>(bearings.size()); }
};

/// Result of one research step of the estimator: final state plus the
/// per-iteration residual norms |b - f(p_hat(tau))| for tau = 1..N. The
/// last entry feeds the reliability blend without recomputation.
struct EstimateTrace {
  EstimatorState state;
  std::vector<double> residual_norms;
  bool reset_fallback = false;
};

/// Stacked regularised unit vectors from each base toward p:
///   f(p) = col( (p - base_i) / sqrt(eps_reg + |p - base_i|^2) ).
Eigen::VectorXd unit_stack(const Eigen::Vector3d& p,
                           const std::vector<Eigen::Vector3d>& bases,
                           double eps_reg);

/// Pr(u) = I - u u^T / (eps_reg + |u|^2). Symmetric, eigenvalues in
/// [eps_reg/(eps_reg+|u|^2), 1]; the orthogonal projector onto u's
/// complement in the eps_reg -> 0 limit.
Eigen::Matrix3d projector(const Eigen::Vector3d& u, double eps_reg);

/// Jacobian of unit_stack at p_hat: the i-th 3x3 block is
/// (eps_reg + |p_hat - base_i|^2)^(-1/2) * Pr(p_hat - base_i).
Eigen::MatrixXd jacobian(const Eigen::Vector3d& p_hat,
                         const std::vector<Eigen::Vector3d>& bases,
                         double eps_reg);

/// Closed-form estimation reset: the point minimising the sum of squared
/// distances to the lines base_i + b_i * v,
///   p0 = (sum_i Pr(b_i))^-1 sum_i Pr(b_i) base_i.
/// Returns nullopt when the projector sum is ill-conditioned
/// (near-collinear bearings); callers fall back to the previous estimate
/// or, on the first research step, to centroid + rho_hat * es_direction.
std::optional<Eigen::Vector3d> ls_reset(const BearingSet& bearings,
                                        double eps_reg);

/// One damped Gauss-Newton iteration on the unit-vector residual:
///   delta = beta * F(p_hat)^dagger (b - f(p_hat)),
/// realised through the 3x3 normal equations with Tikhonov damping when
/// they degenerate, followed by radial projection onto the ball of radius
/// rho_hat around the centroid.
EstimatorState ls_step(const EstimatorState& state, const BearingSet& bearings,
                       const Eigen::Vector3d& centroid);

/// Full inner loop of one research step: closed-form reset (with fallback),
/// radial clamp, then period-1 Gauss-Newton iterations. Never throws on
/// degenerate input; degeneracy is reported through reset_fallback.
EstimateTrace estimate_research_step(
    const BearingSet& bearings, const Eigen::Vector3d& centroid,
    const EstimatorState& prev, std::uint64_t period,
    const std::optional<Eigen::Vector3d>& first_step_direction = std::nullopt);

namespace detail {

/// F^T F, F^T (b - f(p)) and |b - f(p)| accumulated block-wise in one pass.
struct NormalEq {
  Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  double residual_norm = 0.0;
};

NormalEq normal_equations(const Eigen::Vector3d& p, const BearingSet& bearings,
                          double eps_reg);

/// |b - f(p)| only.
double residual_norm(const Eigen::Vector3d& p, const BearingSet& bearings,
                     double eps_reg);

}  // namespace detail

}  // namespace artva
