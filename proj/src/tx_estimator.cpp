#include "artva/tx_estimator.hpp"

#include <cassert>
#include <cmath>

#include <Eigen/Dense>

namespace artva {

namespace {

/// Radial projection onto the closed ball of radius rho about the centroid.
Eigen::Vector3d clamp_to_ball(const Eigen::Vector3d& p,
                              const Eigen::Vector3d& centroid, double rho) {
  const Eigen::Vector3d offset = p - centroid;
  const double dist = offset.norm();
  if (dist > rho) {
    return centroid + offset * (rho / dist);
  }
  return p;
}

/// Solve the (possibly damped) normal equations and apply the constrained
/// Gauss-Newton step. Shared between ls_step and the inner loop so both
/// produce bit-identical iterates.
Eigen::Vector3d apply_step(const detail::NormalEq& ne,
                           const EstimatorState& state,
                           const Eigen::Vector3d& centroid) {
  Eigen::Matrix3d gram = ne.gram;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eigs;
  eigs.computeDirect(gram, Eigen::EigenvaluesOnly);
  const double lo = eigs.eigenvalues()(0);
  const double hi = eigs.eigenvalues()(2);
  if (lo < 1e-8 * hi) {
    gram += (1e-6 * gram.trace() / 3.0) * Eigen::Matrix3d::Identity();
  }
  const Eigen::Vector3d delta = state.beta * gram.ldlt().solve(ne.rhs);
  return clamp_to_ball(state.p_hat + delta, centroid, state.rho_hat);
}

}  // namespace

Eigen::VectorXd unit_stack(const Eigen::Vector3d& p,
                           const std::vector<Eigen::Vector3d>& bases,
                           double eps_reg) {
  Eigen::VectorXd stacked(3 * static_cast<int>(bases.size()));
  for (int i = 0; i < static_cast<int>(bases.size()); ++i) {
    const Eigen::Vector3d u = p - bases[i];
    stacked.segment<3>(3 * i) = u / std::sqrt(eps_reg + u.squaredNorm());
  }
  return stacked;
}

Eigen::Matrix3d projector(const Eigen::Vector3d& u, double eps_reg) {
  return Eigen::Matrix3d::Identity() -
         u * u.transpose() / (eps_reg + u.squaredNorm());
}

Eigen::MatrixXd jacobian(const Eigen::Vector3d& p_hat,
                         const std::vector<Eigen::Vector3d>& bases,
                         double eps_reg) {
  Eigen::MatrixXd jac(3 * static_cast<int>(bases.size()), 3);
  for (int i = 0; i < static_cast<int>(bases.size()); ++i) {
    const Eigen::Vector3d u = p_hat - bases[i];
    const double s = eps_reg + u.squaredNorm();
    jac.middleRows<3>(3 * i) = projector(u, eps_reg) / std::sqrt(s);
  }
  return jac;
}

std::optional<Eigen::Vector3d> ls_reset(const BearingSet& bearings,
                                        double eps_reg) {
  assert(bearings.bearings.size() == bearings.bases.size());
  Eigen::Matrix3d sum_pr = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (int i = 0; i < bearings.size(); ++i) {
    const Eigen::Matrix3d pr = projector(bearings.bearings[i], eps_reg);
    sum_pr += pr;
    rhs += pr * bearings.bases[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eigs;
  eigs.computeDirect(sum_pr, Eigen::EigenvaluesOnly);
  const double lo = eigs.eigenvalues()(0);
  const double hi = eigs.eigenvalues()(2);
  if (!(lo > 0.0) || hi > kResetCondMax * lo) {
    return std::nullopt;  // near-collinear bearings
  }
  return sum_pr.ldlt().solve(rhs);
}

EstimatorState ls_step(const EstimatorState& state, const BearingSet& bearings,
                       const Eigen::Vector3d& centroid) {
  const detail::NormalEq ne =
      detail::normal_equations(state.p_hat, bearings, state.eps_reg);
  EstimatorState next = state;
  next.p_hat = apply_step(ne, state, centroid);
  return next;
}

EstimateTrace estimate_research_step(
    const BearingSet& bearings, const Eigen::Vector3d& centroid,
    const EstimatorState& prev, std::uint64_t period,
    const std::optional<Eigen::Vector3d>& first_step_direction) {
  EstimateTrace out;
  out.state = prev;
  out.residual_norms.reserve(period);

  std::optional<Eigen::Vector3d> reset = ls_reset(bearings, prev.eps_reg);
  if (reset.has_value()) {
    out.state.p_hat = *reset;
  } else {
    out.reset_fallback = true;
    out.state.p_hat = first_step_direction.has_value()
                          ? Eigen::Vector3d(centroid + prev.rho_hat *
                                                           *first_step_direction)
                          : prev.p_hat;
  }
  out.state.p_hat = clamp_to_ball(out.state.p_hat, centroid, prev.rho_hat);

  detail::NormalEq ne =
      detail::normal_equations(out.state.p_hat, bearings, prev.eps_reg);
  out.residual_norms.push_back(ne.residual_norm);
  for (std::uint64_t tau = 1; tau < period; ++tau) {
    out.state.p_hat = apply_step(ne, out.state, centroid);
    ne = detail::normal_equations(out.state.p_hat, bearings, prev.eps_reg);
    out.residual_norms.push_back(ne.residual_norm);
  }
  return out;
}

namespace detail {

NormalEq normal_equations(const Eigen::Vector3d& p, const BearingSet& bearings,
                          double eps_reg) {
  NormalEq ne;
  double res_sq = 0.0;
  for (int i = 0; i < bearings.size(); ++i) {
    const Eigen::Vector3d u = p - bearings.bases[i];
    const double s = eps_reg + u.squaredNorm();
    const double inv_sqrt_s = 1.0 / std::sqrt(s);
    const Eigen::Vector3d f_i = u * inv_sqrt_s;
    const Eigen::Vector3d r_i = bearings.bearings[i] - f_i;
    const Eigen::Matrix3d pr =
        Eigen::Matrix3d::Identity() - u * u.transpose() / s;
    ne.gram.noalias() += pr * pr / s;
    ne.rhs.noalias() += pr * r_i * inv_sqrt_s;
    res_sq += r_i.squaredNorm();
  }
  ne.residual_norm = std::sqrt(res_sq);
  return ne;
}

double residual_norm(const Eigen::Vector3d& p, const BearingSet& bearings,
                     double eps_reg) {
  double res_sq = 0.0;
  for (int i = 0; i < bearings.size(); ++i) {
    const Eigen::Vector3d u = p - bearings.bases[i];
    const Eigen::Vector3d f_i = u / std::sqrt(eps_reg + u.squaredNorm());
    res_sq += (bearings.bearings[i] - f_i).squaredNorm();
  }
  return std::sqrt(res_sq);
}

}  // namespace detail

}  // namespace artva
