#include "artva/formation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace artva {

double sigma_blend(const Eigen::VectorXd& b, const Eigen::VectorXd& f_val) {
  assert(b.size() == f_val.size() && b.size() % 3 == 0);
  return sigma_from_residual((b - f_val).norm(),
                             static_cast<int>(b.size() / 3));
}

double sigma_from_residual(double residual_norm, int n_agents) {
  const double sigma = residual_norm / (2.0 * std::sqrt(n_agents));
  return std::clamp(sigma, 0.0, 1.0);
}

FleetDirections fleet_directions(const std::vector<Eigen::Vector3d>& grads,
                                 const Eigen::Vector3d& p_hat,
                                 const Eigen::Vector3d& centroid,
                                 double eps_reg, double sign) {
  Eigen::Vector3d grad_sum = Eigen::Vector3d::Zero();
  for (const auto& g : grads) grad_sum += g;
  const Eigen::Vector3d to_estimate = p_hat - centroid;
  FleetDirections dirs;
  dirs.es = sign * grad_sum / std::sqrt(eps_reg + grad_sum.squaredNorm());
  dirs.ls = to_estimate / std::sqrt(eps_reg + to_estimate.squaredNorm());
  return dirs;
}

FormationState centroid_update(const FormationState& fs,
                               const Eigen::Vector3d& es_dir,
                               const Eigen::Vector3d& ls_dir, double sigma_n) {
  assert(sigma_n >= 0.0 && sigma_n <= 1.0);
  FormationState next = fs;
  next.centroid =
      fs.centroid + fs.gain * (sigma_n * es_dir + (1.0 - sigma_n) * ls_dir);
  next.sigma = sigma_n;
  return next;
}

std::vector<Eigen::Vector3d> agent_bases(const FormationState& fs) {
  std::vector<Eigen::Vector3d> bases;
  bases.reserve(fs.offsets.size());
  for (const auto& offset : fs.offsets) bases.push_back(offset + fs.centroid);
  return bases;
}

std::vector<Eigen::Vector3d> square_offsets(double edge) {
  const double half = edge / 2.0;
  return {{-half, -half, 0.0},
          {-half, half, 0.0},
          {half, -half, 0.0},
          {half, half, 0.0}};
}

}  // namespace artva
