#include "artva/es_gradient.hpp"

#include <cmath>

namespace artva {

Eigen::Vector3d dither(const DitherParams& params, std::uint64_t t) {
  const double phase = params.omega * static_cast<double>(t);
  const double third =
      params.planar ? 0.0 : std::sin(params.kappa * phase);
  return {std::sin(phase), std::cos(phase), third};
}

Eigen::Vector3d agent_position(const Eigen::Vector3d& base,
                               const DitherParams& params, std::uint64_t t) {
  return base + params.amplitude * dither(params, t);
}

EsState es_update(const EsState& s, double y, const Eigen::Vector3d& gamma) {
  const double eps = y - s.z;
  EsState next = s;
  next.grad_hat = (1.0 - s.alpha) * s.grad_hat + s.alpha * eps * gamma;
  next.z = s.z + s.alpha * eps;
  return next;
}

Eigen::Vector3d bearing(const Eigen::Vector3d& grad_hat, double eps_reg,
                        double sign) {
  return sign * grad_hat / std::sqrt(eps_reg + grad_hat.squaredNorm());
}

}  // namespace artva
