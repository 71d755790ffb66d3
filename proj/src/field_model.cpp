#include "artva/field_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "artva/errors.hpp"

namespace artva {

bool is_rotation(const Eigen::Matrix3d& r, double tol) {
  const Eigen::Matrix3d gram = r * r.transpose();
  return (gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(r.determinant() - 1.0) <= tol;
}

Eigen::Vector3d moment(const Eigen::Vector3d& p) {
  const double x = p.x(), y = p.y(), z = p.z();
  return {2.0 * x * x - y * y - z * z, 3.0 * x * y, 3.0 * x * z};
}

Eigen::Vector3d field_at(const TxSource& tx, const RxPose& rx) {
  const Eigen::Vector3d offset = rx.position - tx.position;
  const double dist = offset.norm();
  if (dist <= kSingularityRadius) {
    std::ostringstream msg;
    msg << "field evaluation " << dist << " m from the source (singular below "
        << kSingularityRadius << " m)";
    throw SingularField(msg.str());
  }
  const Eigen::Vector3d local = tx.attitude * offset;
  const double d5 = dist * dist * dist * dist * dist;
  return tx.power / (4.0 * std::numbers::pi) * rx.attitude *
         (tx.attitude.transpose() * moment(local)) / d5;
}

double intensity_of(const Eigen::Vector3d& reading) {
  const double norm = reading.norm();
  // |v| = 0 would send |v|^(-2/3) to infinity; cap at 0, consistent with the
  // zero intensity limit at the source. Gigantic |v| underflows to ~0 anyway.
  if (norm == 0.0 || norm > 1.0 / std::numeric_limits<double>::epsilon()) {
    return 0.0;
  }
  return std::pow(norm, -2.0 / 3.0);
}

Measurement measure(const TxSource& tx, const RxPose& rx,
                    const NoiseModel& noise, RngStream& rng) {
  Measurement out;
  out.reading = field_at(tx, rx) + noise.draw(rng);
  out.intensity = intensity_of(out.reading);
  return out;
}

}  // namespace artva
