#include "artva/rng.hpp"

#include <cmath>
#include <numbers>

namespace artva {

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream_id) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 0.0) u1 = uniform();  // guard log(0)
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Eigen::Vector3d RngStream::uniform_box3(double bound) {
  const double x = uniform(-bound, bound);
  const double y = uniform(-bound, bound);
  const double z = uniform(-bound, bound);
  return {x, y, z};
}

Eigen::Vector3d RngStream::normal3(double std_dev) {
  const double x = normal();
  const double y = normal();
  const double z = normal();
  return Eigen::Vector3d{x, y, z} * std_dev;
}

}  // namespace artva
