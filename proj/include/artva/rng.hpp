#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace artva {

/// Mixes a master seed with a stream id into an independent stream seed
/// (splitmix64 finalizer). Used to give every agent its own noise stream
/// so draws do not depend on agent iteration order.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream_id);

/// Seeded random stream with platform-independent output mappings.
/// std::mt19937_64 is fully specified by the standard; the uniform/normal
/// mappings below avoid std::*_distribution, whose output is
/// implementation-defined and would break trace reproducibility across
/// toolchains.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (pairs generated, one cached).
  double normal();

  /// Per-component uniform draw on [-bound, bound]^3.
  Eigen::Vector3d uniform_box3(double bound);

  /// Standard normal 3-vector scaled by std.
  Eigen::Vector3d normal3(double std_dev);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace artva
