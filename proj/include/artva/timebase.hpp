#pragma once

#include <cstdint>

namespace artva {

/// Step counters: k is the global step index, t the research-step counter
/// and tau the inner estimator counter, reset every N steps.
/// All counters are 1-based; invariants t = ceil(k/N) and
/// tau = k - (t-1)*N hold throughout.
struct Timebase {
  std::uint64_t k = 1;
  std::uint64_t period = 1;  // N
  std::uint64_t t = 1;
  std::uint64_t tau = 1;

  static Timebase start(std::uint64_t period_n) { return {1, period_n, 1, 1}; }

  /// True on the last inner step of the current research step.
  bool at_period_end() const { return tau == period; }
};

/// k' = k+1; tau resets to 1 when k is a multiple of N, else increments;
/// t' = ceil(k'/N).
inline Timebase advance(const Timebase& tb) {
  Timebase next = tb;
  next.k = tb.k + 1;
  next.tau = (tb.k % tb.period == 0) ? 1 : tb.tau + 1;
  next.t = (next.k + tb.period - 1) / tb.period;
  return next;
}

}  // namespace artva
