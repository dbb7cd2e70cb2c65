#include "cctf/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cctf {

MetricsAccumulator::MetricsAccumulator(int n_routers) : n_(n_routers) {
  if (n_routers < 1) {
    throw std::invalid_argument("MetricsAccumulator: n_routers must be >= 1");
  }
}

void MetricsAccumulator::record_tick(int compromised_count, int offline_count,
                                     bool center_is_compromised) {
  if (compromised_count < 0 || compromised_count > n_ || offline_count < 0 ||
      offline_count > n_) {
    throw std::invalid_argument(
        "record_tick: counts must be within [0, n]; got compromised=" +
        std::to_string(compromised_count) +
        ", offline=" + std::to_string(offline_count) +
        ", n=" + std::to_string(n_));
  }
  ++ticks_;
  sum_compromised_ += compromised_count;
  sum_offline_ += offline_count;
  max_compromised_ = std::max(max_compromised_, compromised_count);
  max_offline_ = std::max(max_offline_, offline_count);
  // Strict "> 2/3" as an integer comparison; 20/30 must not latch, 21/30 must.
  if (3 * static_cast<std::int64_t>(compromised_count) >
      2 * static_cast<std::int64_t>(n_)) {
    two_thirds_ = true;
  }
  if (compromised_count == n_) full_ = true;
  if (center_is_compromised) center_ = true;
}

RunMetrics MetricsAccumulator::finalize() const {
  if (ticks_ == 0) {
    throw std::logic_error("finalize: no ticks recorded");
  }
  RunMetrics out;
  const double denom = static_cast<double>(ticks_) * n_;
  out.mean_compromised = static_cast<double>(sum_compromised_) / denom;
  out.mean_offline = static_cast<double>(sum_offline_) / denom;
  out.max_compromised = static_cast<double>(max_compromised_) / n_;
  out.max_offline = static_cast<double>(max_offline_) / n_;
  out.two_thirds_breached = two_thirds_;
  out.full_network_breached = full_;
  out.center_compromised = center_;
  out.ticks_run = ticks_;
  return out;
}

}  // namespace cctf
