#pragma once

#include <cstdint>

namespace cctf {

// The per-run outcome values. Fractions are of the router count; the
// booleans are monotone latches over the whole run.
struct RunMetrics {
  double mean_compromised = 0.0;
  double max_compromised = 0.0;
  double mean_offline = 0.0;
  double max_offline = 0.0;
  bool two_thirds_breached = false;    // max compromised fraction strictly > 2/3
  bool full_network_breached = false;  // every router compromised at once
  bool center_compromised = false;     // central router ever compromised
  int ticks_run = 0;

  bool operator==(const RunMetrics&) const = default;
};

// Accumulates one sample per tick. Counts are kept as integers so the
// latches are exact at the 2/3 boundary (3*count > 2*n, no float rounding);
// fractions only materialize in finalize().
class MetricsAccumulator {
 public:
  explicit MetricsAccumulator(int n_routers);

  // One sample, taken after interceptor actions and before timer decrement,
  // so a router stops counting as compromised in the tick its recovery
  // starts. Throws std::invalid_argument if a count is outside [0, n].
  void record_tick(int compromised_count, int offline_count,
                   bool center_is_compromised);

  // Throws std::logic_error if no ticks were recorded.
  RunMetrics finalize() const;

  int ticks() const { return ticks_; }

 private:
  int n_;
  int ticks_ = 0;
  std::int64_t sum_compromised_ = 0;
  std::int64_t sum_offline_ = 0;
  int max_compromised_ = 0;
  int max_offline_ = 0;
  bool two_thirds_ = false;
  bool full_ = false;
  bool center_ = false;
};

}  // namespace cctf
