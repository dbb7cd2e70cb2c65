#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <string>
#include <vector>

#include "cctf/metrics.hpp"
#include "cctf/rng.hpp"
#include "cctf/topology.hpp"

namespace cctf {

// What an interceptor does with a detected compromised router: bring it back
// after delta_interceptor ticks of downtime, or cut it off permanently.
enum class InterceptorMode { recover, isolate };

// Every model parameter plus run control. The attacker team is s scouts and
// N-s exploiters; the defender team is d detectors and N-d interceptors.
struct SimConfig {
  int n_routers = 30;
  int ba_m = 1;
  int team_size = 10;
  int scouts = 0;     // no single-run default; must be set explicitly
  int detectors = 0;  // no single-run default; must be set explicitly
  double vul_rate = 0.02;
  double p_scout = 1.0;
  double p_exploiter = 0.02;
  double p_det_vuln = -1.0;  // no single-run default; must be set explicitly
  double p_det_expl = -1.0;  // no single-run default; must be set explicitly
  int delta_interceptor = 10;
  int max_ticks = 1000;
  InterceptorMode interceptor_mode = InterceptorMode::recover;
  std::uint64_t seed = 0;

  int exploiters() const { return team_size - scouts; }
  int interceptors() const { return team_size - detectors; }

  // Throws std::invalid_argument naming the violated constraint
  // ("1 ≤ S < N", "1 ≤ d < N", probability ranges, ...).
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

struct RouterState {
  bool vulnerable = false;
  bool compromised = false;
  int recovery_remaining = 0;  // 0 = none; in [1, delta] while recovering
  int patch_remaining = 0;     // 0 = none; router stays online while patched

  bool operator==(const RouterState&) const = default;
};

enum class DetectReason : std::uint8_t { exploited, vulnerable };

struct DetectionEntry {
  RouterId router;
  DetectReason reason;

  bool operator==(const DetectionEntry&) const = default;
};

struct SimState {
  int tick = 0;
  std::vector<RouterState> routers;
  std::vector<RouterId> attacker_known;     // sorted; subset of vulnerable set
  std::deque<DetectionEntry> defender_queue;  // FIFO, no duplicate entries
  std::vector<int> interceptor_busy;        // remaining busy ticks, one per interceptor
  Rng rng;

  bool operator==(const SimState&) const = default;
};

// Per-tick event counts plus the network status sampled after the
// interceptor phase (before timers run), which is the accounting point for
// all metrics.
struct TickTrace {
  int tick = 0;
  int new_vulnerable = 0;
  int scout_detections = 0;  // routers newly added to attacker knowledge
  int exploits = 0;
  int detections = 0;        // entries newly queued for interceptors
  int interceptions = 0;     // interceptor actions started
  int compromised_count = 0;
  int offline_count = 0;
  double compromised_frac = 0.0;
  double offline_frac = 0.0;
  bool center_compromised = false;
  int known_vulnerable = 0;
  int queue_length = 0;
};

// A router is offline iff it is recovering or any ancestor on its parent
// chain toward the central router is. Returns one flag per router.
std::vector<std::uint8_t> offline_mask(const TopologyInfo& topo,
                                       const SimState& state);

// Routers an attacker can currently reach: every online peripheral router,
// every online compromised router, and every online neighbor of an online
// compromised router. Offline routers are never reachable and never act as
// stepping stones. Ascending order.
std::vector<RouterId> accessible_routers(const NetworkGraph& graph,
                                         const TopologyInfo& topo,
                                         const SimState& state);

// Fresh graph, topology and state for a run. The topology generator and the
// engine stream are seeded from config.seed xor fixed tags, each passed
// through mix64, so the two streams are unrelated.
// Throws std::invalid_argument on an invalid config.
void init_simulation(const SimConfig& config, NetworkGraph& graph,
                     TopologyInfo& topo, SimState& state);

// One tick, exactly these phases in order:
//   1. vulnerability generation  (online clean routers, ascending index)
//   2. scouts                    (pick from accessible set, broadcast finds)
//   3. exploiters                (pick from known-vulnerable set)
//   4. detectors                 (pick from online routers, queue finds)
//   5. interceptors              (pop oldest valid queue entry, start action)
//   -- metrics sample taken here --
//   6. timers                    (recovery / patch / busy countdowns, prune
//                                 stale attacker knowledge)
// All randomness comes from state.rng in phase order with agents and routers
// visited in ascending index, so a run is a pure function of its config.
TickTrace tick(SimState& state, const NetworkGraph& graph,
               const TopologyInfo& topo, const SimConfig& config);

// init + max_ticks ticks + finalized metrics. Optionally records the
// per-tick traces.
RunMetrics run_simulation(const SimConfig& config,
                          std::vector<TickTrace>* trace = nullptr);

// Convenience wrapper owning graph/topology/state, for stepping a run
// manually (tests, bindings, trace inspection).
class Simulation {
 public:
  explicit Simulation(const SimConfig& config);

  TickTrace step();
  RunMetrics finish();  // run remaining ticks, return finalized metrics

  const SimConfig& config() const { return config_; }
  const NetworkGraph& graph() const { return graph_; }
  const TopologyInfo& topology() const { return topo_; }
  const SimState& state() const { return state_; }
  bool done() const { return state_.tick >= config_.max_ticks; }

 private:
  SimConfig config_;
  NetworkGraph graph_;
  TopologyInfo topo_;
  SimState state_;
  MetricsAccumulator metrics_;
};

// CSV trace: header `tick,compromised_frac,offline_frac,known_vuln,queue_len`
// then one row per tick.
void write_trace_csv(std::ostream& out, const std::vector<TickTrace>& trace);

const char* to_string(InterceptorMode mode);

// Parses "recover" / "isolate"; throws std::invalid_argument otherwise.
InterceptorMode interceptor_mode_from_string(const std::string& text);

}  // namespace cctf
