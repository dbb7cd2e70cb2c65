#include "cctf/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cctf {

namespace {

// Seed tags keeping the topology and engine streams unrelated even though
// both derive from the one config seed. Arbitrary fixed constants.
constexpr std::uint64_t kTopologySeedTag = 0x746F706F6C6F6779ULL;
constexpr std::uint64_t kEngineSeedTag = 0x656E67696E652D31ULL;

bool is_online(const std::vector<std::uint8_t>& offline, RouterId r) {
  return offline[r] == 0;
}

}  // namespace

void SimConfig::validate() const {
  if (n_routers < 2) {
    throw std::invalid_argument("n_routers: must be >= 2, got " +
                                std::to_string(n_routers));
  }
  if (ba_m < 1 || ba_m >= n_routers) {
    throw std::invalid_argument("ba_m: must satisfy 1 <= m < n_routers, got " +
                                std::to_string(ba_m));
  }
  if (team_size < 2) {
    throw std::invalid_argument("team_size: must be >= 2, got " +
                                std::to_string(team_size));
  }
  if (scouts < 1 || scouts >= team_size) {
    throw std::invalid_argument(
        "scouts: 1 ≤ S < N violated (scouts=" + std::to_string(scouts) +
        ", team_size=" + std::to_string(team_size) + ")");
  }
  if (detectors < 1 || detectors >= team_size) {
    throw std::invalid_argument(
        "detectors: 1 ≤ d < N violated (detectors=" +
        std::to_string(detectors) + ", team_size=" + std::to_string(team_size) +
        ")");
  }
  auto check_prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(std::string(name) +
                                  ": probability must be in [0, 1], got " +
                                  std::to_string(p));
    }
  };
  check_prob(vul_rate, "vul_rate");
  check_prob(p_scout, "p_scout");
  check_prob(p_exploiter, "p_exploiter");
  check_prob(p_det_vuln, "p_det_vuln");
  check_prob(p_det_expl, "p_det_expl");
  if (delta_interceptor < 1) {
    throw std::invalid_argument("delta_interceptor: must be >= 1, got " +
                                std::to_string(delta_interceptor));
  }
  if (max_ticks < 1) {
    throw std::invalid_argument("max_ticks: must be >= 1, got " +
                                std::to_string(max_ticks));
  }
}

std::vector<std::uint8_t> offline_mask(const TopologyInfo& topo,
                                       const SimState& state) {
  const std::size_t n = state.routers.size();
  std::vector<std::uint8_t> offline(n, 0);
  // bfs_order visits parents before children, so one pass settles the
  // whole ancestor chain.
  for (RouterId r : topo.bfs_order) {
    const bool own = state.routers[r].recovery_remaining > 0;
    const bool inherited = topo.parent[r] >= 0 && offline[topo.parent[r]] != 0;
    offline[r] = (own || inherited) ? 1 : 0;
  }
  return offline;
}

std::vector<RouterId> accessible_routers(const NetworkGraph& graph,
                                         const TopologyInfo& topo,
                                         const SimState& state) {
  const auto offline = offline_mask(topo, state);
  std::vector<std::uint8_t> accessible(graph.n, 0);
  for (RouterId p : topo.peripheral) {
    if (is_online(offline, p)) accessible[p] = 1;
  }
  for (RouterId r = 0; r < graph.n; ++r) {
    if (!state.routers[r].compromised || !is_online(offline, r)) continue;
    accessible[r] = 1;
    for (RouterId neighbor : graph.adjacency[r]) {
      if (is_online(offline, neighbor)) accessible[neighbor] = 1;
    }
  }
  std::vector<RouterId> result;
  for (RouterId r = 0; r < graph.n; ++r) {
    if (accessible[r]) result.push_back(r);
  }
  return result;
}

void init_simulation(const SimConfig& config, NetworkGraph& graph,
                     TopologyInfo& topo, SimState& state) {
  config.validate();
  graph = generate_scale_free(config.n_routers, config.ba_m,
                              config.seed ^ kTopologySeedTag);
  topo = derive_topology(graph);
  state = SimState{};
  state.routers.assign(config.n_routers, RouterState{});
  state.interceptor_busy.assign(config.interceptors(), 0);
  state.rng = Rng(config.seed ^ kEngineSeedTag);
}

TickTrace tick(SimState& state, const NetworkGraph& graph,
               const TopologyInfo& topo, const SimConfig& config) {
  TickTrace trace;
  trace.tick = state.tick;
  auto& routers = state.routers;
  auto& rng = state.rng;

  // Nothing between the end of the previous tick and phase 5 changes the
  // recovery set, so this mask serves phases 1-4.
  auto offline = offline_mask(topo, state);

  // Phase 1: vulnerability generation.
  for (RouterId r = 0; r < graph.n; ++r) {
    if (!is_online(offline, r) || routers[r].vulnerable ||
        routers[r].compromised) {
      continue;
    }
    if (rng.bernoulli(config.vul_rate)) {
      routers[r].vulnerable = true;
      ++trace.new_vulnerable;
    }
  }

  // Phase 2: scouts. Every find is broadcast to the whole attacker team.
  const auto accessible = accessible_routers(graph, topo, state);
  std::vector<std::uint8_t> accessible_flag(graph.n, 0);
  for (RouterId r : accessible) accessible_flag[r] = 1;

  for (int scout = 0; scout < config.scouts; ++scout) {
    if (accessible.empty()) break;
    const RouterId target = accessible[rng.next_below(accessible.size())];
    if (!routers[target].vulnerable || routers[target].compromised) continue;
    if (!rng.bernoulli(config.p_scout)) continue;
    auto pos = std::lower_bound(state.attacker_known.begin(),
                                state.attacker_known.end(), target);
    if (pos == state.attacker_known.end() || *pos != target) {
      state.attacker_known.insert(pos, target);
      ++trace.scout_detections;
    }
  }

  // Phase 3: exploiters. Eligible targets are the known-vulnerable routers
  // that are still accessible, still vulnerable and not yet compromised;
  // a success removes the router from the shared knowledge set.
  std::vector<RouterId> eligible;
  for (int exploiter = 0; exploiter < config.exploiters(); ++exploiter) {
    eligible.clear();
    for (RouterId r : state.attacker_known) {
      if (accessible_flag[r] && routers[r].vulnerable &&
          !routers[r].compromised) {
        eligible.push_back(r);
      }
    }
    if (eligible.empty()) continue;
    const RouterId target = eligible[rng.next_below(eligible.size())];
    if (rng.bernoulli(config.p_exploiter)) {
      routers[target].compromised = true;
      ++trace.exploits;
      auto pos = std::lower_bound(state.attacker_known.begin(),
                                  state.attacker_known.end(), target);
      state.attacker_known.erase(pos);
    }
  }

  // Phase 4: detectors scan the online network; finds join a shared FIFO
  // with no duplicate (router, reason) entries.
  std::vector<RouterId> online;
  online.reserve(graph.n);
  for (RouterId r = 0; r < graph.n; ++r) {
    if (is_online(offline, r)) online.push_back(r);
  }
  auto enqueue_once = [&state, &trace](RouterId r, DetectReason reason) {
    const DetectionEntry entry{r, reason};
    if (std::find(state.defender_queue.begin(), state.defender_queue.end(),
                  entry) == state.defender_queue.end()) {
      state.defender_queue.push_back(entry);
      ++trace.detections;
    }
  };
  for (int detector = 0; detector < config.detectors; ++detector) {
    if (online.empty()) break;
    const RouterId target = online[rng.next_below(online.size())];
    if (routers[target].compromised) {
      if (rng.bernoulli(config.p_det_expl)) {
        enqueue_once(target, DetectReason::exploited);
      }
    } else if (routers[target].vulnerable) {
      if (rng.bernoulli(config.p_det_vuln)) {
        enqueue_once(target, DetectReason::vulnerable);
      }
    }
  }

  // Phase 5: idle interceptors each pop the oldest queue entry whose
  // condition still holds. Recovery cleans the router and takes it (and,
  // through the offline rule, its subtree) down for delta ticks; in isolate
  // mode the downtime never ends. A merely-vulnerable find is patched in
  // place with no downtime.
  for (int k = 0; k < config.interceptors(); ++k) {
    if (state.interceptor_busy[k] > 0) continue;
    while (!state.defender_queue.empty()) {
      const DetectionEntry entry = state.defender_queue.front();
      state.defender_queue.pop_front();
      const RouterState& rs = routers[entry.router];
      const bool valid = entry.reason == DetectReason::exploited
                             ? rs.compromised
                             : rs.vulnerable;
      if (!valid) continue;  // stale, dropped
      if (entry.reason == DetectReason::exploited) {
        routers[entry.router].compromised = false;
        routers[entry.router].vulnerable = false;
        routers[entry.router].recovery_remaining = config.delta_interceptor;
      } else {
        routers[entry.router].patch_remaining = config.delta_interceptor;
      }
      state.interceptor_busy[k] = config.delta_interceptor;
      ++trace.interceptions;
      break;
    }
  }

  // Metrics sample: after interception, before timers, so recovery
  // initiation ends a router's compromised accounting within this tick.
  offline = offline_mask(topo, state);
  for (RouterId r = 0; r < graph.n; ++r) {
    if (routers[r].compromised) ++trace.compromised_count;
    if (offline[r]) ++trace.offline_count;
  }
  trace.compromised_frac =
      static_cast<double>(trace.compromised_count) / graph.n;
  trace.offline_frac = static_cast<double>(trace.offline_count) / graph.n;
  trace.center_compromised = routers[topo.central].compromised;
  trace.known_vulnerable = static_cast<int>(state.attacker_known.size());
  trace.queue_length = static_cast<int>(state.defender_queue.size());

  // Phase 6: timers. Isolated routers never count down; a finished recovery
  // returns the router online and clean; a finished patch clears the
  // vulnerability.
  for (RouterId r = 0; r < graph.n; ++r) {
    if (routers[r].recovery_remaining > 0 &&
        config.interceptor_mode == InterceptorMode::recover) {
      if (--routers[r].recovery_remaining == 0) {
        routers[r].vulnerable = false;
        routers[r].compromised = false;
      }
    }
    if (routers[r].patch_remaining > 0) {
      if (--routers[r].patch_remaining == 0) {
        routers[r].vulnerable = false;
      }
    }
  }
  for (int& busy : state.interceptor_busy) {
    if (busy > 0) --busy;
  }

  // Attacker knowledge goes stale when a router stops being vulnerable or
  // falls out of reach (recomputed against the post-timer state).
  if (!state.attacker_known.empty()) {
    const auto reachable = accessible_routers(graph, topo, state);
    std::vector<std::uint8_t> reachable_flag(graph.n, 0);
    for (RouterId r : reachable) reachable_flag[r] = 1;
    std::erase_if(state.attacker_known, [&](RouterId r) {
      return !routers[r].vulnerable || !reachable_flag[r];
    });
  }

  ++state.tick;
  return trace;
}

RunMetrics run_simulation(const SimConfig& config,
                          std::vector<TickTrace>* trace) {
  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);
  MetricsAccumulator metrics(config.n_routers);
  if (trace) {
    trace->clear();
    trace->reserve(config.max_ticks);
  }
  for (int t = 0; t < config.max_ticks; ++t) {
    const TickTrace tt = tick(state, graph, topo, config);
    metrics.record_tick(tt.compromised_count, tt.offline_count,
                        tt.center_compromised);
    if (trace) trace->push_back(tt);
  }
  return metrics.finalize();
}

Simulation::Simulation(const SimConfig& config)
    : config_(config), metrics_(config.n_routers > 0 ? config.n_routers : 1) {
  init_simulation(config_, graph_, topo_, state_);
}

TickTrace Simulation::step() {
  if (done()) {
    throw std::logic_error("Simulation::step: run already finished (" +
                           std::to_string(config_.max_ticks) + " ticks)");
  }
  const TickTrace tt = tick(state_, graph_, topo_, config_);
  metrics_.record_tick(tt.compromised_count, tt.offline_count,
                       tt.center_compromised);
  return tt;
}

RunMetrics Simulation::finish() {
  while (!done()) step();
  return metrics_.finalize();
}

void write_trace_csv(std::ostream& out, const std::vector<TickTrace>& trace) {
  out << "tick,compromised_frac,offline_frac,known_vuln,queue_len\n";
  char line[128];
  for (const TickTrace& tt : trace) {
    std::snprintf(line, sizeof(line), "%d,%.6f,%.6f,%d,%d\n", tt.tick,
                  tt.compromised_frac, tt.offline_frac, tt.known_vulnerable,
                  tt.queue_length);
    out << line;
  }
}

const char* to_string(InterceptorMode mode) {
  return mode == InterceptorMode::recover ? "recover" : "isolate";
}

InterceptorMode interceptor_mode_from_string(const std::string& text) {
  if (text == "recover") return InterceptorMode::recover;
  if (text == "isolate") return InterceptorMode::isolate;
  throw std::invalid_argument(
      "interceptor_mode: expected 'recover' or 'isolate', got '" + text + "'");
}

}  // namespace cctf
