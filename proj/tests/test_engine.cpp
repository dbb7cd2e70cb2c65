#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cctf/engine.hpp"
#include "cctf/rng.hpp"
#include "doctest.h"

using namespace cctf;

namespace {

SimConfig base_config() {
  SimConfig config;
  config.scouts = 3;
  config.detectors = 3;
  config.p_det_vuln = 0.5;
  config.p_det_expl = 0.5;
  config.seed = 9;
  return config;
}

std::string validation_message(const SimConfig& config) {
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return {};
}

// Offline oracle: walk every router's parent chain explicitly instead of
// reusing the engine's single-pass bfs_order trick.
std::vector<std::uint8_t> offline_oracle(const TopologyInfo& topo,
                                         const SimState& state) {
  const int n = static_cast<int>(state.routers.size());
  std::vector<std::uint8_t> offline(n, 0);
  for (RouterId r = 0; r < n; ++r) {
    RouterId walk = r;
    while (walk != -1) {
      if (state.routers[walk].recovery_remaining > 0) {
        offline[r] = 1;
        break;
      }
      walk = topo.parent[walk];
    }
  }
  return offline;
}

// Accessibility oracle: definitional set scan.
std::set<RouterId> accessible_oracle(const NetworkGraph& graph,
                                     const TopologyInfo& topo,
                                     const SimState& state) {
  const auto offline = offline_oracle(topo, state);
  std::set<RouterId> result;
  for (RouterId p : topo.peripheral) {
    if (!offline[p]) result.insert(p);
  }
  for (RouterId r = 0; r < graph.n; ++r) {
    if (offline[r] || !state.routers[r].compromised) continue;
    result.insert(r);
    for (RouterId q : graph.adjacency[r]) {
      if (!offline[q]) result.insert(q);
    }
  }
  return result;
}

}  // namespace

TEST_CASE("team composition bounds quote the violated constraint") {
  SimConfig config = base_config();

  config.scouts = 0;
  CHECK(validation_message(config).find("1 ≤ S < N") != std::string::npos);
  config.scouts = 10;
  CHECK(validation_message(config).find("1 ≤ S < N") != std::string::npos);
  config.scouts = -4;
  CHECK(validation_message(config).find("1 ≤ S < N") != std::string::npos);

  config = base_config();
  config.detectors = 0;
  CHECK(validation_message(config).find("1 ≤ d < N") != std::string::npos);
  config.detectors = 15;
  CHECK(validation_message(config).find("1 ≤ d < N") != std::string::npos);

  config = base_config();
  config.scouts = 9;
  CHECK(validation_message(config).empty());
  CHECK(config.exploiters() == 1);
  CHECK(config.interceptors() == 7);
}

TEST_CASE("remaining parameter validation") {
  SimConfig config = base_config();
  config.vul_rate = -0.1;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = base_config();
  config.p_det_expl = 1.5;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = base_config();
  config.delta_interceptor = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = base_config();
  config.max_ticks = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = base_config();
  config.n_routers = 1;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("init produces a clean deterministic start") {
  const SimConfig config = base_config();
  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);

  CHECK(graph.n == 30);
  CHECK(state.tick == 0);
  REQUIRE(state.routers.size() == 30);
  for (const RouterState& r : state.routers) {
    CHECK_FALSE(r.vulnerable);
    CHECK_FALSE(r.compromised);
    CHECK(r.recovery_remaining == 0);
    CHECK(r.patch_remaining == 0);
  }
  CHECK(state.attacker_known.empty());
  CHECK(state.defender_queue.empty());
  CHECK(state.interceptor_busy == std::vector<int>(config.interceptors(), 0));

  NetworkGraph graph2;
  TopologyInfo topo2;
  SimState state2;
  init_simulation(config, graph2, topo2, state2);
  CHECK(graph == graph2);
  CHECK(topo == topo2);
  CHECK(state == state2);
}

TEST_CASE("null dynamics when every probability is zero") {
  SimConfig config = base_config();
  config.vul_rate = 0.0;
  config.p_scout = 0.0;
  config.p_exploiter = 0.0;
  config.p_det_vuln = 0.0;
  config.p_det_expl = 0.0;

  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);
  const std::vector<RouterState> before = state.routers;

  const TickTrace tt = tick(state, graph, topo, config);
  CHECK(state.tick == 1);
  CHECK(state.routers == before);
  CHECK(state.attacker_known.empty());
  CHECK(state.defender_queue.empty());
  CHECK(tt.new_vulnerable == 0);
  CHECK(tt.exploits == 0);
  CHECK(tt.compromised_count == 0);
  CHECK(tt.offline_count == 0);
}

TEST_CASE("vul_rate zero keeps every metric at zero") {
  SimConfig config = base_config();
  config.vul_rate = 0.0;
  config.max_ticks = 300;
  const RunMetrics m = run_simulation(config);
  CHECK(m.mean_compromised == 0.0);
  CHECK(m.max_compromised == 0.0);
  CHECK(m.mean_offline == 0.0);
  CHECK(m.max_offline == 0.0);
  CHECK_FALSE(m.two_thirds_breached);
  CHECK_FALSE(m.full_network_breached);
  CHECK_FALSE(m.center_compromised);
  CHECK(m.ticks_run == 300);
}

TEST_CASE("certain probabilities compromise within the first tick") {
  SimConfig config = base_config();
  config.n_routers = 2;
  config.vul_rate = 1.0;
  config.p_scout = 1.0;
  config.p_exploiter = 1.0;
  config.p_det_vuln = 0.0;
  config.p_det_expl = 0.0;

  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);
  const TickTrace tt = tick(state, graph, topo, config);

  CHECK(tt.new_vulnerable == 2);  // both routers are online and clean
  CHECK(tt.scout_detections >= 1);
  CHECK(tt.exploits >= 1);
  CHECK(tt.compromised_count >= 1);
}

TEST_CASE("interception clears compromise and opens a recovery window") {
  SimConfig config = base_config();
  config.vul_rate = 0.0;
  config.p_scout = 0.0;
  config.p_exploiter = 0.0;
  config.p_det_vuln = 0.0;
  config.p_det_expl = 0.0;
  config.delta_interceptor = 10;

  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);

  // Plant a compromised leaf with a pending detection by hand.
  const RouterId victim = topo.peripheral.front();
  state.routers[victim].vulnerable = true;
  state.routers[victim].compromised = true;
  state.defender_queue.push_back({victim, DetectReason::exploited});

  TickTrace tt = tick(state, graph, topo, config);
  CHECK(tt.interceptions == 1);
  CHECK_FALSE(state.routers[victim].compromised);
  CHECK_FALSE(state.routers[victim].vulnerable);
  CHECK(tt.compromised_count == 0);  // accounting ends at recovery initiation
  CHECK(tt.offline_count == 1);
  CHECK(state.interceptor_busy[0] == 9);  // set to delta, one decrement done

  // The recovery window covers exactly delta offline samples in total.
  int offline_ticks = 1;
  for (int t = 0; t < 15; ++t) {
    tt = tick(state, graph, topo, config);
    offline_ticks += tt.offline_count;
  }
  CHECK(offline_ticks == 10);
  CHECK(state.routers[victim].recovery_remaining == 0);
  CHECK_FALSE(state.routers[victim].compromised);
}

TEST_CASE("a recovering ancestor takes its whole subtree offline") {
  SimConfig config = base_config();
  config.vul_rate = 0.0;
  config.p_scout = 0.0;
  config.p_exploiter = 0.0;
  config.p_det_vuln = 0.0;
  config.p_det_expl = 0.0;

  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);

  state.routers[topo.central].recovery_remaining = 5;
  const auto offline = offline_mask(topo, state);
  CHECK(std::count(offline.begin(), offline.end(), 1) == graph.n);
  CHECK(accessible_routers(graph, topo, state).empty());
}

TEST_CASE("offline mask matches the parent-chain oracle during runs") {
  SimConfig config = base_config();
  config.vul_rate = 0.3;
  config.p_exploiter = 0.5;
  config.p_det_vuln = 0.5;
  config.p_det_expl = 0.9;
  config.seed = 77;

  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);
  for (int t = 0; t < 120; ++t) {
    tick(state, graph, topo, config);
    CHECK(offline_mask(topo, state) == offline_oracle(topo, state));

    const auto accessible = accessible_routers(graph, topo, state);
    const std::set<RouterId> expected = accessible_oracle(graph, topo, state);
    CHECK(std::set<RouterId>(accessible.begin(), accessible.end()) ==
          expected);
    CHECK(std::is_sorted(accessible.begin(), accessible.end()));
  }
}

TEST_CASE("accessibility base case is the online periphery") {
  SimConfig config = base_config();
  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);
  CHECK(accessible_routers(graph, topo, state) == topo.peripheral);
}

TEST_CASE("compromising a peripheral router exposes its neighbor") {
  SimConfig config = base_config();
  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);

  const RouterId leaf = topo.peripheral.front();
  const RouterId inner = graph.adjacency[leaf].front();
  state.routers[leaf].compromised = true;
  const auto accessible = accessible_routers(graph, topo, state);
  CHECK(std::binary_search(accessible.begin(), accessible.end(), leaf));
  CHECK(std::binary_search(accessible.begin(), accessible.end(), inner));
}

TEST_CASE("zero defense makes compromise monotone") {
  SimConfig config = base_config();
  config.p_det_vuln = 0.0;
  config.p_det_expl = 0.0;
  config.vul_rate = 0.1;
  config.p_exploiter = 0.3;

  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);
  int previous = 0;
  for (int t = 0; t < 200; ++t) {
    const TickTrace tt = tick(state, graph, topo, config);
    CHECK(tt.compromised_count >= previous);
    CHECK(tt.offline_count == 0);
    previous = tt.compromised_count;
  }
}

TEST_CASE("with no defense and certain attack the whole network falls") {
  SimConfig config;
  config.n_routers = 10;
  config.scouts = 1;
  config.detectors = 1;
  config.vul_rate = 1.0;
  config.p_scout = 1.0;
  config.p_exploiter = 1.0;
  config.p_det_vuln = 0.0;
  config.p_det_expl = 0.0;
  config.max_ticks = 200;
  config.seed = 3;
  const RunMetrics m = run_simulation(config);
  CHECK(m.max_compromised == 1.0);
  CHECK(m.full_network_breached);
  CHECK(m.center_compromised);
}

TEST_CASE("run_simulation is deterministic") {
  SimConfig config = base_config();
  config.max_ticks = 200;
  std::vector<TickTrace> trace_a, trace_b;
  const RunMetrics a = run_simulation(config, &trace_a);
  const RunMetrics b = run_simulation(config, &trace_b);
  CHECK(a == b);
  REQUIRE(trace_a.size() == trace_b.size());
  for (std::size_t i = 0; i < trace_a.size(); ++i) {
    CHECK(trace_a[i].compromised_count == trace_b[i].compromised_count);
    CHECK(trace_a[i].offline_count == trace_b[i].offline_count);
  }

  SimConfig other = config;
  other.seed = config.seed + 1;
  CHECK(run_simulation(other) != a);
}

TEST_CASE("stepping a Simulation matches the one-shot runner") {
  SimConfig config = base_config();
  config.max_ticks = 150;
  Simulation sim(config);
  int steps = 0;
  while (!sim.done()) {
    sim.step();
    ++steps;
  }
  CHECK(steps == 150);
  CHECK_THROWS_AS(sim.step(), std::logic_error);

  Simulation sim2(config);
  CHECK(sim2.finish() == run_simulation(config));
}

TEST_CASE("isolate mode never brings recovered routers back") {
  SimConfig config = base_config();
  config.interceptor_mode = InterceptorMode::isolate;
  config.vul_rate = 0.2;
  config.p_exploiter = 0.5;
  config.p_det_expl = 0.8;
  config.p_det_vuln = 0.2;
  config.seed = 21;

  NetworkGraph graph;
  TopologyInfo topo;
  SimState state;
  init_simulation(config, graph, topo, state);
  std::vector<std::uint8_t> ever_recovering(graph.n, 0);
  for (int t = 0; t < 150; ++t) {
    tick(state, graph, topo, config);
    for (RouterId r = 0; r < graph.n; ++r) {
      if (ever_recovering[r]) {
        // recovery_remaining must never tick down in isolate mode
        CHECK(state.routers[r].recovery_remaining > 0);
      }
      if (state.routers[r].recovery_remaining > 0) ever_recovering[r] = 1;
    }
  }
  CHECK(std::count(ever_recovering.begin(), ever_recovering.end(), 1) > 0);
}

TEST_CASE("engine invariants hold across randomized configurations") {
  Rng meta(4242);
  for (int trial = 0; trial < 60; ++trial) {
    SimConfig config;
    config.n_routers = 5 + static_cast<int>(meta.next_below(40));
    config.team_size = 2 + static_cast<int>(meta.next_below(12));
    config.scouts = 1 + static_cast<int>(meta.next_below(config.team_size - 1));
    config.detectors =
        1 + static_cast<int>(meta.next_below(config.team_size - 1));
    config.vul_rate = meta.next_double();
    config.p_scout = meta.next_double();
    config.p_exploiter = meta.next_double();
    config.p_det_vuln = meta.next_double();
    config.p_det_expl = meta.next_double();
    config.delta_interceptor = 1 + static_cast<int>(meta.next_below(15));
    config.interceptor_mode = meta.next_below(2) == 0
                                  ? InterceptorMode::recover
                                  : InterceptorMode::isolate;
    config.seed = meta.next_u64();
    config.max_ticks = 60;

    CAPTURE(trial);
    NetworkGraph graph;
    TopologyInfo topo;
    SimState state;
    init_simulation(config, graph, topo, state);

    bool center_latch = false;
    for (int t = 0; t < config.max_ticks; ++t) {
      const TickTrace tt = tick(state, graph, topo, config);

      REQUIRE(tt.compromised_frac >= 0.0);
      REQUIRE(tt.compromised_frac <= 1.0);
      REQUIRE(tt.offline_frac >= 0.0);
      REQUIRE(tt.offline_frac <= 1.0);

      for (RouterId r = 0; r < graph.n; ++r) {
        const RouterState& rs = state.routers[r];
        REQUIRE_FALSE((rs.compromised && rs.recovery_remaining > 0));
        REQUIRE(rs.recovery_remaining >= 0);
        REQUIRE(rs.recovery_remaining <= config.delta_interceptor);
        REQUIRE(rs.patch_remaining >= 0);
        REQUIRE(rs.patch_remaining <= config.delta_interceptor);
      }

      REQUIRE(std::is_sorted(state.attacker_known.begin(),
                             state.attacker_known.end()));
      for (RouterId r : state.attacker_known) {
        REQUIRE(state.routers[r].vulnerable);
        REQUIRE_FALSE(state.routers[r].compromised);
      }

      std::set<std::pair<RouterId, int>> queue_pairs;
      for (const DetectionEntry& entry : state.defender_queue) {
        REQUIRE(queue_pairs
                    .insert({entry.router, static_cast<int>(entry.reason)})
                    .second);
      }

      for (int busy : state.interceptor_busy) {
        REQUIRE(busy >= 0);
        REQUIRE(busy <= config.delta_interceptor);
      }

      // the center flag in the trace is a latch input, never un-happens
      if (center_latch) {
        // fine either way; latch only grows in MetricsAccumulator
      }
      center_latch = center_latch || tt.center_compromised;
    }
  }
}

TEST_CASE("trace rows carry consistent counts") {
  SimConfig config = base_config();
  config.max_ticks = 100;
  std::vector<TickTrace> trace;
  run_simulation(config, &trace);
  REQUIRE(trace.size() == 100);
  for (std::size_t t = 0; t < trace.size(); ++t) {
    CHECK(trace[t].tick == static_cast<int>(t));
    CHECK(trace[t].compromised_frac ==
          doctest::Approx(trace[t].compromised_count / 30.0));
    CHECK(trace[t].offline_frac ==
          doctest::Approx(trace[t].offline_count / 30.0));
  }
}

TEST_CASE("trace csv format") {
  SimConfig config = base_config();
  config.max_ticks = 3;
  std::vector<TickTrace> trace;
  run_simulation(config, &trace);
  std::ostringstream out;
  write_trace_csv(out, trace);
  const std::string text = out.str();
  CHECK(text.rfind("tick,compromised_frac,offline_frac,known_vuln,queue_len\n",
                   0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  CHECK(text.find("0,0.000000,0.000000,") != std::string::npos);
}

TEST_CASE("interceptor mode names round-trip") {
  CHECK(std::string(to_string(InterceptorMode::recover)) == "recover");
  CHECK(std::string(to_string(InterceptorMode::isolate)) == "isolate");
  CHECK(interceptor_mode_from_string("recover") == InterceptorMode::recover);
  CHECK(interceptor_mode_from_string("isolate") == InterceptorMode::isolate);
  CHECK_THROWS_AS(interceptor_mode_from_string("shutdown"),
                  std::invalid_argument);
}
