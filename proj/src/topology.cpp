#include "cctf/topology.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "cctf/rng.hpp"

namespace cctf {

NetworkGraph generate_scale_free(int n, int m, std::uint64_t seed) {
  if (n < 2) {
    throw std::invalid_argument("generate_scale_free: n must be >= 2, got " +
                                std::to_string(n));
  }
  if (m < 1 || m >= n) {
    throw std::invalid_argument(
        "generate_scale_free: m must satisfy 1 <= m < n, got m=" +
        std::to_string(m) + " with n=" + std::to_string(n));
  }

  Rng rng(seed);

  NetworkGraph graph;
  graph.n = n;
  graph.adjacency.assign(n, {});

  auto add_edge = [&graph](RouterId u, RouterId v) {
    graph.edges.emplace_back(std::min(u, v), std::max(u, v));
    graph.adjacency[u].push_back(v);
    graph.adjacency[v].push_back(u);
  };

  // Repeated-endpoint list: every edge contributes both endpoints, so a
  // uniform draw from it is a degree-proportional draw over routers.
  std::vector<RouterId> endpoints;
  endpoints.reserve(2 * (static_cast<std::size_t>(m) * n + 1));

  add_edge(0, 1);
  endpoints.push_back(0);
  endpoints.push_back(1);

  for (RouterId joining = 2; joining < n; ++joining) {
    // A router can link to at most the routers that already exist.
    const int links = std::min(m, joining);
    std::set<RouterId> targets;
    while (static_cast<int>(targets.size()) < links) {
      const RouterId candidate =
          endpoints[rng.next_below(endpoints.size())];
      targets.insert(candidate);  // redraw on repeats: no duplicate edges
    }
    for (RouterId target : targets) {
      add_edge(joining, target);
      endpoints.push_back(joining);
      endpoints.push_back(target);
    }
  }

  std::sort(graph.edges.begin(), graph.edges.end());
  for (auto& neighbors : graph.adjacency) {
    std::sort(neighbors.begin(), neighbors.end());
  }
  return graph;
}

TopologyInfo derive_topology(const NetworkGraph& graph) {
  TopologyInfo topo;

  RouterId central = 0;
  for (RouterId r = 1; r < graph.n; ++r) {
    if (graph.degree(r) > graph.degree(central)) central = r;
  }
  topo.central = central;

  for (RouterId r = 0; r < graph.n; ++r) {
    if (graph.degree(r) == 1) topo.peripheral.push_back(r);
  }

  topo.parent.assign(graph.n, -1);
  topo.depth.assign(graph.n, -1);
  topo.bfs_order.reserve(graph.n);

  std::queue<RouterId> frontier;
  topo.depth[central] = 0;
  frontier.push(central);
  while (!frontier.empty()) {
    const RouterId r = frontier.front();
    frontier.pop();
    topo.bfs_order.push_back(r);
    for (RouterId neighbor : graph.adjacency[r]) {  // ascending
      if (topo.depth[neighbor] < 0) {
        topo.depth[neighbor] = topo.depth[r] + 1;
        topo.parent[neighbor] = r;
        frontier.push(neighbor);
      }
    }
  }
  return topo;
}

}  // namespace cctf
