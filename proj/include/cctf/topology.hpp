#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cctf {

// Routers are dense indices in [0, n).
using RouterId = int;

struct NetworkGraph {
  int n = 0;
  std::vector<std::pair<RouterId, RouterId>> edges;  // u < v, sorted ascending
  std::vector<std::vector<RouterId>> adjacency;      // sorted neighbor lists

  int degree(RouterId r) const { return static_cast<int>(adjacency[r].size()); }

  bool operator==(const NetworkGraph&) const = default;
};

// Structural facts derived once per graph: the internet-facing periphery,
// the hub acting as the core-services router, and the tree orientation used
// for offline propagation.
struct TopologyInfo {
  std::vector<RouterId> peripheral;  // all degree-1 routers, ascending
  RouterId central = 0;              // max degree, lowest index on ties
  std::vector<RouterId> parent;      // BFS parent toward central; -1 at central
  std::vector<int> depth;            // hops from central
  std::vector<RouterId> bfs_order;   // central first, non-decreasing depth

  bool operator==(const TopologyInfo&) const = default;
};

// Barabasi-Albert preferential attachment, seeded and reproducible.
//
// Starts from the single edge {0,1}; each later router i picks
// min(m, i) distinct existing routers with probability proportional to
// current degree and links to them. Degree-proportional sampling draws
// uniformly from the repeated-endpoint list (every edge contributes both
// endpoints); within one step already-chosen targets are rejected and
// redrawn. This choice is frozen: the same (n, m, seed) always produces the
// same graph. m = 1 yields a tree with exactly n-1 edges.
//
// Throws std::invalid_argument if n < 2 or m is outside [1, n).
NetworkGraph generate_scale_free(int n, int m, std::uint64_t seed);

// Pure derivation: central = argmax degree (lowest index wins ties),
// peripheral = degree-1 routers, parent/depth from a BFS rooted at central
// visiting neighbors in ascending index order.
TopologyInfo derive_topology(const NetworkGraph& graph);

}  // namespace cctf
