#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "radiosync/model.hpp"

namespace radiosync {

// One synchronous step's result.  receptions holds (receiver, sender) pairs,
// sorted by receiver; a pair is present iff exactly one in-neighbor of the
// receiver transmitted and the receiver itself stayed silent.
struct StepOutcome {
  std::vector<NodeId> transmitters;
  std::vector<std::pair<NodeId, NodeId>> receptions;
  bool operator==(const StepOutcome&) const = default;
};

// Directed radio network on nodes 1..n.  Metadata (eccentricity from the
// source, max in-degree) is always recomputed from the edge set, never
// trusted from input.  When a source is set, construction verifies that every
// node is reachable from it.
class RadioNetwork {
 public:
  static RadioNetwork from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                 std::optional<NodeId> source);

  int size() const { return n_; }
  std::optional<NodeId> source() const { return source_; }
  const std::vector<NodeId>& in_neighbors(NodeId v) const;
  const std::vector<NodeId>& out_neighbors(NodeId v) const;
  // Edges sorted lexicographically; the canonical serialization order.
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

  int eccentricity() const;  // D; requires a source
  int max_indegree() const { return max_indegree_; }

  // Collision semantics without collision detection: a silent node receives
  // iff exactly one of its in-neighbors transmits; transmitting nodes never
  // receive; zero and two-plus transmitters are indistinguishable.
  StepOutcome deliver(std::span<const NodeId> transmitters) const;

  // BFS distances from v (-1 for unreachable).
  std::vector<int> distances_from(NodeId v) const;

  bool operator==(const RadioNetwork&) const = default;

 private:
  RadioNetwork() = default;
  int n_ = 0;
  std::optional<NodeId> source_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::vector<NodeId>> in_adj_;   // index 0 unused
  std::vector<std::vector<NodeId>> out_adj_;  // index 0 unused
  int eccentricity_ = 0;
  int max_indegree_ = 0;
};

// Generators.  All are deterministic per seed and produce source-rooted
// networks where every node is reachable.
RadioNetwork gen_path(int n);
// Hub (node 1, the source) connected both ways to each leaf: D = 1 and the
// hub's in-degree realizes Delta = leaves.
RadioNetwork gen_star(int leaves);
// Node 1 is the source; layer l holds `width` nodes at BFS distance exactly l.
// Each node gets one backbone in-edge from the previous layer plus random
// extras, so n = layers*width + 1 and D = layers.
RadioNetwork gen_layered(int layers, int width, std::uint64_t seed);
// Random DAG on 1..n with edge probability p between ordered pairs; every
// node beyond the source is given a fallback in-edge from a smaller node.
RadioNetwork gen_random_dag(int n, double p, std::uint64_t seed);
// Every node beyond the source draws 1..delta_cap in-edges from distinct
// smaller nodes, so the max in-degree never exceeds delta_cap.
RadioNetwork gen_bounded_indeg(int n, int delta_cap, std::uint64_t seed);

}  // namespace radiosync
