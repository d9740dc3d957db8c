#pragma once

#include <cstdint>
#include <vector>

#include "radiosync/model.hpp"
#include "radiosync/protocols.hpp"
#include "radiosync/radionet.hpp"
#include "radiosync/synchronizer.hpp"

namespace radiosync {

// Shortest-path layer structure toward a target: path = P_0..P_d with
// P_0 = source, P_d = target; a node lands in layers[l] when the furthest
// path node it has an edge into is P_l; the target itself always forms
// layers[d+1].  Nodes with no edge into the path are discarded.
struct LayerDecomposition {
  NodeId target = 0;
  std::vector<NodeId> path;
  std::vector<std::vector<NodeId>> layers;  // index l in [0, d+1]
  std::vector<NodeId> discarded;
  bool operator==(const LayerDecomposition&) const = default;
};

// BFS parents tie-break to the lowest node id, so the path (and hence the
// decomposition) is deterministic.
LayerDecomposition decompose_layers(const RadioNetwork& net, NodeId target);

// durations[l] = number of steps at which layers[l] was the leading layer
// (the max-index layer containing an active node), counted from step 0 until
// the target activates (or the trace ends).
std::vector<std::uint64_t> leading_layer_durations(const SimulationTrace& trace,
                                                   const LayerDecomposition& dec);

enum class BoundMode { broadcast, wakeup };

// Closed-form completion bounds: broadcast 3*BB*D with BB derived from the
// family geometry at (n, D, delta, c); wakeup the g-packing closed form.
std::uint64_t time_bound(BoundMode mode, int n, int ecc, int delta, double c);
// Same broadcast bound taken from an already-built family (3 * BB * D).
std::uint64_t broadcast_bound(const SynchronizerFamily& family);
std::uint64_t wakeup_bound(int n, int ecc, int delta, double c);

// Debug cross-check: solves the layer-packing maximization exactly by DP
// (layers 1..D+1, per-layer size cap, total at most n) instead of using the
// closed form.  Broadcast uses the per-layer duration cap BB*ceil((q+r)/r)-1;
// wakeup uses g(q).
std::uint64_t packing_supremum(BoundMode mode, int n, int ecc, int delta, double c);

}  // namespace radiosync
