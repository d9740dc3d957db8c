#include "radiosync/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "radiosync/selective.hpp"

namespace radiosync {

LayerDecomposition decompose_layers(const RadioNetwork& net, NodeId target) {
  if (!net.source()) throw std::domain_error("decompose_layers: network has no source");
  if (target < 1 || target > net.size())
    throw std::domain_error("decompose_layers: target out of range");
  const NodeId source = *net.source();
  const int n = net.size();

  // BFS with lowest-id parents: scanning nodes in ascending id order makes
  // the first-discovered parent the smallest one at the previous depth.
  std::vector<int> dist(static_cast<std::size_t>(n) + 1, -1);
  std::vector<NodeId> parent(static_cast<std::size_t>(n) + 1, 0);
  std::queue<NodeId> frontier;
  dist[static_cast<std::size_t>(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    std::vector<NodeId> outs = net.out_neighbors(u);
    std::sort(outs.begin(), outs.end());
    for (NodeId w : outs) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        parent[static_cast<std::size_t>(w)] = u;
        frontier.push(w);
      }
    }
  }
  if (dist[static_cast<std::size_t>(target)] < 0)
    throw std::domain_error("decompose_layers: target " + std::to_string(target) +
                            " unreachable from source");

  LayerDecomposition dec;
  dec.target = target;
  for (NodeId v = target; v != source; v = parent[static_cast<std::size_t>(v)])
    dec.path.push_back(v);
  dec.path.push_back(source);
  std::reverse(dec.path.begin(), dec.path.end());
  const std::size_t d = dec.path.size() - 1;

  std::vector<int> path_index(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t i = 0; i < dec.path.size(); ++i)
    path_index[static_cast<std::size_t>(dec.path[i])] = static_cast<int>(i);

  dec.layers.assign(d + 2, {});
  dec.layers[d + 1].push_back(target);
  for (NodeId v = 1; v <= n; ++v) {
    if (v == target) continue;
    int furthest = -1;
    for (NodeId w : net.out_neighbors(v))
      furthest = std::max(furthest, path_index[static_cast<std::size_t>(w)]);
    if (furthest < 0)
      dec.discarded.push_back(v);
    else
      dec.layers[static_cast<std::size_t>(furthest)].push_back(v);
  }
  return dec;
}

std::vector<std::uint64_t> leading_layer_durations(const SimulationTrace& trace,
                                                   const LayerDecomposition& dec) {
  std::vector<std::uint64_t> durations(dec.layers.size(), 0);
  const std::uint64_t target_act =
      trace.activation[static_cast<std::size_t>(dec.target - 1)];
  const std::uint64_t end = std::min(target_act, trace.steps_run);
  for (std::uint64_t t = 0; t < end; ++t) {
    for (std::size_t l = dec.layers.size(); l-- > 0;) {
      const bool leads = std::any_of(dec.layers[l].begin(), dec.layers[l].end(),
                                     [&](NodeId v) { return trace.active_at(v, t); });
      if (leads) {
        ++durations[l];
        break;
      }
    }
  }
  return durations;
}

std::uint64_t broadcast_bound(const SynchronizerFamily& family) {
  if (family.kind != SyncKind::block)
    throw std::domain_error("broadcast_bound: family kind must be block");
  return 3 * family.composite_block * static_cast<std::uint64_t>(family.params.ecc);
}

std::uint64_t wakeup_bound(int n, int ecc, int delta, double c) {
  if (n < 1 || ecc < 0 || delta < 0 || c <= 0.0)
    throw std::domain_error("wakeup_bound: invalid parameters");
  const double span =
      std::min<double>(n, static_cast<double>(ecc) * static_cast<double>(delta));
  const double ld = safe_log2(std::max(1.0, static_cast<double>(delta)));
  const double value = c * span * safe_log2(n) * ld / safe_log2(ld);
  return static_cast<std::uint64_t>(std::ceil(value));
}

std::uint64_t time_bound(BoundMode mode, int n, int ecc, int delta, double c) {
  if (mode == BoundMode::wakeup) return wakeup_bound(n, ecc, delta, c);
  const std::uint64_t r = block_increment(n, ecc);
  const std::uint64_t bb =
      selective_family_length(n, static_cast<int>(r), c) + upper_block_length(n, ecc, delta, c);
  return 3 * bb * static_cast<std::uint64_t>(ecc);
}

std::uint64_t packing_supremum(BoundMode mode, int n, int ecc, int delta, double c) {
  if (n < 1 || ecc < 1 || delta < 1)
    throw std::domain_error("packing_supremum: invalid parameters");
  const int slots = ecc + 1;  // layers 1..d+1 with d = D
  const int cap = std::min(delta, n);

  // h(q) = max steps a leading layer of size q can persist.
  std::vector<std::uint64_t> h(static_cast<std::size_t>(cap) + 1, 0);
  if (mode == BoundMode::broadcast) {
    const std::uint64_t r = block_increment(n, ecc);
    const std::uint64_t bb =
        selective_family_length(n, static_cast<int>(r), c) + upper_block_length(n, ecc, delta, c);
    for (int q = 1; q <= cap; ++q)
      h[static_cast<std::size_t>(q)] =
          bb * ((static_cast<std::uint64_t>(q) + r + r - 1) / r) - 1;
  } else {
    for (int q = 1; q <= cap; ++q)
      h[static_cast<std::size_t>(q)] = urs_delay(static_cast<std::uint64_t>(q),
                                                 static_cast<std::uint64_t>(n), c);
  }

  // best[s] = max sum over layers so far using s nodes total.
  std::vector<std::uint64_t> best(static_cast<std::size_t>(n) + 1, 0);
  for (int layer = 0; layer < slots; ++layer) {
    std::vector<std::uint64_t> next = best;
    for (int s = 0; s <= n; ++s) {
      for (int q = 1; q <= std::min(cap, n - s); ++q) {
        next[static_cast<std::size_t>(s + q)] =
            std::max(next[static_cast<std::size_t>(s + q)],
                     best[static_cast<std::size_t>(s)] + h[static_cast<std::size_t>(q)]);
      }
    }
    best = std::move(next);
  }
  return *std::max_element(best.begin(), best.end());
}

}  // namespace radiosync
