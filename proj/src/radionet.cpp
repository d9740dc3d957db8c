#include "radiosync/radionet.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "radiosync/rng.hpp"

namespace radiosync {

RadioNetwork RadioNetwork::from_edges(int n,
                                      const std::vector<std::pair<NodeId, NodeId>>& edges,
                                      std::optional<NodeId> source) {
  if (n < 1) throw std::domain_error("radio network: need n >= 1");
  RadioNetwork net;
  net.n_ = n;
  net.edges_ = edges;
  std::sort(net.edges_.begin(), net.edges_.end());
  net.in_adj_.assign(static_cast<std::size_t>(n) + 1, {});
  net.out_adj_.assign(static_cast<std::size_t>(n) + 1, {});
  for (std::size_t i = 0; i < net.edges_.size(); ++i) {
    const auto [u, v] = net.edges_[i];
    if (u < 1 || u > n || v < 1 || v > n)
      throw std::domain_error("radio network: edge endpoint " +
                              std::to_string(u < 1 || u > n ? u : v) + " out of range");
    if (u == v)
      throw std::domain_error("radio network: self-loop at node " + std::to_string(u));
    if (i > 0 && net.edges_[i] == net.edges_[i - 1])
      throw std::domain_error("radio network: duplicate edge " + std::to_string(u) + "->" +
                              std::to_string(v));
    net.out_adj_[static_cast<std::size_t>(u)].push_back(v);
    net.in_adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (int d = 0; d <= n; ++d)
    net.max_indegree_ =
        std::max(net.max_indegree_, static_cast<int>(net.in_adj_[static_cast<std::size_t>(d)].size()));

  if (source) {
    if (*source < 1 || *source > n)
      throw std::domain_error("radio network: source " + std::to_string(*source) +
                              " out of range");
    net.source_ = source;
    const std::vector<int> dist = net.distances_from(*source);
    for (int v = 1; v <= n; ++v) {
      if (dist[static_cast<std::size_t>(v)] < 0)
        throw std::domain_error("radio network: node " + std::to_string(v) +
                                " unreachable from source " + std::to_string(*source));
      net.eccentricity_ = std::max(net.eccentricity_, dist[static_cast<std::size_t>(v)]);
    }
  }
  return net;
}

const std::vector<NodeId>& RadioNetwork::in_neighbors(NodeId v) const {
  if (v < 1 || v > n_) throw std::domain_error("radio network: node id out of range");
  return in_adj_[static_cast<std::size_t>(v)];
}

const std::vector<NodeId>& RadioNetwork::out_neighbors(NodeId v) const {
  if (v < 1 || v > n_) throw std::domain_error("radio network: node id out of range");
  return out_adj_[static_cast<std::size_t>(v)];
}

int RadioNetwork::eccentricity() const {
  if (!source_) throw std::domain_error("radio network: eccentricity requires a source");
  return eccentricity_;
}

std::vector<int> RadioNetwork::distances_from(NodeId v) const {
  if (v < 1 || v > n_) throw std::domain_error("radio network: node id out of range");
  std::vector<int> dist(static_cast<std::size_t>(n_) + 1, -1);
  std::queue<NodeId> frontier;
  dist[static_cast<std::size_t>(v)] = 0;
  frontier.push(v);
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId w : out_adj_[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

StepOutcome RadioNetwork::deliver(std::span<const NodeId> transmitters) const {
  std::vector<std::uint8_t> sending(static_cast<std::size_t>(n_) + 1, 0);
  for (NodeId v : transmitters) {
    if (v < 1 || v > n_)
      throw std::domain_error("deliver: transmitter " + std::to_string(v) + " out of range");
    sending[static_cast<std::size_t>(v)] = 1;
  }
  StepOutcome out;
  for (int v = 1; v <= n_; ++v)
    if (sending[static_cast<std::size_t>(v)]) out.transmitters.push_back(v);
  for (int u = 1; u <= n_; ++u) {
    if (sending[static_cast<std::size_t>(u)]) continue;  // half-duplex
    NodeId sender = 0;
    int count = 0;
    for (NodeId w : in_adj_[static_cast<std::size_t>(u)]) {
      if (sending[static_cast<std::size_t>(w)]) {
        sender = w;
        if (++count > 1) break;
      }
    }
    if (count == 1) out.receptions.emplace_back(u, sender);
  }
  return out;
}

RadioNetwork gen_path(int n) {
  if (n < 1) throw std::domain_error("gen_path: need n >= 1");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return RadioNetwork::from_edges(n, edges, 1);
}

RadioNetwork gen_star(int leaves) {
  if (leaves < 0) throw std::domain_error("gen_star: need leaves >= 0");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int leaf = 2; leaf <= leaves + 1; ++leaf) {
    edges.emplace_back(1, leaf);
    edges.emplace_back(leaf, 1);
  }
  return RadioNetwork::from_edges(leaves + 1, edges, 1);
}

RadioNetwork gen_layered(int layers, int width, std::uint64_t seed) {
  if (layers < 1 || width < 1) throw std::domain_error("gen_layered: need layers, width >= 1");
  const int n = layers * width + 1;
  SeededRng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::set<std::pair<NodeId, NodeId>> present;
  const auto layer_node = [width](int layer, int slot) {  // layer >= 1, slot in [0, width)
    return 1 + (layer - 1) * width + slot + 1;
  };
  for (int layer = 1; layer <= layers; ++layer) {
    const int prev_width = layer == 1 ? 1 : width;
    for (int slot = 0; slot < width; ++slot) {
      const NodeId v = layer_node(layer, slot);
      const int backbone = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(prev_width)));
      const NodeId bu = layer == 1 ? 1 : layer_node(layer - 1, backbone);
      present.insert({bu, v});
      for (int s = 0; s < prev_width; ++s) {
        const NodeId u = layer == 1 ? 1 : layer_node(layer - 1, s);
        if (u != bu && rng.bernoulli(0.4)) present.insert({u, v});
      }
    }
  }
  edges.assign(present.begin(), present.end());
  return RadioNetwork::from_edges(n, edges, 1);
}

RadioNetwork gen_random_dag(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("gen_random_dag: need n >= 1");
  if (p < 0.0 || p > 1.0) throw std::domain_error("gen_random_dag: need p in [0,1]");
  SeededRng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<int> indeg(static_cast<std::size_t>(n) + 1, 0);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (rng.bernoulli(p)) {
        edges.emplace_back(u, v);
        ++indeg[static_cast<std::size_t>(v)];
      }
    }
  }
  // Every non-source node needs an in-edge from a smaller node; that makes
  // the whole DAG reachable from node 1 by induction.
  for (int v = 2; v <= n; ++v) {
    if (indeg[static_cast<std::size_t>(v)] == 0) {
      const NodeId u =
          1 + static_cast<NodeId>(rng.next_below(static_cast<std::uint64_t>(v - 1)));
      edges.emplace_back(u, v);
    }
  }
  return RadioNetwork::from_edges(n, edges, 1);
}

RadioNetwork gen_bounded_indeg(int n, int delta_cap, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("gen_bounded_indeg: need n >= 1");
  if (n > 1 && delta_cap < 1)
    throw std::domain_error("gen_bounded_indeg: delta_cap = 0 is unsatisfiable with n > 1");
  SeededRng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> pool;
  for (int v = 2; v <= n; ++v) {
    const int avail = v - 1;
    const int want =
        1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(std::min(delta_cap, avail))));
    pool.resize(static_cast<std::size_t>(avail));
    for (int u = 1; u <= avail; ++u) pool[static_cast<std::size_t>(u - 1)] = u;
    for (int i = 0; i < want; ++i) {
      const std::size_t j = static_cast<std::size_t>(i) +
                            static_cast<std::size_t>(rng.next_below(
                                static_cast<std::uint64_t>(avail - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      edges.emplace_back(pool[static_cast<std::size_t>(i)], v);
    }
  }
  return RadioNetwork::from_edges(n, edges, 1);
}

}  // namespace radiosync
