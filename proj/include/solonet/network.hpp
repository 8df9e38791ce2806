#pragma once

// Directed weighted note-transition network and its undirected projection.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "solonet/error.hpp"
#include "solonet/ingest.hpp"
#include "solonet/note_event.hpp"

namespace solonet {

using NodeIndex = std::size_t;
using EdgeMap = std::map<std::pair<NodeIndex, NodeIndex>, std::uint64_t>;

// Nodes are the distinct NodeKeys in ascending order; edges are keyed by
// (source, target) indices into that list. Immutable once built.
class SoloNetwork {
 public:
  SoloNetwork() = default;

  // Checks every structural invariant; throws FormatError on violation.
  SoloNetwork(std::vector<NodeKey> nodes, EdgeMap edges, std::size_t event_count, NodeIndex start)
      : nodes_(std::move(nodes)), edges_(std::move(edges)), event_count_(event_count), start_(start) {
    if (nodes_.empty()) throw FormatError("network has no nodes");
    for (std::size_t i = 1; i < nodes_.size(); ++i)
      if (!(nodes_[i - 1] < nodes_[i])) throw FormatError("network nodes not strictly ascending");
    if (start_ >= nodes_.size()) throw FormatError("network start node out of range");
    std::uint64_t total = 0;
    for (const auto& [st, w] : edges_) {
      if (st.first >= nodes_.size() || st.second >= nodes_.size()) throw FormatError("edge endpoint out of range");
      if (w < 1) throw FormatError("edge weight must be >= 1");
      total += w;
    }
    if (event_count_ < 1 || total != event_count_ - 1)
      throw FormatError("edge weights sum to " + std::to_string(total) + " but event_count is " +
                        std::to_string(event_count_));
  }

  const std::vector<NodeKey>& nodes() const noexcept { return nodes_; }
  const EdgeMap& edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t event_count() const noexcept { return event_count_; }
  // Node of the source solo's first event.
  NodeIndex start() const noexcept { return start_; }

  std::optional<NodeIndex> index_of(const NodeKey& key) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), key);
    if (it == nodes_.end() || !(*it == key)) return std::nullopt;
    return static_cast<NodeIndex>(it - nodes_.begin());
  }

  std::uint64_t weight(NodeIndex s, NodeIndex t) const {
    auto it = edges_.find({s, t});
    return it == edges_.end() ? 0 : it->second;
  }

  // (target, weight) pairs leaving `s`, ascending by target.
  std::vector<std::pair<NodeIndex, std::uint64_t>> out_edges(NodeIndex s) const {
    std::vector<std::pair<NodeIndex, std::uint64_t>> out;
    for (auto it = edges_.lower_bound({s, 0}); it != edges_.end() && it->first.first == s; ++it)
      out.emplace_back(it->first.second, it->second);
    return out;
  }

  friend bool operator==(const SoloNetwork&, const SoloNetwork&) = default;

 private:
  std::vector<NodeKey> nodes_;
  EdgeMap edges_;
  std::size_t event_count_ = 0;
  NodeIndex start_ = 0;
};

inline SoloNetwork build_network(std::span<const NoteEvent> events) {
  if (events.empty()) throw EmptySoloError("cannot build a network from an empty solo");
  std::vector<NodeKey> nodes;
  nodes.reserve(events.size());
  for (const auto& e : events) nodes.push_back(e.key());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto index = [&](const NoteEvent& e) {
    return static_cast<NodeIndex>(std::lower_bound(nodes.begin(), nodes.end(), e.key()) - nodes.begin());
  };
  std::vector<NodeIndex> seq;
  seq.reserve(events.size());
  for (const auto& e : events) seq.push_back(index(e));

  EdgeMap edges;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) ++edges[{seq[i], seq[i + 1]}];
  return SoloNetwork(std::move(nodes), std::move(edges), events.size(), seq.front());
}

// Simple undirected graph on nodes 0..n-1; adjacency lists kept sorted.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(std::size_t n) : adj_(n) {}

  // Builds from an edge list; self-loops and duplicates are dropped.
  static UndirectedGraph from_edges(std::size_t n, std::span<const std::pair<NodeIndex, NodeIndex>> edges) {
    UndirectedGraph g(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw ArgumentError("edge endpoint out of range");
      if (u == v) continue;
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    for (auto& a : g.adj_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return g;
  }

  std::size_t node_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& a : adj_) twice += a.size();
    return twice / 2;
  }
  std::span<const NodeIndex> neighbors(NodeIndex v) const { return adj_[v]; }
  std::size_t degree(NodeIndex v) const { return adj_[v].size(); }
  bool adjacent(NodeIndex u, NodeIndex v) const { return std::binary_search(adj_[u].begin(), adj_[u].end(), v); }

  // Each edge once, as (u, v) with u < v, in ascending order.
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const {
    std::vector<std::pair<NodeIndex, NodeIndex>> out;
    for (NodeIndex u = 0; u < adj_.size(); ++u)
      for (NodeIndex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

 private:
  std::vector<std::vector<NodeIndex>> adj_;
};

// Drops direction, merges anti-parallel edges, removes self-loops.
inline UndirectedGraph undirected_projection(const SoloNetwork& net) {
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  edges.reserve(net.edge_count());
  for (const auto& [st, w] : net.edges()) edges.push_back(st);
  return UndirectedGraph::from_edges(net.node_count(), edges);
}

// {"nodes":[{pitches,duration},...],"edges":[{"s":i,"t":j,"w":n},...],"event_count":N,"start":i}
inline nlohmann::json network_to_json(const SoloNetwork& net) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& k : net.nodes()) nodes.push_back(key_to_json(k.pitches, k.duration));
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [st, w] : net.edges()) edges.push_back({{"s", st.first}, {"t", st.second}, {"w", w}});
  return {{"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"event_count", net.event_count()},
          {"start", net.start()}};
}

inline SoloNetwork network_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array() || !j.contains("edges") ||
      !j["edges"].is_array())
    throw FormatError("network JSON must be an object with 'nodes' and 'edges' arrays");
  std::vector<NodeKey> nodes;
  for (const auto& n : j["nodes"]) nodes.push_back(key_from_json(n));
  EdgeMap edges;
  std::uint64_t total = 0;
  for (const auto& e : j["edges"]) {
    if (!e.is_object() || !e.contains("s") || !e.contains("t") || !e.contains("w") ||
        !e["s"].is_number_unsigned() || !e["t"].is_number_unsigned() || !e["w"].is_number_unsigned())
      throw FormatError("edge must be {\"s\":int,\"t\":int,\"w\":int} with non-negative values");
    auto [it, inserted] = edges.emplace(std::pair{e["s"].get<NodeIndex>(), e["t"].get<NodeIndex>()},
                                        e["w"].get<std::uint64_t>());
    if (!inserted) throw FormatError("duplicate edge in network JSON");
    total += it->second;
  }
  auto get_index = [&](const char* k, std::size_t fallback) -> std::size_t {
    if (!j.contains(k)) return fallback;
    if (!j[k].is_number_unsigned()) throw FormatError(std::string("'") + k + "' must be a non-negative integer");
    return j[k].get<std::size_t>();
  };
  return SoloNetwork(std::move(nodes), std::move(edges), get_index("event_count", total + 1), get_index("start", 0));
}

}  // namespace solonet
