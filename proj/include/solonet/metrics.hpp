#pragma once

// Per-solo network measurements: length, node count, degrees, distances on
// the undirected projection, and global clustering (transitivity).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solonet/error.hpp"
#include "solonet/network.hpp"

namespace solonet {

inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

// Shortest round-trip decimal form; "nan" for undefined values.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

// JSON null stands for an undefined real.
inline nlohmann::json json_real(double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); }

inline double real_from_json(const nlohmann::json& j) {
  if (j.is_null()) return kUndefined;
  if (!j.is_number()) throw FormatError("expected a number or null");
  return j.get<double>();
}

inline std::size_t solo_length(std::span<const NoteEvent> events) noexcept { return events.size(); }

struct DegreeStats {
  double mean_degree = 0;
  double mean_in_degree = 0;
  double mean_out_degree = 0;
  std::map<std::size_t, std::size_t> histogram;  // total degree -> node count
  std::vector<std::size_t> in_degree;
  std::vector<std::size_t> out_degree;
};

// Distinct-edge degrees. A self-loop counts once as in and once as out.
inline DegreeStats degree_stats(const SoloNetwork& net) {
  const std::size_t n = net.node_count();
  if (n == 0) throw UndefinedStatsError("degree statistics of an empty network");
  DegreeStats s;
  s.in_degree.assign(n, 0);
  s.out_degree.assign(n, 0);
  for (const auto& [st, w] : net.edges()) {
    ++s.out_degree[st.first];
    ++s.in_degree[st.second];
  }
  std::size_t in_total = 0, out_total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    in_total += s.in_degree[v];
    out_total += s.out_degree[v];
    ++s.histogram[s.in_degree[v] + s.out_degree[v]];
  }
  s.mean_in_degree = static_cast<double>(in_total) / static_cast<double>(n);
  s.mean_out_degree = static_cast<double>(out_total) / static_cast<double>(n);
  s.mean_degree = static_cast<double>(in_total + out_total) / static_cast<double>(n);
  return s;
}

// Per node: sum of weights on incoming plus outgoing edges.
inline std::vector<std::uint64_t> weighted_degrees(const SoloNetwork& net) {
  std::vector<std::uint64_t> wd(net.node_count(), 0);
  for (const auto& [st, w] : net.edges()) {
    wd[st.first] += w;
    wd[st.second] += w;
  }
  return wd;
}

inline double weighted_degree_stats(const SoloNetwork& net) {
  if (net.node_count() == 0) throw UndefinedStatsError("weighted degree of an empty network");
  std::uint64_t total = 0;
  for (auto w : weighted_degrees(net)) total += w;
  return static_cast<double>(total) / static_cast<double>(net.node_count());
}

struct DistanceStats {
  double avg_distance = 0;  // NaN when no pair is reachable
  double pair_coverage = 1;
  std::size_t component_count = 0;
  double largest_component_fraction = 0;
  // Exact terms behind the averages.
  std::uint64_t distance_sum = 0;
  std::uint64_t reachable_pairs = 0;
  std::uint64_t total_pairs = 0;
};

// BFS from every node; averages over reachable unordered pairs.
inline DistanceStats average_distance(const UndirectedGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw UndefinedStatsError("distances of an empty graph");
  DistanceStats s;
  s.total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;

  std::vector<std::size_t> component(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> component_size;
  std::vector<std::size_t> dist(n);
  std::deque<NodeIndex> queue;
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();

  for (NodeIndex src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[src] = 0;
    queue.assign(1, src);
    std::size_t reached = 0;
    while (!queue.empty()) {
      const NodeIndex u = queue.front();
      queue.pop_front();
      ++reached;
      if (u > src) {
        s.distance_sum += dist[u];
        ++s.reachable_pairs;
      }
      for (NodeIndex v : g.neighbors(u))
        if (dist[v] == kUnseen) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
    if (component[src] == kUnseen) {
      for (NodeIndex v = 0; v < n; ++v)
        if (dist[v] != kUnseen) component[v] = component_size.size();
      component_size.push_back(reached);
    }
  }

  s.component_count = component_size.size();
  s.largest_component_fraction =
      static_cast<double>(*std::max_element(component_size.begin(), component_size.end())) / static_cast<double>(n);
  if (n == 1) {
    s.avg_distance = 0;
    s.pair_coverage = 1;
  } else {
    s.pair_coverage = static_cast<double>(s.reachable_pairs) / static_cast<double>(s.total_pairs);
    s.avg_distance = s.reachable_pairs == 0
                         ? kUndefined
                         : static_cast<double>(s.distance_sum) / static_cast<double>(s.reachable_pairs);
  }
  return s;
}

struct ClusteringStats {
  std::uint64_t triangles = 0;
  std::uint64_t triplets = 0;  // paths of length two, counted at their centre
  double coefficient = 0;      // 3 * triangles / triplets; 0 when there are no triplets
};

inline ClusteringStats clustering_stats(const UndirectedGraph& g) {
  ClusteringStats s;
  const std::size_t n = g.node_count();
  for (NodeIndex v = 0; v < n; ++v) {
    const std::uint64_t d = g.degree(v);
    if (d >= 2) s.triplets += d * (d - 1) / 2;
  }
  // Each triangle u < v < w is found once from its smallest edge (u, v).
  for (NodeIndex u = 0; u < n; ++u) {
    const auto nu = g.neighbors(u);
    for (NodeIndex v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++s.triangles;
          ++a;
          ++b;
        }
      }
    }
  }
  s.coefficient = s.triplets == 0 ? 0.0 : 3.0 * static_cast<double>(s.triangles) / static_cast<double>(s.triplets);
  return s;
}

inline double clustering_coefficient(const UndirectedGraph& g) { return clustering_stats(g).coefficient; }

struct MetricsReport {
  std::size_t solo_length = 0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;             // distinct directed edges
  std::size_t undirected_edge_count = 0;  // edges of the projection
  double mean_degree = 0;
  double mean_in_degree = 0;
  double mean_out_degree = 0;
  double mean_weighted_degree = 0;
  std::map<std::size_t, std::size_t> degree_histogram;
  double avg_distance = 0;
  double distance_pair_coverage = 1;
  double clustering_coefficient = 0;
  std::size_t component_count = 1;
  double largest_component_fraction = 1;
};

// `solo_length` is the event count the network was built from.
inline MetricsReport full_report(const SoloNetwork& net) {
  MetricsReport r;
  r.solo_length = net.event_count();
  r.node_count = net.node_count();
  r.edge_count = net.edge_count();
  const auto deg = degree_stats(net);
  r.mean_degree = deg.mean_degree;
  r.mean_in_degree = deg.mean_in_degree;
  r.mean_out_degree = deg.mean_out_degree;
  r.degree_histogram = deg.histogram;
  r.mean_weighted_degree = weighted_degree_stats(net);
  const auto g = undirected_projection(net);
  r.undirected_edge_count = g.edge_count();
  const auto dist = average_distance(g);
  r.avg_distance = dist.avg_distance;
  r.distance_pair_coverage = dist.pair_coverage;
  r.component_count = dist.component_count;
  r.largest_component_fraction = dist.largest_component_fraction;
  r.clustering_coefficient = clustering_coefficient(g);
  return r;
}

inline MetricsReport full_report(std::span<const NoteEvent> events, const SoloNetwork& net) {
  MetricsReport r = full_report(net);
  r.solo_length = solo_length(events);
  return r;
}

// Column order of the CSV row; the histogram is emitted as "deg:count;deg:count".
inline constexpr const char* kMetricsCsvHeader =
    "solo_length,node_count,edge_count,undirected_edge_count,mean_degree,mean_in_degree,mean_out_degree,"
    "mean_weighted_degree,avg_distance,distance_pair_coverage,clustering_coefficient,component_count,"
    "largest_component_fraction,degree_histogram";

inline std::string metrics_csv_row(const MetricsReport& r) {
  std::string hist;
  for (const auto& [d, c] : r.degree_histogram) {
    if (!hist.empty()) hist += ';';
    hist += std::to_string(d) + ":" + std::to_string(c);
  }
  return std::to_string(r.solo_length) + "," + std::to_string(r.node_count) + "," + std::to_string(r.edge_count) +
         "," + std::to_string(r.undirected_edge_count) + "," + format_real(r.mean_degree) + "," +
         format_real(r.mean_in_degree) + "," + format_real(r.mean_out_degree) + "," +
         format_real(r.mean_weighted_degree) + "," + format_real(r.avg_distance) + "," +
         format_real(r.distance_pair_coverage) + "," + format_real(r.clustering_coefficient) + "," +
         std::to_string(r.component_count) + "," + format_real(r.largest_component_fraction) + "," + hist;
}

inline nlohmann::json metrics_to_json(const MetricsReport& r) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [d, c] : r.degree_histogram) hist[std::to_string(d)] = c;
  return {{"solo_length", r.solo_length},
          {"node_count", r.node_count},
          {"edge_count", r.edge_count},
          {"undirected_edge_count", r.undirected_edge_count},
          {"mean_degree", json_real(r.mean_degree)},
          {"mean_in_degree", json_real(r.mean_in_degree)},
          {"mean_out_degree", json_real(r.mean_out_degree)},
          {"mean_weighted_degree", json_real(r.mean_weighted_degree)},
          {"degree_histogram", std::move(hist)},
          {"avg_distance", json_real(r.avg_distance)},
          {"distance_pair_coverage", json_real(r.distance_pair_coverage)},
          {"clustering_coefficient", json_real(r.clustering_coefficient)},
          {"component_count", r.component_count},
          {"largest_component_fraction", json_real(r.largest_component_fraction)}};
}

}  // namespace solonet
