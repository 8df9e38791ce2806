#pragma once

// Size-matched G(n, m) baselines and the small-world verdict.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "solonet/error.hpp"
#include "solonet/metrics.hpp"
#include "solonet/network.hpp"

namespace solonet {

inline std::uint64_t max_edges(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// Uniform simple graph with exactly m edges. Edge slots are the pairs u < v in
// row-major order; Floyd's algorithm draws an m-subset of slot indices.
template <class URBG>
UndirectedGraph sample_er_graph(std::size_t n, std::size_t m, URBG& rng) {
  const std::uint64_t slots = max_edges(n);
  if (m > slots)
    throw ArgumentError("G(n,m) needs m <= n(n-1)/2, got n=" + std::to_string(n) + " m=" + std::to_string(m));

  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  for (std::uint64_t j = slots - m; j < slots; ++j) {
    const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> picked(chosen.begin(), chosen.end());
  std::sort(picked.begin(), picked.end());

  // Slot offset of row u is u*(2n-u-1)/2.
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  edges.reserve(m);
  NodeIndex u = 0;
  std::uint64_t row_start = 0;
  for (std::uint64_t k : picked) {
    while (k >= row_start + (n - 1 - u)) {
      row_start += n - 1 - u;
      ++u;
    }
    edges.emplace_back(u, static_cast<NodeIndex>(u + 1 + (k - row_start)));
  }
  return UndirectedGraph::from_edges(n, edges);
}

// Independent stream per sample so results do not depend on evaluation order.
inline std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t sample_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(sample_index), static_cast<std::uint32_t>(sample_index >> 32)};
  return std::mt19937_64(seq);
}

struct NullModelStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t samples = 0;
  double c_rg_mean = 0;
  double c_rg_std = 0;
  double l_rg_mean = 0;  // over samples with at least one reachable pair
  double l_rg_std = 0;
  double c_rg_analytic = 0;
  double l_rg_analytic = kUndefined;
  std::uint64_t seed = 0;
};

inline NullModelStats null_stats(std::size_t n, std::size_t m, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw ArgumentError("null model needs at least one sample");
  if (n < 1) throw ArgumentError("null model needs at least one node");
  if (m > max_edges(n))
    throw ArgumentError("G(n,m) needs m <= n(n-1)/2, got n=" + std::to_string(n) + " m=" + std::to_string(m));

  std::vector<double> cs, ls;
  cs.reserve(samples);
  ls.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = sample_stream(seed, i);
    const auto g = sample_er_graph(n, m, rng);
    cs.push_back(clustering_coefficient(g));
    const double l = average_distance(g).avg_distance;
    if (!std::isnan(l)) ls.push_back(l);
  }

  // Population standard deviation of the Monte Carlo sample.
  auto mean_std = [](const std::vector<double>& v) -> std::pair<double, double> {
    if (v.empty()) return {kUndefined, kUndefined};
    double sum = 0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double sq = 0;
    for (double x : v) sq += (x - mean) * (x - mean);
    return {mean, std::sqrt(sq / static_cast<double>(v.size()))};
  };

  NullModelStats s;
  s.n = n;
  s.m = m;
  s.samples = samples;
  s.seed = seed;
  std::tie(s.c_rg_mean, s.c_rg_std) = mean_std(cs);
  std::tie(s.l_rg_mean, s.l_rg_std) = mean_std(ls);
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  s.c_rg_analytic = n < 2 ? 0.0 : 2.0 * dm / (dn * (dn - 1.0));
  const double mean_deg = 2.0 * dm / dn;
  s.l_rg_analytic = mean_deg > 1.0 ? std::log(dn) / std::log(mean_deg) : kUndefined;
  return s;
}

struct SmallWorldThresholds {
  double clustering_ratio = 5.0;  // C / C_rg must reach this
  double distance_ratio = 1.25;   // L / L_rg must not exceed this
};

struct SmallWorldVerdict {
  double c_ratio = 0;
  double l_ratio = 0;
  bool is_small_world = false;
  SmallWorldThresholds thresholds;
};

// Core rule on already-measured values.
inline SmallWorldVerdict classify_small_world(double clustering, double distance, double c_rg, double l_rg,
                                              SmallWorldThresholds thresholds = {}) {
  if (!(c_rg > 0) || !(l_rg > 0))
    throw DegenerateBaselineError("random-graph baseline must have positive clustering and distance (got C_rg=" +
                                  format_real(c_rg) + ", L_rg=" + format_real(l_rg) + ")");
  SmallWorldVerdict v;
  v.thresholds = thresholds;
  v.c_ratio = clustering / c_rg;
  v.l_ratio = distance / l_rg;
  v.is_small_world = v.c_ratio >= thresholds.clustering_ratio && v.l_ratio <= thresholds.distance_ratio;
  return v;
}

inline SmallWorldVerdict classify_small_world(const MetricsReport& report, const NullModelStats& null,
                                              SmallWorldThresholds thresholds = {}) {
  return classify_small_world(report.clustering_coefficient, report.avg_distance, null.c_rg_mean, null.l_rg_mean,
                              thresholds);
}

inline nlohmann::json null_stats_to_json(const NullModelStats& s) {
  return {{"n", s.n},
          {"m", s.m},
          {"samples", s.samples},
          {"seed", s.seed},
          {"c_rg_mean", json_real(s.c_rg_mean)},
          {"c_rg_std", json_real(s.c_rg_std)},
          {"l_rg_mean", json_real(s.l_rg_mean)},
          {"l_rg_std", json_real(s.l_rg_std)},
          {"c_rg_analytic", json_real(s.c_rg_analytic)},
          {"l_rg_analytic", json_real(s.l_rg_analytic)}};
}

inline nlohmann::json verdict_to_json(const SmallWorldVerdict& v) {
  return {{"c_ratio", json_real(v.c_ratio)},
          {"l_ratio", json_real(v.l_ratio)},
          {"is_small_world", v.is_small_world},
          {"theta_c", v.thresholds.clustering_ratio},
          {"theta_l", v.thresholds.distance_ratio}};
}

}  // namespace solonet
