#include <cmath>
#include <cstring>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace solonet {
namespace {

TEST(SampleEr, ForcedCompleteGraph) {
  std::mt19937_64 rng(1);
  const auto g = sample_er_graph(4, 6, rng);
  EXPECT_EQ(g.edge_count(), 6u);
  EXPECT_EQ(clustering_coefficient(g), 1.0);
  EXPECT_EQ(average_distance(g).avg_distance, 1.0);
}

TEST(SampleEr, NoEdges) {
  std::mt19937_64 rng(1);
  const auto g = sample_er_graph(5, 0, rng);
  EXPECT_EQ(g.node_count(), 5u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(SampleEr, TooManyEdgesIsArgumentError) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(sample_er_graph(4, 7, rng), ArgumentError);
  EXPECT_THROW(sample_er_graph(1, 1, rng), ArgumentError);
  EXPECT_THROW(null_stats(4, 7, 10, 0), ArgumentError);
  EXPECT_THROW(null_stats(4, 3, 0, 0), ArgumentError);
}

TEST(SampleEr, ExactEdgeCountSimpleGraph) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 40;
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, max_edges(n))(rng);
    const auto g = sample_er_graph(n, m, rng);
    ASSERT_EQ(g.node_count(), n);
    const auto edges = g.edges();
    ASSERT_EQ(edges.size(), m);
    std::set<std::pair<NodeIndex, NodeIndex>> distinct;
    for (auto [u, v] : edges) {
      EXPECT_LT(u, v);
      EXPECT_LT(v, n);
      distinct.insert({u, v});
    }
    EXPECT_EQ(distinct.size(), m);
  }
}

TEST(SampleEr, EdgeFrequenciesNearUniform) {
  constexpr std::size_t n = 12, m = 20, samples = 4000;
  const double p = static_cast<double>(m) / static_cast<double>(max_edges(n));
  const double sigma = std::sqrt(p * (1 - p) / samples);
  std::map<std::pair<NodeIndex, NodeIndex>, std::size_t> counts;
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = sample_stream(2024, i);
    for (auto e : sample_er_graph(n, m, rng).edges()) ++counts[e];
  }
  ASSERT_EQ(counts.size(), max_edges(n));
  for (const auto& [e, c] : counts) EXPECT_NEAR(static_cast<double>(c) / samples, p, 3 * sigma);
}

TEST(NullStats, CompleteGraphIsDeterministic) {
  const auto s = null_stats(4, 6, 25, 3);
  EXPECT_EQ(s.c_rg_mean, 1.0);
  EXPECT_EQ(s.l_rg_mean, 1.0);
  EXPECT_EQ(s.c_rg_std, 0.0);
  EXPECT_EQ(s.l_rg_std, 0.0);
}

TEST(NullStats, HalfDensityClusteringNearHalf) {
  const auto s = null_stats(40, 390, 100, 11);
  EXPECT_DOUBLE_EQ(s.c_rg_analytic, 0.5);
  EXPECT_NEAR(s.c_rg_mean, 0.5, 0.02);
}

TEST(NullStats, SoloSizedBaselineNearAnalytic) {
  // 62 nodes and 150 edges: the scale of a mid-length solo network.
  const auto s = null_stats(62, 150, 200, 5);
  EXPECT_NEAR(s.c_rg_mean, s.c_rg_analytic, 0.02);
  EXPECT_GT(s.c_rg_std, 0.0);
  EXPECT_FALSE(std::isnan(s.l_rg_mean));
}

TEST(NullStats, AnalyticValues) {
  const auto s = null_stats(40, 156, 1, 0);
  EXPECT_DOUBLE_EQ(s.c_rg_analytic, 312.0 / 1560.0);
  EXPECT_DOUBLE_EQ(s.l_rg_analytic, std::log(40.0) / std::log(7.8));
  EXPECT_TRUE(std::isnan(null_stats(10, 5, 1, 0).l_rg_analytic));
}

TEST(NullStats, FixedSeedIsBitIdentical) {
  const auto a = null_stats(30, 60, 40, 99);
  const auto b = null_stats(30, 60, 40, 99);
  for (auto [x, y] : {std::pair{a.c_rg_mean, b.c_rg_mean}, std::pair{a.c_rg_std, b.c_rg_std},
                      std::pair{a.l_rg_mean, b.l_rg_mean}, std::pair{a.l_rg_std, b.l_rg_std}})
    EXPECT_EQ(std::memcmp(&x, &y, sizeof x), 0);
  EXPECT_EQ(null_stats_to_json(a).dump(), null_stats_to_json(b).dump());
  EXPECT_NE(null_stats(30, 60, 40, 100).c_rg_mean, a.c_rg_mean);
}

TEST(NullStats, CoversRangeOfDensities) {
  for (std::size_t m : {0u, 10u, 45u}) {
    const auto s = null_stats(10, m, 20, 7);
    EXPECT_GE(s.c_rg_mean, 0.0);
    EXPECT_LE(s.c_rg_mean, 1.0);
  }
  EXPECT_TRUE(std::isnan(null_stats(10, 0, 5, 7).l_rg_mean));
}

struct Row {
  const char* name;
  double c, c_rg, l, l_rg;
  bool small_world;
};

// Published clustering and distance values with the narrative verdicts.
constexpr Row kPublished[] = {
    {"Rock me baby", 0.41, 0.11, 2.17, 3.26, false},
    {"Comfortably numb", 0.06, 0.03, 4.30, 4.03, false},
    {"Crossroads", 0.40, 0.04, 3.68, 4.29, true},
    {"Red House", 0.24, 0.02, 3.37, 5.00, true},
};

TEST(SmallWorld, PublishedRows) {
  for (const auto& row : kPublished) {
    SCOPED_TRACE(row.name);
    const auto v = classify_small_world(row.c, row.l, row.c_rg, row.l_rg);
    EXPECT_EQ(v.is_small_world, row.small_world);
    EXPECT_DOUBLE_EQ(v.c_ratio, row.c / row.c_rg);
    EXPECT_DOUBLE_EQ(v.l_ratio, row.l / row.l_rg);
  }
  EXPECT_NEAR(classify_small_world(0.40, 3.68, 0.04, 4.29).l_ratio, 0.858, 1e-3);
  EXPECT_NEAR(classify_small_world(0.41, 2.17, 0.11, 3.26).c_ratio, 3.73, 1e-2);
}

TEST(SmallWorld, RuleAndMonotonicity) {
  const SmallWorldThresholds th;
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unit(0.01, 1.0), dist(0.5, 8.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double c = unit(rng), c_rg = unit(rng) / 5, l = dist(rng), l_rg = dist(rng);
    const auto v = classify_small_world(c, l, c_rg, l_rg, th);
    EXPECT_EQ(v.is_small_world, v.c_ratio >= th.clustering_ratio && v.l_ratio <= th.distance_ratio);
    if (v.is_small_world) {
      EXPECT_TRUE(classify_small_world(c * 1.5, l, c_rg, l_rg, th).is_small_world);
    } else {
      EXPECT_FALSE(classify_small_world(c, l * 1.5, c_rg, l_rg, th).is_small_world);
    }
  }
}

TEST(SmallWorld, CustomThresholdsAreRecorded) {
  const auto v = classify_small_world(0.41, 2.17, 0.11, 3.26, SmallWorldThresholds{3.0, 1.0});
  EXPECT_TRUE(v.is_small_world);
  const auto j = verdict_to_json(v);
  EXPECT_EQ(j["theta_c"], 3.0);
  EXPECT_EQ(j["theta_l"], 1.0);
  EXPECT_EQ(j["is_small_world"], true);
}

TEST(SmallWorld, DegenerateBaseline) {
  EXPECT_THROW(classify_small_world(0.3, 2.0, 0.0, 3.0), DegenerateBaselineError);
  EXPECT_THROW(classify_small_world(0.3, 2.0, 0.1, kUndefined), DegenerateBaselineError);
  const auto s = null_stats(10, 3, 10, 1);  // too sparse for any triangle
  MetricsReport r;
  r.clustering_coefficient = 0.5;
  r.avg_distance = 2;
  EXPECT_THROW(classify_small_world(r, s), DegenerateBaselineError);
}

}  // namespace
}  // namespace solonet
