#pragma once

// Per-performer aggregation of solo metrics: raw per-track values plus mean
// and sample standard deviation, with CSV / JSON / plot-data emitters.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solonet/error.hpp"
#include "solonet/ingest.hpp"
#include "solonet/metrics.hpp"
#include "solonet/network.hpp"

namespace solonet {

inline constexpr std::size_t kCorpusMetricCount = 6;
inline constexpr std::array<const char*, kCorpusMetricCount> kCorpusMetrics = {
    "solo_length", "node_count", "mean_degree", "mean_weighted_degree", "avg_distance", "clustering_coefficient"};

using MetricValues = std::array<double, kCorpusMetricCount>;

inline MetricValues corpus_values(const MetricsReport& r) {
  return {static_cast<double>(r.solo_length), static_cast<double>(r.node_count), r.mean_degree,
          r.mean_weighted_degree,             r.avg_distance,                    r.clustering_coefficient};
}

struct TrackMetrics {
  std::string performer;
  std::string title;
  MetricsReport report;
};

struct Summary {
  double mean = kUndefined;
  double sample_std = kUndefined;  // n - 1 denominator; undefined for a single track
};

struct TrackRow {
  std::string title;
  MetricValues values{};
};

struct PerformerGroup {
  std::string performer;
  std::vector<TrackRow> tracks;  // input order
  std::array<Summary, kCorpusMetricCount> summary;

  std::vector<double> values(std::size_t metric) const {
    std::vector<double> out;
    for (const auto& t : tracks) out.push_back(t.values[metric]);
    return out;
  }
};

struct CorpusAggregate {
  std::vector<PerformerGroup> performers;  // alphabetical
};

// Reads, extracts and measures every manifest entry, in manifest order.
inline std::vector<TrackMetrics> analyze_manifest(const Manifest& manifest) {
  std::vector<TrackMetrics> out;
  out.reserve(manifest.size());
  for (const auto& entry : manifest) {
    try {
      const auto events = extract_events(parse_score(read_file(entry.file)), entry.selection);
      out.push_back(TrackMetrics{entry.performer, entry.title, full_report(events, build_network(events))});
    } catch (const Error& e) {
      throw FormatError(entry.file.string() + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<std::string> manifest_performers(const Manifest& manifest) {
  std::vector<std::string> names;
  for (const auto& e : manifest)
    if (std::find(names.begin(), names.end(), e.performer) == names.end()) names.push_back(e.performer);
  return names;
}

inline Summary summarize(std::span<const double> xs) {
  Summary s;
  if (xs.empty()) return s;
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() >= 2) {
    double sq = 0;
    for (double x : xs) sq += (x - s.mean) * (x - s.mean);
    s.sample_std = std::sqrt(sq / static_cast<double>(xs.size() - 1));
  }
  return s;
}

// `expected_performers`, when given, must each own at least one track.
inline CorpusAggregate aggregate(std::span<const TrackMetrics> tracks,
                                 std::span<const std::string> expected_performers = {}) {
  std::map<std::string, PerformerGroup> groups;
  for (const auto& name : expected_performers) groups[name].performer = name;
  for (const auto& t : tracks) {
    auto& g = groups[t.performer];
    g.performer = t.performer;
    g.tracks.push_back(TrackRow{t.title, corpus_values(t.report)});
  }
  CorpusAggregate agg;
  for (auto& [name, g] : groups) {
    if (g.tracks.empty()) throw EmptyGroupError("performer '" + name + "' has no tracks");
    for (std::size_t m = 0; m < kCorpusMetricCount; ++m) {
      const auto vs = g.values(m);
      g.summary[m] = summarize(vs);
    }
    agg.performers.push_back(std::move(g));
  }
  return agg;
}

inline bool same_real(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

inline bool operator==(const CorpusAggregate& a, const CorpusAggregate& b) {
  if (a.performers.size() != b.performers.size()) return false;
  for (std::size_t i = 0; i < a.performers.size(); ++i) {
    const auto& pa = a.performers[i];
    const auto& pb = b.performers[i];
    if (pa.performer != pb.performer || pa.tracks.size() != pb.tracks.size()) return false;
    for (std::size_t t = 0; t < pa.tracks.size(); ++t) {
      if (pa.tracks[t].title != pb.tracks[t].title) return false;
      for (std::size_t m = 0; m < kCorpusMetricCount; ++m)
        if (!same_real(pa.tracks[t].values[m], pb.tracks[t].values[m])) return false;
    }
    for (std::size_t m = 0; m < kCorpusMetricCount; ++m)
      if (!same_real(pa.summary[m].mean, pb.summary[m].mean) ||
          !same_real(pa.summary[m].sample_std, pb.summary[m].sample_std))
        return false;
  }
  return true;
}

enum class ReportFormat { csv, json, plot_data };

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// Header: kind,performer,track,count,<metric>...,<metric>_std...
// One "track" row per solo, then one "summary" row per performer holding mean and sample std.
inline std::string corpus_csv(const CorpusAggregate& agg) {
  std::string out = "kind,performer,track,count";
  for (const char* m : kCorpusMetrics) out += std::string(",") + m;
  for (const char* m : kCorpusMetrics) out += std::string(",") + m + "_std";
  out += "\n";
  for (const auto& g : agg.performers) {
    for (const auto& t : g.tracks) {
      out += "track," + detail::csv_field(g.performer) + "," + detail::csv_field(t.title) + ",1";
      for (double v : t.values) out += "," + format_real(v);
      for (std::size_t m = 0; m < kCorpusMetricCount; ++m) out += ",";
      out += "\n";
    }
  }
  for (const auto& g : agg.performers) {
    out += "summary," + detail::csv_field(g.performer) + ",," + std::to_string(g.tracks.size());
    for (const auto& s : g.summary) out += "," + format_real(s.mean);
    for (const auto& s : g.summary) out += "," + format_real(s.sample_std);
    out += "\n";
  }
  return out;
}

inline nlohmann::json corpus_to_json(const CorpusAggregate& agg) {
  nlohmann::json performers = nlohmann::json::array();
  for (const auto& g : agg.performers) {
    nlohmann::json tracks = nlohmann::json::array();
    for (const auto& t : g.tracks) {
      nlohmann::json values = nlohmann::json::object();
      for (std::size_t m = 0; m < kCorpusMetricCount; ++m) values[kCorpusMetrics[m]] = json_real(t.values[m]);
      tracks.push_back({{"title", t.title}, {"values", std::move(values)}});
    }
    nlohmann::json summary = nlohmann::json::object();
    for (std::size_t m = 0; m < kCorpusMetricCount; ++m)
      summary[kCorpusMetrics[m]] = {{"mean", json_real(g.summary[m].mean)},
                                    {"std", json_real(g.summary[m].sample_std)},
                                    {"count", g.tracks.size()}};
    performers.push_back({{"performer", g.performer}, {"tracks", std::move(tracks)}, {"summary", std::move(summary)}});
  }
  nlohmann::json metrics = nlohmann::json::array();
  for (const char* m : kCorpusMetrics) metrics.push_back(m);
  return {{"metrics", std::move(metrics)}, {"performers", std::move(performers)}};
}

inline CorpusAggregate corpus_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("performers") || !j["performers"].is_array())
    throw FormatError("corpus JSON must hold a 'performers' array");
  CorpusAggregate agg;
  try {
    for (const auto& pj : j["performers"]) {
      PerformerGroup g;
      g.performer = pj.at("performer").get<std::string>();
      for (const auto& tj : pj.at("tracks")) {
        TrackRow row;
        row.title = tj.at("title").get<std::string>();
        for (std::size_t m = 0; m < kCorpusMetricCount; ++m) row.values[m] = real_from_json(tj.at("values").at(kCorpusMetrics[m]));
        g.tracks.push_back(std::move(row));
      }
      for (std::size_t m = 0; m < kCorpusMetricCount; ++m) {
        const auto& sj = pj.at("summary").at(kCorpusMetrics[m]);
        g.summary[m].mean = real_from_json(sj.at("mean"));
        g.summary[m].sample_std = real_from_json(sj.at("std"));
      }
      agg.performers.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("corpus JSON: ") + e.what());
  }
  return agg;
}

// One block per metric, separated by two blank lines. Columns:
//   performer_index  x  value  mean  std  "performer"
// performer_index is 1-based; x spreads a performer's tracks over index +- 0.25.
inline std::string corpus_plot_data(const CorpusAggregate& agg) {
  std::string out;
  for (std::size_t m = 0; m < kCorpusMetricCount; ++m) {
    if (m) out += "\n\n";
    out += std::string("# metric: ") + kCorpusMetrics[m] + "\n";
    out += "# performer_index x value mean std performer\n";
    for (std::size_t p = 0; p < agg.performers.size(); ++p) {
      const auto& g = agg.performers[p];
      const double count = static_cast<double>(g.tracks.size());
      for (std::size_t t = 0; t < g.tracks.size(); ++t) {
        const double x = static_cast<double>(p + 1) + 0.5 * ((static_cast<double>(t) + 1.0) / (count + 1.0) - 0.5);
        out += std::to_string(p + 1) + " " + format_real(x) + " " + format_real(g.tracks[t].values[m]) + " " +
               format_real(g.summary[m].mean) + " " + format_real(g.summary[m].sample_std) + " \"" + g.performer +
               "\"\n";
      }
    }
  }
  return out;
}

inline std::string emit_report(const CorpusAggregate& agg, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: return corpus_csv(agg);
    case ReportFormat::json: return corpus_to_json(agg).dump(2) + "\n";
    case ReportFormat::plot_data: return corpus_plot_data(agg);
  }
  return {};
}

}  // namespace solonet
