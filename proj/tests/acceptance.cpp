// Acceptance run: one PASS/FAIL line per criterion, with wall time against its budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "test_support.hpp"

namespace {

using namespace solonet;
namespace fs = std::filesystem;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s  %d. %-34s %7.3f s (limit %g s)  %s%s\n", pass ? "PASS" : "FAIL", id, name, secs, budget_s,
              o.detail.c_str(), in_time ? "" : " [over time]");
  std::fflush(stdout);
}

std::vector<std::string> xml_fixtures() {
  std::vector<std::string> out{testing::fixture("two_measures.xml")};
  for (const auto& e : fs::directory_iterator(testing::fixture("corpus")))
    if (e.path().extension() == ".xml") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NoteEvent> whole_file(const std::string& doc) {
  const auto score = parse_score(doc);
  const int last = *score.parts.at(0).measures.back().numeric_number;
  return extract_events(score, SoloSelection{score.parts[0].id, {{1, last}}, std::nullopt});
}

}  // namespace

int main() {
  criterion(1, "published small-world verdicts", 1, [] {
    struct Row {
      const char* name;
      double c, c_rg, l, l_rg;
      bool expected;
    };
    const Row rows[] = {{"Crossroads", 0.40, 0.04, 3.68, 4.29, true},
                        {"Red House", 0.24, 0.02, 3.37, 5.00, true},
                        {"Rock me baby", 0.41, 0.11, 2.17, 3.26, false},
                        {"Comfortably numb", 0.06, 0.03, 4.30, 4.03, false}};
    Outcome o;
    for (const auto& r : rows) {
      const bool got = classify_small_world(r.c, r.l, r.c_rg, r.l_rg).is_small_world;
      o.ok = o.ok && got == r.expected;
      o.detail += std::string(r.name) + "=" + (got ? "true " : "false ");
    }
    return o;
  });

  criterion(2, "clustering vs triple enumeration", 10, [] {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> size(1, 25);
    std::uniform_real_distribution<double> density(0, 1);
    std::size_t mismatches = 0;
    for (int i = 0; i < 200; ++i) {
      const auto a = testing::random_matrix(rng, size(rng), density(rng));
      const auto s = clustering_stats(testing::to_graph(a));
      const auto [closed, triplets] = testing::brute_force_transitivity(a);
      // Same ratio: 3T/t == closed/triplets, compared as integers.
      if (s.triplets != triplets || 3 * s.triangles != closed) ++mismatches;
    }
    return Outcome{mismatches == 0, "200 graphs, mismatches=" + std::to_string(mismatches)};
  });

  criterion(3, "BFS distances vs Floyd-Warshall", 10, [] {
    std::mt19937_64 rng(103);
    std::uniform_int_distribution<std::size_t> size(1, 30);
    std::uniform_real_distribution<double> density(0, 0.3);
    std::size_t mismatches = 0, disconnected = 0;
    for (int i = 0; i < 100; ++i) {
      const auto a = testing::random_matrix(rng, size(rng), density(rng));
      const auto s = average_distance(testing::to_graph(a));
      const auto fw = testing::floyd_warshall(a);
      if (s.distance_sum != fw.distance_sum || s.reachable_pairs != fw.reachable_pairs ||
          s.total_pairs != fw.total_pairs)
        ++mismatches;
      if (fw.reachable_pairs < fw.total_pairs) ++disconnected;
    }
    return Outcome{mismatches == 0,
                   "100 graphs (" + std::to_string(disconnected) + " disconnected), mismatches=" +
                       std::to_string(mismatches)};
  });

  criterion(4, "transition weight conservation", 5, [] {
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<std::size_t> len(1, 300);
    std::uniform_int_distribution<int> alphabet(1, 20);
    std::size_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto events = testing::random_events(rng, len(rng), alphabet(rng));
      const auto net = build_network(events);
      std::uint64_t sum = 0, wdeg = 0;
      for (const auto& [st, w] : net.edges()) sum += w;
      for (auto w : weighted_degrees(net)) wdeg += w;
      const double expected_mean = 2.0 * static_cast<double>(events.size() - 1) / static_cast<double>(net.node_count());
      if (sum != events.size() - 1 || wdeg != 2 * (events.size() - 1) ||
          full_report(events, net).mean_weighted_degree != expected_mean)
        ++bad;
    }
    return Outcome{bad == 0, "1000 sequences, violations=" + std::to_string(bad)};
  });

  criterion(5, "null-model clustering calibration", 30, [] {
    const auto s = null_stats(40, 156, 500, 20240611);
    const double err = std::fabs(s.c_rg_mean - s.c_rg_analytic);
    return Outcome{err <= 0.02 && s.c_rg_analytic == 2.0 * 156 / (40.0 * 39.0),
                   "c_rg_mean=" + format_real(s.c_rg_mean) + " analytic=" + format_real(s.c_rg_analytic) +
                       " |diff|=" + format_real(err) + " tol=0.02"};
  });

  criterion(6, "G(n,m) edge uniformity", 30, [] {
    constexpr std::size_t n = 12, m = 20, samples = 10000;
    const double p = 20.0 / 66.0;
    const double bound = 3 * std::sqrt(p * (1 - p) / samples);
    std::vector<std::size_t> counts(n * n, 0);
    for (std::size_t i = 0; i < samples; ++i) {
      auto rng = sample_stream(42, i);
      for (auto [u, v] : sample_er_graph(n, m, rng).edges()) ++counts[u * n + v];
    }
    double worst = 0;
    std::size_t outside = 0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) {
        const double dev = std::fabs(static_cast<double>(counts[u * n + v]) / samples - p);
        worst = std::max(worst, dev);
        if (dev > bound) ++outside;
      }
    return Outcome{outside == 0, "66 edges, outside 3 sigma=" + std::to_string(outside) +
                                     " worst |f-p|=" + format_real(worst) + " bound=" + format_real(bound)};
  });

  criterion(7, "MusicXML ingest round trip", 5, [] {
    std::size_t bad = 0, files = 0, events = 0;
    for (const auto& f : xml_fixtures()) {
      const auto original = whole_file(read_file(f));
      ++files;
      events += original.size();
      if (whole_file(emit_musicxml(original)) != original) ++bad;
    }
    return Outcome{bad == 0 && files >= 7, std::to_string(files) + " fixtures, " + std::to_string(events) +
                                               " events, mismatched files=" + std::to_string(bad)};
  });

  criterion(8, "walk validity and reproducibility", 10, [] {
    std::vector<SoloNetwork> nets;
    for (const auto& f : xml_fixtures()) nets.push_back(build_network(whole_file(read_file(f))));
    std::size_t invalid = 0, unstable = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto& net = nets[i % nets.size()];
      WalkConfig cfg;
      cfg.length = 1 + (i * 37) % 200;
      cfg.seed = 1000 + i;
      cfg.dead_end_policy = i % 2 ? DeadEndPolicy::stop : DeadEndPolicy::restart_at_start;
      const auto w = random_walk(net, cfg);
      std::size_t r = 0;
      for (std::size_t k = 1; k < w.events.size(); ++k) {
        if (r < w.restarts.size() && w.restarts[r] == k) {
          ++r;
          continue;
        }
        const auto a = net.index_of(w.events[k - 1].key()), b = net.index_of(w.events[k].key());
        if (!a || !b || net.weight(*a, *b) == 0) ++invalid;
      }
      if (events_to_json(random_walk(net, cfg).events).dump() != events_to_json(w.events).dump()) ++unstable;
    }
    return Outcome{invalid == 0 && unstable == 0, "1000 walks, invalid steps=" + std::to_string(invalid) +
                                                      " non-reproducible=" + std::to_string(unstable)};
  });

  criterion(9, "end-to-end report determinism", 10, [] {
    const auto root = fs::temp_directory_path() / ("solonet_acceptance_" + std::to_string(std::random_device{}()));
    const std::string manifest = testing::fixture("corpus/manifest.json");
    std::string bytes[2][2];
    Outcome o;
    for (int run = 0; run < 2; ++run) {
      const auto out = (root / std::to_string(run)).string();
      for (int k = 0; k < 2; ++k) {
        std::ostringstream sout, serr;
        const int code = cli::run({"report", manifest, "-o", out, "--format", k ? "json" : "csv"}, sout, serr);
        if (code != 0) o = {false, serr.str()};
        bytes[run][k] = read_file(out + (k ? "/report.json" : "/report.csv"));
      }
    }
    fs::remove_all(root);
    if (!o.ok) return o;
    o.ok = bytes[0][0] == bytes[1][0] && bytes[0][1] == bytes[1][1] && !bytes[0][0].empty();
    o.detail = "csv " + std::to_string(bytes[0][0].size()) + " B, json " + std::to_string(bytes[0][1].size()) +
               " B, identical=" + (o.ok ? "yes" : "no");
    return o;
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
