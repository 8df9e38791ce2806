#pragma once

// solonet command line. Kept in a header so tests can drive `run` in-process.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <nlohmann/json.hpp>

#include "solonet/solonet.hpp"

namespace solonet::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2 };

namespace detail {

inline void write_output(const std::string& path, const std::string& bytes, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << bytes;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw LookupError("cannot write '" + path + "'");
  f << bytes;
  if (!f) throw Error("failed writing '" + path + "'");
}

inline nlohmann::json load_json(const std::string& path) {
  try {
    return parse_json(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.offset());
  }
}

// Either a canonical solo JSON ({"events":...}) or a network JSON ({"nodes":...}).
struct SoloOrNetwork {
  std::optional<std::vector<NoteEvent>> events;
  SoloNetwork network;
};

inline SoloOrNetwork load_solo_or_network(const std::string& path) {
  const auto j = load_json(path);
  SoloOrNetwork out;
  try {
    if (j.is_object() && j.contains("events")) {
      out.events = events_from_json(j);
      out.network = build_network(*out.events);
    } else {
      out.network = network_from_json(j);
    }
  } catch (const Error& e) {
    throw FormatError(path + ": " + e.what());
  }
  return out;
}

inline SoloNetwork load_network(const std::string& path) {
  const auto j = load_json(path);
  try {
    return network_from_json(j);
  } catch (const Error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline NodeKey parse_start(const SoloNetwork& net, const std::string& text) {
  if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
    const auto idx = std::stoull(text);
    if (idx >= net.node_count()) throw LookupError("start node index " + text + " out of range");
    return net.nodes()[idx];
  }
  try {
    return parse_label(text);
  } catch (const FormatError& e) {
    throw ArgumentError(std::string("--start: ") + e.what());
  }
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Melody transition networks: ingest, measure, compare, generate", "solonet"};
  app.require_subcommand(1);

  std::string input, output, part, measures, voice, format = "";
  std::uint64_t seed = 0;
  std::size_t samples = 100, length = 64;
  double theta_c = SmallWorldThresholds{}.clustering_ratio;
  double theta_l = SmallWorldThresholds{}.distance_ratio;
  bool as_json = false, as_csv = false;
  std::string start, emit = "json", dead_end = "restart";

  auto* ingest = app.add_subcommand("ingest", "MusicXML -> canonical solo JSON");
  ingest->add_option("file", input, "partwise MusicXML file")->required();
  ingest->add_option("--part", part, "score-part id")->required();
  ingest->add_option("--measures", measures, "inclusive ranges, e.g. 1:8,12:16")->required();
  ingest->add_option("--voice", voice, "voice to keep (default: first voice in range)");
  ingest->add_option("-o,--output", output, "output path (default stdout)");

  auto* build = app.add_subcommand("build", "solo JSON -> network JSON");
  build->add_option("solo", input)->required();
  build->add_option("-o,--output", output);

  auto* exp = app.add_subcommand("export", "network JSON -> DOT or GraphML");
  exp->add_option("network", input)->required();
  exp->add_option("--format", format)->required()->check(CLI::IsMember({"dot", "graphml"}));
  exp->add_option("-o,--output", output);

  auto* metrics = app.add_subcommand("metrics", "per-solo network metrics");
  metrics->add_option("input", input, "solo JSON or network JSON")->required();
  auto* json_flag = metrics->add_flag("--json", as_json, "flat JSON (default)");
  metrics->add_flag("--csv", as_csv, "header plus one CSV row")->excludes(json_flag);
  metrics->add_option("-o,--output", output);

  auto* sw = app.add_subcommand("smallworld", "compare against size-matched G(n,m) graphs");
  sw->add_option("input", input, "network JSON, or {\"metrics\":...,\"null\":...} with precomputed values")
      ->required();
  sw->add_option("--samples", samples, "random graphs to sample")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 32));
  sw->add_option("--seed", seed)->envname("SOLONET_SEED");
  sw->add_option("--theta-c", theta_c, "minimum C/C_rg")->check(CLI::PositiveNumber);
  sw->add_option("--theta-l", theta_l, "maximum L/L_rg")->check(CLI::PositiveNumber);
  sw->add_option("-o,--output", output);

  auto* report = app.add_subcommand("report", "per-performer aggregation over a manifest");
  report->add_option("manifest", input)->required();
  report->add_option("-o,--output", output, "output directory")->required();
  report->add_option("--format", format)->required()->check(CLI::IsMember({"csv", "json", "plot_data"}));

  auto* walk = app.add_subcommand("walk", "generate events by weighted random walk");
  walk->add_option("network", input)->required();
  walk->add_option("--length", length)->check(CLI::Range(std::size_t{1}, std::size_t{1} << 32));
  walk->add_option("--seed", seed)->envname("SOLONET_SEED");
  walk->add_option("--start", start, "node index or label such as 60+64:1/8 or r:1/4");
  walk->add_option("--emit", emit)->check(CLI::IsMember({"json", "musicxml"}));
  walk->add_option("--dead-end", dead_end)->check(CLI::IsMember({"stop", "restart"}));
  walk->add_option("-o,--output", output);

  std::vector<const char*> argv{"solonet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "solonet: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*ingest) {
      SoloSelection sel{part, parse_measure_ranges(measures), std::nullopt};
      if (!voice.empty()) sel.voice = voice;
      sel.validate();
      std::vector<NoteEvent> events;
      try {
        events = extract_events(parse_score(read_file(input)), sel);
      } catch (const ArgumentError&) {
        throw;
      } catch (const ParseError& e) {
        throw ParseError(input + ": " + e.what(), e.offset());
      } catch (const Error& e) {
        throw FormatError(input + ": " + e.what());
      }
      detail::write_output(output, events_to_json(events).dump() + "\n", out);
    } else if (*build) {
      const auto j = detail::load_json(input);
      std::vector<NoteEvent> events;
      try {
        events = events_from_json(j);
      } catch (const Error& e) {
        throw FormatError(input + ": " + e.what());
      }
      detail::write_output(output, network_to_json(build_network(events)).dump() + "\n", out);
    } else if (*exp) {
      const auto net = detail::load_network(input);
      detail::write_output(output, export_graph(net, format == "dot" ? GraphFormat::dot : GraphFormat::graphml), out);
    } else if (*metrics) {
      const auto loaded = detail::load_solo_or_network(input);
      const auto r = loaded.events ? full_report(*loaded.events, loaded.network) : full_report(loaded.network);
      const std::string bytes = as_csv ? std::string(kMetricsCsvHeader) + "\n" + metrics_csv_row(r) + "\n"
                                       : metrics_to_json(r).dump(2) + "\n";
      detail::write_output(output, bytes, out);
    } else if (*sw) {
      const SmallWorldThresholds th{theta_c, theta_l};
      const auto j = detail::load_json(input);
      nlohmann::json result;
      if (j.is_object() && j.contains("metrics") && j.contains("null")) {
        double c, l, c_rg, l_rg;
        try {
          c = real_from_json(j["metrics"].at("clustering_coefficient"));
          l = real_from_json(j["metrics"].at("avg_distance"));
          c_rg = real_from_json(j["null"].at("c_rg_mean"));
          l_rg = real_from_json(j["null"].at("l_rg_mean"));
        } catch (const nlohmann::json::exception& e) {
          throw FormatError(input + ": " + e.what());
        }
        const auto v = classify_small_world(c, l, c_rg, l_rg, th);
        result = {{"metrics", {{"clustering_coefficient", json_real(c)}, {"avg_distance", json_real(l)}}},
                  {"null", j["null"]},
                  {"verdict", verdict_to_json(v)},
                  {"is_small_world", v.is_small_world}};
      } else {
        SoloNetwork net;
        try {
          net = network_from_json(j);
        } catch (const Error& e) {
          throw FormatError(input + ": " + e.what());
        }
        const auto r = full_report(net);
        const auto null = null_stats(r.node_count, r.undirected_edge_count, samples, seed);
        const auto v = classify_small_world(r, null, th);
        result = {{"metrics", metrics_to_json(r)},
                  {"null", null_stats_to_json(null)},
                  {"verdict", verdict_to_json(v)},
                  {"is_small_world", v.is_small_world},
                  {"seed", seed}};
      }
      detail::write_output(output, result.dump(2) + "\n", out);
    } else if (*report) {
      const auto manifest = load_manifest(input);
      const auto tracks = analyze_manifest(manifest);
      const auto names = manifest_performers(manifest);
      const auto agg = aggregate(tracks, names);
      const ReportFormat fmt = format == "csv"    ? ReportFormat::csv
                               : format == "json" ? ReportFormat::json
                                                  : ReportFormat::plot_data;
      const std::filesystem::path dir(output);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw LookupError("cannot create '" + output + "': " + ec.message());
      const char* name = fmt == ReportFormat::csv ? "report.csv" : fmt == ReportFormat::json ? "report.json" : "plot_data.dat";
      detail::write_output((dir / name).string(), emit_report(agg, fmt), out);
    } else if (*walk) {
      const auto net = detail::load_network(input);
      WalkConfig cfg;
      cfg.length = length;
      cfg.seed = seed;
      cfg.dead_end_policy = dead_end == "stop" ? DeadEndPolicy::stop : DeadEndPolicy::restart_at_start;
      if (!start.empty()) cfg.start = detail::parse_start(net, start);
      const auto w = random_walk(net, cfg);
      detail::write_output(output, emit == "musicxml" ? emit_musicxml(w.events) : events_to_json(w.events).dump() + "\n",
                           out);
    }
  } catch (const ArgumentError& e) {
    err << "solonet: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "solonet: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}

}  // namespace solonet::cli
