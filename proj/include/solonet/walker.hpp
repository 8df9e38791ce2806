#pragma once

// First-order weighted random walks over a solo network, and a minimal
// MusicXML writer so generated material can go back into score tools.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "solonet/error.hpp"
#include "solonet/network.hpp"
#include "solonet/note_event.hpp"

namespace solonet {

enum class DeadEndPolicy { stop, restart_at_start };

struct WalkConfig {
  std::size_t length = 64;
  std::uint64_t seed = 0;
  std::optional<NodeKey> start;  // defaults to the source solo's first event
  DeadEndPolicy dead_end_policy = DeadEndPolicy::restart_at_start;
};

struct Walk {
  std::vector<NoteEvent> events;
  // Positions i > 0 where events[i] was reached by restarting rather than by an edge.
  std::vector<std::size_t> restarts;
};

inline Walk random_walk(const SoloNetwork& net, const WalkConfig& cfg) {
  if (cfg.length < 1) throw ArgumentError("walk length must be >= 1");
  NodeIndex start = net.start();
  if (cfg.start) {
    auto idx = net.index_of(*cfg.start);
    if (!idx) throw LookupError("start node " + label(*cfg.start) + " is not in the network");
    start = *idx;
  }

  // Cumulative out-weights per node, in ascending target order.
  std::vector<std::vector<std::pair<NodeIndex, std::uint64_t>>> cumulative(net.node_count());
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    std::uint64_t acc = 0;
    for (auto [t, w] : net.out_edges(v)) cumulative[v].emplace_back(t, acc += w);
  }

  std::mt19937_64 rng(cfg.seed);
  Walk walk;
  walk.events.reserve(cfg.length);
  auto emit = [&](NodeIndex v) {
    const NodeKey& k = net.nodes()[v];
    walk.events.push_back(NoteEvent{k.pitches, k.duration, walk.events.size()});
  };

  NodeIndex current = start;
  emit(current);
  while (walk.events.size() < cfg.length) {
    const auto& outs = cumulative[current];
    if (outs.empty()) {
      if (cfg.dead_end_policy == DeadEndPolicy::stop) break;
      walk.restarts.push_back(walk.events.size());
      current = start;
    } else {
      const std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(0, outs.back().second - 1)(rng);
      auto it = std::upper_bound(outs.begin(), outs.end(), r,
                                 [](std::uint64_t x, const auto& entry) { return x < entry.second; });
      current = it->first;
    }
    emit(current);
  }
  return walk;
}

namespace detail {

inline void spell(Pitch p, std::string& out) {
  static constexpr const char* kSteps[] = {"C", "C", "D", "D", "E", "F", "F", "G", "G", "A", "A", "B"};
  static constexpr int kAlter[] = {0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0};
  const int pc = p.midi() % 12;
  out += "<pitch><step>";
  out += kSteps[pc];
  out += "</step>";
  if (kAlter[pc]) out += "<alter>1</alter>";
  out += "<octave>" + std::to_string(p.midi() / 12 - 1) + "</octave></pitch>";
}

// <type> plus dots for plain or single-dotted values; nullopt otherwise.
inline std::optional<std::pair<std::string, int>> notation_type(const Duration& d) {
  static const std::pair<const char*, Duration> kTypes[] = {
      {"whole", Duration(1)},      {"half", Duration(1, 2)},    {"quarter", Duration(1, 4)},
      {"eighth", Duration(1, 8)},  {"16th", Duration(1, 16)},   {"32nd", Duration(1, 32)},
      {"64th", Duration(1, 64)},
  };
  for (const auto& [name, value] : kTypes) {
    if (d == value) return std::pair{std::string(name), 0};
    if (d == value * Duration(3, 2)) return std::pair{std::string(name), 1};
  }
  return std::nullopt;
}

}  // namespace detail

// Partwise MusicXML, one part "P1", 4/4 measures filled greedily. Events that
// cross a bar line are split into tied pieces; rests are tied the same way so
// the reader merges them back.
inline std::string emit_musicxml(std::span<const NoteEvent> events) {
  if (events.empty()) throw EmptySoloError("cannot emit an empty solo");
  const Duration bar(1);

  struct Piece {
    const NoteEvent* event;
    Duration duration;
    bool tie_start;
    bool tie_stop;
  };
  std::vector<std::vector<Piece>> measures(1);
  Duration filled(0);
  for (const auto& e : events) {
    Duration remaining = e.duration;
    bool continued = false;
    while (remaining > 0) {
      if (filled == bar) {
        measures.emplace_back();
        filled = 0;
      }
      const Duration piece = std::min(remaining, bar - filled);
      remaining -= piece;
      measures.back().push_back(Piece{&e, piece, remaining > 0, continued});
      continued = true;
      filled += piece;
    }
  }

  std::int64_t divisions = 1;
  for (const auto& m : measures)
    for (const auto& p : m) divisions = std::lcm(divisions, (p.duration * 4).denominator());

  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      "<!DOCTYPE score-partwise PUBLIC \"-//Recordare//DTD MusicXML 4.0 Partwise//EN\" "
      "\"http://www.musicxml.org/dtds/partwise.dtd\">\n"
      "<score-partwise version=\"4.0\">\n"
      "  <part-list>\n"
      "    <score-part id=\"P1\"><part-name>Solo</part-name></score-part>\n"
      "  </part-list>\n"
      "  <part id=\"P1\">\n";
  for (std::size_t mi = 0; mi < measures.size(); ++mi) {
    out += "    <measure number=\"" + std::to_string(mi + 1) + "\">\n";
    if (mi == 0)
      out += "      <attributes><divisions>" + std::to_string(divisions) +
             "</divisions><time><beats>4</beats><beat-type>4</beat-type></time>"
             "<clef><sign>G</sign><line>2</line></clef></attributes>\n";
    for (const auto& p : measures[mi]) {
      const std::string duration = std::to_string((p.duration * 4 * divisions).numerator());
      auto tie_elements = [&](const char* tag) {
        std::string s;
        if (p.tie_stop) s += std::string("<") + tag + " type=\"stop\"/>";
        if (p.tie_start) s += std::string("<") + tag + " type=\"start\"/>";
        return s;
      };
      const auto type = detail::notation_type(p.duration);
      auto tail = [&]() {
        std::string s = "<voice>1</voice>";
        if (type) {
          s += "<type>" + type->first + "</type>";
          for (int d = 0; d < type->second; ++d) s += "<dot/>";
        }
        return s;
      };
      if (p.event->is_rest()) {
        out += "      <note><rest/><duration>" + duration + "</duration>" + tie_elements("tie") + tail() + "</note>\n";
        continue;
      }
      for (std::size_t k = 0; k < p.event->pitches.size(); ++k) {
        out += "      <note>";
        if (k > 0) out += "<chord/>";
        detail::spell(p.event->pitches[k], out);
        out += "<duration>" + duration + "</duration>" + tie_elements("tie") + tail();
        if (p.tie_start || p.tie_stop) out += "<notations>" + tie_elements("tied") + "</notations>";
        out += "</note>\n";
      }
    }
    out += "    </measure>\n";
  }
  out += "  </part>\n</score-partwise>\n";
  return out;
}

}  // namespace solonet
