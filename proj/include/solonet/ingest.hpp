#pragma once

// Solo-region selection, event extraction, and the canonical solo JSON format.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solonet/error.hpp"
#include "solonet/note_event.hpp"
#include "solonet/score.hpp"

namespace solonet {

struct MeasureRange {
  int start = 1;
  int end = 1;  // inclusive

  bool contains(int n) const noexcept { return start <= n && n <= end; }
  friend bool operator==(const MeasureRange&, const MeasureRange&) = default;
};

struct SoloSelection {
  std::string part_id;
  std::vector<MeasureRange> measure_ranges;
  // Voice to keep. Unset means the voice of the first sounding note in range.
  std::optional<std::string> voice;

  // Throws ArgumentError unless ranges are ascending, disjoint and start at >= 1.
  void validate() const {
    if (measure_ranges.empty()) throw ArgumentError("solo selection has no measure ranges");
    for (std::size_t i = 0; i < measure_ranges.size(); ++i) {
      const auto& r = measure_ranges[i];
      if (r.start < 1 || r.end < r.start)
        throw ArgumentError("invalid measure range " + std::to_string(r.start) + ":" + std::to_string(r.end));
      if (i > 0 && r.start <= measure_ranges[i - 1].end)
        throw ArgumentError("measure ranges overlap or are not ascending");
    }
  }
};

// "1:8,12:16" or "5" (single measure).
inline std::vector<MeasureRange> parse_measure_ranges(std::string_view text) {
  std::vector<MeasureRange> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto tok = text.substr(pos, comma - pos);
    const auto colon = tok.find(':');
    try {
      MeasureRange r;
      r.start = static_cast<int>(detail::parse_integer(tok.substr(0, colon), "measure"));
      r.end = colon == std::string_view::npos ? r.start
                                              : static_cast<int>(detail::parse_integer(tok.substr(colon + 1), "measure"));
      out.push_back(r);
    } catch (const FormatError&) {
      throw ArgumentError("invalid measure range '" + std::string(tok) + "'");
    }
    pos = comma + 1;
  }
  return out;
}

// Bookkeeping behind an extraction; lets callers check the count and duration identities.
struct Extraction {
  std::vector<NoteEvent> events;
  std::size_t raw_notes = 0;  // notes of the selected voice inside the selected measures
  std::size_t chord_continuations = 0;
  std::size_t tie_continuations = 0;
  std::size_t grace_notes = 0;
  Duration notated_length{0};  // sum of chord-head durations, graces excluded
};

inline Extraction extract(const Score& score, const SoloSelection& selection) {
  selection.validate();
  const Part* part = score.find_part(selection.part_id);
  if (!part) throw LookupError("unknown part '" + selection.part_id + "'");

  auto has_measure = [&](int n) {
    for (const auto& m : part->measures)
      if (m.numeric_number == n) return true;
    return false;
  };
  for (const auto& r : selection.measure_ranges) {
    if (!has_measure(r.start)) throw LookupError("part '" + part->id + "' has no measure " + std::to_string(r.start));
    if (!has_measure(r.end)) throw LookupError("part '" + part->id + "' has no measure " + std::to_string(r.end));
  }
  auto range_of = [&](const Measure& m) -> std::optional<std::size_t> {
    if (!m.numeric_number) return std::nullopt;
    for (std::size_t i = 0; i < selection.measure_ranges.size(); ++i)
      if (selection.measure_ranges[i].contains(*m.numeric_number)) return i;
    return std::nullopt;
  };

  std::optional<std::string> voice = selection.voice;
  if (!voice) {
    for (const auto& m : part->measures) {
      if (!range_of(m)) continue;
      for (const auto& n : m.notes)
        if (!n.grace) {
          voice = n.voice;
          break;
        }
      if (voice) break;
    }
  }

  struct Group {
    NoteEvent event;
    bool tie_start = false;
    bool tie_stop = false;
  };

  Extraction out;
  std::vector<Group> groups;
  bool pending_tie = false;  // last event still expects a tie continuation
  std::optional<std::size_t> current_range;
  bool group_open = false;   // last group may still receive chord members

  auto close_group = [&]() {
    if (groups.empty() || !group_open) return;
    group_open = false;
    Group g = std::move(groups.back());
    groups.pop_back();
    g.event = NoteEvent::make(std::move(g.event.pitches), g.event.duration);
    if (pending_tie && g.tie_stop && !groups.empty() && groups.back().event.pitches == g.event.pitches) {
      groups.back().event.duration += g.event.duration;
      groups.back().tie_start = g.tie_start;
      ++out.tie_continuations;
    } else {
      groups.push_back(std::move(g));
    }
    pending_tie = groups.back().tie_start;
  };

  for (const auto& m : part->measures) {
    const auto r = range_of(m);
    if (!r) continue;
    if (current_range != r) {
      close_group();
      pending_tie = false;
      current_range = r;
    }
    for (const auto& n : m.notes) {
      if (voice && n.voice != *voice) continue;
      ++out.raw_notes;
      if (n.grace) {
        ++out.grace_notes;
        continue;
      }
      if (n.chord && group_open) {
        ++out.chord_continuations;
        Group& g = groups.back();
        if (n.pitch) g.event.pitches.push_back(*n.pitch);
        g.tie_start = g.tie_start || n.tie_start;
        g.tie_stop = g.tie_stop || n.tie_stop;
        continue;
      }
      if (n.chord) throw FormatError("part " + part->id + " measure " + m.number + ": chord note without a head");
      close_group();
      Group g;
      g.event.duration = n.duration;
      if (n.pitch) g.event.pitches.push_back(*n.pitch);
      g.tie_start = n.tie_start;
      g.tie_stop = n.tie_stop;
      groups.push_back(std::move(g));
      group_open = true;
      out.notated_length += n.duration;
    }
  }
  close_group();

  if (groups.empty()) throw EmptySoloError("no notes in the selected measures of part '" + part->id + "'");
  out.events.reserve(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    groups[i].event.onset_index = i;
    out.events.push_back(std::move(groups[i].event));
  }
  return out;
}

inline std::vector<NoteEvent> extract_events(const Score& score, const SoloSelection& selection) {
  return extract(score, selection).events;
}

// ---------------------------------------------------------------------------
// Canonical solo JSON: {"events":[{"pitches":[60,64],"duration":"1/8"}, ...]}
// ---------------------------------------------------------------------------

inline nlohmann::json key_to_json(const PitchSet& pitches, const Duration& duration) {
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : pitches) ps.push_back(p.midi());
  return {{"pitches", std::move(ps)}, {"duration", to_string(duration)}};
}

// Strict reader: pitches must already be strictly ascending.
inline NodeKey key_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("pitches") || !j.contains("duration") || !j["pitches"].is_array() ||
      !j["duration"].is_string())
    throw FormatError("event must be an object with 'pitches' array and 'duration' string");
  NodeKey key;
  for (const auto& p : j["pitches"]) {
    if (!p.is_number_integer()) throw FormatError("pitch must be an integer");
    key.pitches.emplace_back(p.get<int>());
  }
  for (std::size_t i = 1; i < key.pitches.size(); ++i)
    if (!(key.pitches[i - 1] < key.pitches[i])) throw FormatError("pitches must be strictly ascending");
  key.duration = parse_duration(j["duration"].get<std::string>());
  if (key.duration <= 0) throw FormatError("duration must be positive");
  return key;
}

inline nlohmann::json events_to_json(const std::vector<NoteEvent>& events) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : events) arr.push_back(key_to_json(e.pitches, e.duration));
  return {{"events", std::move(arr)}};
}

inline std::vector<NoteEvent> events_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("events") || !j["events"].is_array())
    throw FormatError("solo JSON must be an object with an 'events' array");
  std::vector<NoteEvent> events;
  const auto& arr = j["events"];
  events.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    NodeKey key;
    try {
      key = key_from_json(arr[i]);
    } catch (const Error& e) {
      throw FormatError("events[" + std::to_string(i) + "]: " + e.what());
    }
    events.push_back(NoteEvent{std::move(key.pitches), key.duration, i});
  }
  return events;
}

// Wraps nlohmann parse failures in ParseError with the byte position.
inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LookupError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Corpus manifest: [{"file","part_id","measure_ranges":[[a,b],...],"performer","title"}, ...]
// ---------------------------------------------------------------------------

struct ManifestEntry {
  std::filesystem::path file;  // resolved against the manifest's directory
  SoloSelection selection;
  std::string performer;
  std::string title;
};

using Manifest = std::vector<ManifestEntry>;

inline Manifest manifest_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_array()) throw FormatError("manifest must be a JSON array");
  Manifest out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    const std::string where = "manifest[" + std::to_string(i) + "]";
    auto str = [&](const char* k) {
      if (!e.is_object() || !e.contains(k) || !e[k].is_string())
        throw FormatError(where + ": missing string field '" + k + "'");
      return e[k].get<std::string>();
    };
    ManifestEntry entry;
    entry.file = base_dir / str("file");
    entry.selection.part_id = str("part_id");
    entry.performer = str("performer");
    entry.title = str("title");
    if (e.contains("voice")) entry.selection.voice = str("voice");
    if (!e.contains("measure_ranges") || !e["measure_ranges"].is_array())
      throw FormatError(where + ": missing 'measure_ranges' array");
    for (const auto& r : e["measure_ranges"]) {
      if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
        throw FormatError(where + ": measure range must be [start, end]");
      entry.selection.measure_ranges.push_back({r[0].get<int>(), r[1].get<int>()});
    }
    try {
      entry.selection.validate();
    } catch (const ArgumentError& err) {
      throw FormatError(where + ": " + err.what());
    }
    out.push_back(std::move(entry));
  }
  return out;
}

inline Manifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_json(parse_json(read_file(path)), path.parent_path());
}

}  // namespace solonet
