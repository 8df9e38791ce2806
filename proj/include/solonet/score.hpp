#pragma once

// Partwise MusicXML reader. Produces the raw per-measure note list; turning
// that into solo events happens in ingest.hpp.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solonet/error.hpp"
#include "solonet/note_event.hpp"
#include "solonet/xml.hpp"

namespace solonet {

struct RawNote {
  std::optional<Pitch> pitch;  // empty for a rest
  bool rest = false;
  bool chord = false;  // continues the chord started by the previous note
  bool grace = false;
  bool tie_start = false;
  bool tie_stop = false;
  std::int64_t divisions_duration = 0;  // raw <duration>; 0 for grace notes
  Duration duration{0};                 // fraction of a whole note; 0 for grace notes
  std::string voice = "1";
};

struct Measure {
  std::string number;                 // as written in the file
  std::optional<int> numeric_number;  // leading integer of `number`, if any
  std::vector<RawNote> notes;
};

struct Part {
  std::string id;
  std::string name;
  std::vector<Measure> measures;
};

struct Score {
  std::vector<Part> parts;

  const Part* find_part(std::string_view id) const {
    for (const auto& p : parts)
      if (p.id == id) return &p;
    return nullptr;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::int64_t parse_integer(std::string_view text, std::string_view what) {
  const auto t = trim(text);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size() || t.empty())
    throw FormatError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

inline std::optional<int> leading_integer(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p == s.data()) return std::nullopt;
  return v;
}

// Nominal value of a <type> name, or nullopt for names we do not know.
inline std::optional<Duration> note_type_value(std::string_view name) {
  struct Entry {
    std::string_view name;
    Duration value;
  };
  static const Entry kTypes[] = {
      {"maxima", Duration(8)},       {"long", Duration(4)},         {"breve", Duration(2)},
      {"whole", Duration(1)},        {"half", Duration(1, 2)},      {"quarter", Duration(1, 4)},
      {"eighth", Duration(1, 8)},    {"16th", Duration(1, 16)},     {"32nd", Duration(1, 32)},
      {"64th", Duration(1, 64)},     {"128th", Duration(1, 128)},   {"256th", Duration(1, 256)},
      {"512th", Duration(1, 512)},   {"1024th", Duration(1, 1024)},
  };
  const auto t = trim(name);
  for (const auto& e : kTypes)
    if (e.name == t) return e.value;
  return std::nullopt;
}

inline void read_ties(const xml::Element& note, RawNote& raw) {
  auto apply = [&](const xml::Element& e) {
    const std::string* type = e.attribute("type");
    if (!type) return;
    if (*type == "start") raw.tie_start = true;
    if (*type == "stop") raw.tie_stop = true;
  };
  for (const auto& c : note.children) {
    if (c.name == "tie") apply(c);
    if (c.name == "notations")
      for (const auto& n : c.children)
        if (n.name == "tied") apply(n);
  }
}

inline RawNote read_note(const xml::Element& note, std::optional<std::int64_t> divisions,
                         const std::string& where) {
  RawNote raw;
  raw.grace = note.has_child("grace");
  raw.chord = note.has_child("chord");
  raw.rest = note.has_child("rest");
  if (note.has_child("unpitched")) throw FormatError(where + ": unpitched notes are not supported");
  if (const auto* v = note.child_text("voice")) raw.voice = std::string(trim(*v));

  if (!raw.rest) {
    const xml::Element* pitch = note.child("pitch");
    if (!pitch) throw FormatError(where + ": note has neither <pitch> nor <rest>");
    const std::string* step = pitch->child_text("step");
    const std::string* octave = pitch->child_text("octave");
    if (!step || !octave) throw FormatError(where + ": <pitch> lacks <step> or <octave>");
    const auto step_text = trim(*step);
    if (step_text.size() != 1) throw FormatError(where + ": invalid step '" + *step + "'");
    int alter = 0;
    if (const auto* a = pitch->child_text("alter")) alter = static_cast<int>(parse_integer(*a, "alter"));
    raw.pitch = Pitch::from_spelling(step_text[0], alter, static_cast<int>(parse_integer(*octave, "octave")));
  }
  read_ties(note, raw);

  if (raw.grace) return raw;

  const std::string* dur = note.child_text("duration");
  if (!dur) throw FormatError(where + ": note lacks <duration>");
  if (!divisions) throw FormatError(where + ": <duration> appears before any <divisions>");
  raw.divisions_duration = parse_integer(*dur, "duration");
  if (raw.divisions_duration <= 0) throw FormatError(where + ": non-positive <duration>");
  raw.duration = Duration(raw.divisions_duration, 4 * *divisions);

  // Tuplets: exporters often round <duration>, so take the exact nominal value
  // when both <type> and <time-modification> are present.
  const xml::Element* tm = note.child("time-modification");
  const std::string* type = note.child_text("type");
  if (tm && type) {
    if (auto nominal = note_type_value(*type)) {
      Duration value = *nominal;
      Duration dot = *nominal;
      for (const auto& c : note.children)
        if (c.name == "dot") {
          dot /= 2;
          value += dot;
        }
      const std::string* actual = tm->child_text("actual-notes");
      const std::string* normal = tm->child_text("normal-notes");
      if (actual && normal) {
        const auto a = parse_integer(*actual, "actual-notes");
        const auto n = parse_integer(*normal, "normal-notes");
        if (a <= 0 || n <= 0) throw FormatError(where + ": invalid <time-modification>");
        raw.duration = value * Duration(n, a);
      }
    }
  }
  return raw;
}

}  // namespace detail

// Parses a partwise MusicXML document.
inline Score parse_score(std::string_view xml_bytes) {
  const xml::Element root = xml::parse(xml_bytes);
  if (root.name == "score-timewise") throw UnsupportedFormatError("timewise MusicXML is not supported");
  if (root.name != "score-partwise") throw FormatError("root element <" + root.name + "> is not <score-partwise>");

  Score score;
  if (const xml::Element* list = root.child("part-list")) {
    for (const auto& sp : list->children) {
      if (sp.name != "score-part") continue;
      Part part;
      if (const auto* id = sp.attribute("id")) part.id = *id;
      if (const auto* name = sp.child_text("part-name")) part.name = std::string(detail::trim(*name));
      score.parts.push_back(std::move(part));
    }
  }

  for (const auto& pe : root.children) {
    if (pe.name != "part") continue;
    const std::string* id = pe.attribute("id");
    if (!id) throw FormatError("<part> without id attribute");
    Part* part = nullptr;
    for (auto& p : score.parts)
      if (p.id == *id) part = &p;
    if (!part) {
      score.parts.push_back(Part{*id, "", {}});
      part = &score.parts.back();
    }

    std::optional<std::int64_t> divisions;
    for (const auto& me : pe.children) {
      if (me.name != "measure") continue;
      Measure measure;
      if (const auto* n = me.attribute("number")) measure.number = *n;
      measure.numeric_number = detail::leading_integer(measure.number);
      const std::string where = "part " + *id + " measure " + measure.number;
      for (const auto& item : me.children) {
        if (item.name == "attributes") {
          if (const auto* d = item.child_text("divisions")) {
            divisions = detail::parse_integer(*d, "divisions");
            if (*divisions <= 0) throw FormatError(where + ": non-positive <divisions>");
          }
        } else if (item.name == "note") {
          measure.notes.push_back(detail::read_note(item, divisions, where));
        }
      }
      part->measures.push_back(std::move(measure));
    }
  }
  return score;
}

}  // namespace solonet
