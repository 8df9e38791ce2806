#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "solonet/error.hpp"

namespace solonet {

// Exact fraction of a whole note. Node identity depends on it, so never a float.
using Duration = boost::rational<std::int64_t>;

inline std::string to_string(const Duration& d) {
  return std::to_string(d.numerator()) + "/" + std::to_string(d.denominator());
}

// Accepts "num/den" or a bare integer. Throws FormatError on anything else.
inline Duration parse_duration(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
      throw FormatError("invalid duration '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = slash == std::string_view::npos ? 1 : parse_int(text.substr(slash + 1));
  if (den <= 0) throw FormatError("invalid duration '" + std::string(text) + "'");
  return Duration(num, den);
}

inline std::strong_ordering compare(const Duration& a, const Duration& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// MIDI semitone index.
class Pitch {
 public:
  constexpr Pitch() = default;
  explicit Pitch(int midi) : midi_(midi) {
    if (midi < 0 || midi > 127) throw FormatError("pitch " + std::to_string(midi) + " outside MIDI range");
  }

  // step is one of "CDEFGAB"; octave 4 holds middle C (60).
  static Pitch from_spelling(char step, int alter, int octave) {
    static constexpr std::string_view kSteps = "CDEFGAB";
    static constexpr int kOffsets[] = {0, 2, 4, 5, 7, 9, 11};
    const auto pos = kSteps.find(step);
    if (pos == std::string_view::npos) throw FormatError(std::string("invalid pitch step '") + step + "'");
    return Pitch((octave + 1) * 12 + kOffsets[pos] + alter);
  }

  constexpr int midi() const noexcept { return midi_; }
  constexpr auto operator<=>(const Pitch&) const = default;

 private:
  int midi_ = 60;
};

using PitchSet = std::vector<Pitch>;

// Identity of a network node: same pitches with a different duration is a different node.
struct NodeKey {
  PitchSet pitches;  // strictly ascending; empty for a rest
  Duration duration{1, 4};

  bool is_rest() const noexcept { return pitches.empty(); }

  friend bool operator==(const NodeKey& a, const NodeKey& b) {
    return a.pitches == b.pitches && a.duration == b.duration;
  }
  // Pitch vector first (so rests sort before everything), then duration.
  friend std::strong_ordering operator<=>(const NodeKey& a, const NodeKey& b) {
    if (auto c = std::lexicographical_compare_three_way(a.pitches.begin(), a.pitches.end(),
                                                        b.pitches.begin(), b.pitches.end());
        c != 0)
      return c;
    return compare(a.duration, b.duration);
  }
};

struct NoteEvent {
  PitchSet pitches;
  Duration duration{1, 4};
  std::size_t onset_index = 0;

  // Sorts and deduplicates pitches; rejects non-positive durations.
  static NoteEvent make(PitchSet pitches, Duration duration, std::size_t onset_index = 0) {
    if (duration <= 0) throw FormatError("event duration must be positive, got " + to_string(duration));
    std::sort(pitches.begin(), pitches.end());
    pitches.erase(std::unique(pitches.begin(), pitches.end()), pitches.end());
    return NoteEvent{std::move(pitches), duration, onset_index};
  }

  bool is_rest() const noexcept { return pitches.empty(); }
  NodeKey key() const { return NodeKey{pitches, duration}; }

  friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
};

// "60+64:1/8" for a chord, "r:1/4" for a rest.
inline std::string label(const NodeKey& key) {
  std::string out;
  if (key.is_rest()) out = "r";
  for (std::size_t i = 0; i < key.pitches.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(key.pitches[i].midi());
  }
  out += ':';
  out += to_string(key.duration);
  return out;
}

inline NodeKey parse_label(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw FormatError("node label '" + std::string(text) + "' lacks ':'");
  NodeKey key;
  key.duration = parse_duration(text.substr(colon + 1));
  if (key.duration <= 0) throw FormatError("node label '" + std::string(text) + "' has non-positive duration");
  const auto pitch_part = text.substr(0, colon);
  if (pitch_part == "r") return key;
  std::size_t start = 0;
  while (start <= pitch_part.size()) {
    auto end = pitch_part.find('+', start);
    if (end == std::string_view::npos) end = pitch_part.size();
    const auto tok = pitch_part.substr(start, end - start);
    int midi = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), midi);
    if (ec != std::errc{} || p != tok.data() + tok.size() || tok.empty())
      throw FormatError("node label '" + std::string(text) + "' has invalid pitch");
    key.pitches.emplace_back(midi);
    start = end + 1;
  }
  if (!std::is_sorted(key.pitches.begin(), key.pitches.end()) ||
      std::adjacent_find(key.pitches.begin(), key.pitches.end()) != key.pitches.end())
    throw FormatError("node label '" + std::string(text) + "' pitches not strictly ascending");
  return key;
}

}  // namespace solonet
