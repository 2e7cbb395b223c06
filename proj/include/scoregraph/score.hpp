#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scoregraph/error.hpp"
#include "scoregraph/pitch.hpp"

namespace scoregraph {

/// One sounding note after tie merging. Onset and duration in quarter lengths.
struct TimedNote {
  Rational onset;
  Rational duration;
  int pitch = 0;  // MIDI note number
  int part_index = 0;

  Rational offset() const { return onset + duration; }
  friend bool operator==(const TimedNote&, const TimedNote&) = default;
};

/// A vertical slice: the pitch classes sounding between two consecutive
/// onset/offset boundaries.
struct Event {
  Rational onset;
  Rational duration;
  PitchClassSet pitch_classes;

  Rational offset() const { return onset + duration; }
  friend bool operator==(const Event&, const Event&) = default;
};

struct Timeline {
  std::vector<Event> events;
  std::map<int, Rational> measure_onsets;  // measure number -> onset
  Rational total_duration;

  bool empty() const { return events.empty(); }
  friend bool operator==(const Timeline&, const Timeline&) = default;
};

/// What a parser hands back: notes plus the measure grid and anything it had
/// to drop or repair along the way.
struct ScoreData {
  std::vector<TimedNote> notes;
  std::vector<Rational> measure_onsets;  // onset of measure 1, 2, ...
  Rational end;                          // end of the last measure
  std::vector<Diagnostic> warnings;
};

struct ElementWeight {
  Rational duration;
  long count = 0;
  friend bool operator==(const ElementWeight&, const ElementWeight&) = default;
};

struct ElementStats {
  std::map<PitchClassSet, ElementWeight> chord_stats;
  std::map<int, ElementWeight> pc_stats;
  std::map<Rational, long> rhythm_stats;
  std::map<std::pair<PitchClassSet, Rational>, long> chord_rhythm_counts;

  bool empty() const { return chord_stats.empty(); }
};

/// Slices the notes at every distinct onset and offset. Each slice with at
/// least one sounding note becomes an Event; silent slices are skipped but
/// still advance time. Consecutive slices with the same pitch classes stay
/// separate events.
inline Timeline chordify(std::span<const TimedNote> notes) {
  if (notes.empty()) throw Error(ErrorKind::EmptyInput, "chordify needs at least one note");

  std::vector<Rational> bounds;
  bounds.reserve(notes.size() * 2);
  for (const auto& n : notes) {
    if (n.onset < 0) throw Error(ErrorKind::MalformedFile, "note with negative onset");
    if (n.duration <= 0) continue;
    bounds.push_back(n.onset);
    bounds.push_back(n.offset());
  }
  if (bounds.empty()) throw Error(ErrorKind::EmptyInput, "no note has positive duration");
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  std::vector<PitchClassSet> slices(bounds.size() - 1);
  for (const auto& n : notes) {
    if (n.duration <= 0) continue;
    auto first = std::lower_bound(bounds.begin(), bounds.end(), n.onset) - bounds.begin();
    auto last = std::lower_bound(bounds.begin(), bounds.end(), n.offset()) - bounds.begin();
    for (auto i = first; i < last; ++i) slices[static_cast<std::size_t>(i)].insert(pitch_class_of(n.pitch));
  }

  Timeline tl;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (slices[i].empty()) continue;
    tl.events.push_back(Event{bounds[i], bounds[i + 1] - bounds[i], slices[i]});
  }
  tl.total_duration = bounds.back();
  return tl;
}

/// Chordifies and attaches the measure grid. Total duration extends to the
/// end of the last measure when the parser reported one.
inline Timeline chordify(const ScoreData& score) {
  Timeline tl = chordify(std::span<const TimedNote>(score.notes));
  for (std::size_t i = 0; i < score.measure_onsets.size(); ++i)
    tl.measure_onsets[static_cast<int>(i + 1)] = score.measure_onsets[i];
  tl.total_duration = std::max(tl.total_duration, score.end);
  return tl;
}

inline ElementStats accumulate_weights(const Timeline& timeline) {
  if (timeline.events.empty()) throw Error(ErrorKind::EmptyInput, "timeline has no events");
  ElementStats s;
  for (const auto& e : timeline.events) {
    auto& c = s.chord_stats[e.pitch_classes];
    c.duration += e.duration;
    ++c.count;
    for (int pc : e.pitch_classes.to_vector()) {
      auto& p = s.pc_stats[pc];
      p.duration += e.duration;
      ++p.count;
    }
    ++s.rhythm_stats[e.duration];
    ++s.chord_rhythm_counts[{e.pitch_classes, e.duration}];
  }
  return s;
}

/// Note-level texture figures. voices_per_quarter is total sounding note
/// time over total time; attacks_per_quarter is note count over total time.
struct TextureSummary {
  std::size_t note_count = 0;
  Rational total_note_duration;
  Rational total_duration;
  double events_per_quarter = 0.0;
  double voices_per_quarter = 0.0;
  double attacks_per_quarter = 0.0;
};

inline TextureSummary texture_summary(const ScoreData& score, const Timeline& timeline) {
  TextureSummary t;
  t.note_count = score.notes.size();
  for (const auto& n : score.notes) t.total_note_duration += n.duration;
  t.total_duration = timeline.total_duration;
  if (t.total_duration > 0) {
    const double total = to_double(t.total_duration);
    t.events_per_quarter = static_cast<double>(timeline.events.size()) / total;
    t.voices_per_quarter = to_double(t.total_note_duration) / total;
    t.attacks_per_quarter = static_cast<double>(t.note_count) / total;
  }
  return t;
}

}  // namespace scoregraph
