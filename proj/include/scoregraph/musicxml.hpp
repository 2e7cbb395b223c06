#pragma once

// Reader for uncompressed partwise MusicXML. Only what is needed to recover
// sounding pitches and their timing is interpreted; layout and notation
// elements are skipped, anything else is rejected by name.

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "scoregraph/error.hpp"
#include "scoregraph/score.hpp"

namespace scoregraph {

namespace musicxml_detail {

using boost::property_tree::ptree;

inline bool is_meta_key(const std::string& key) { return !key.empty() && key.front() == '<'; }

inline const std::set<std::string>& ignored_measure_children() {
  static const std::set<std::string> keys = {
      "print", "direction", "barline", "sound", "harmony", "figured-bass", "bookmark", "link", "grouping",
  };
  return keys;
}

inline const std::set<std::string>& ignored_note_children() {
  static const std::set<std::string> keys = {
      "type",   "dot",     "stem",     "voice",      "staff",      "beam",       "notations",
      "accidental", "lyric", "notehead", "time-modification", "instrument", "play", "footnote",
      "level",  "listen",  "notehead-text",
  };
  return keys;
}

inline const std::set<std::string>& ignored_score_children() {
  static const std::set<std::string> keys = {
      "work", "movement-number", "movement-title", "identification", "defaults", "credit", "part-list",
  };
  return keys;
}

inline long parse_long(const std::string& text, const char* what) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const auto last = text.find_last_not_of(" \t\r\n");
  if (first != std::string::npos) {
    const std::string trimmed = text.substr(first, last - first + 1);
    try {
      std::size_t used = 0;
      const long v = std::stol(trimmed, &used);
      if (used == trimmed.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::MalformedFile, std::string("expected integer in <") + what + ">, got '" + text + "'");
}

inline int step_semitone(const std::string& step) {
  static const std::map<std::string, int> steps = {{"C", 0}, {"D", 2}, {"E", 4}, {"F", 5},
                                                   {"G", 7}, {"A", 9}, {"B", 11}};
  auto it = steps.find(step);
  if (it == steps.end()) throw Error(ErrorKind::MalformedFile, "bad pitch step '" + step + "'");
  return it->second;
}

inline int parse_pitch(const ptree& pitch) {
  const std::string step = pitch.get<std::string>("step", "");
  const auto octave_text = pitch.get_optional<std::string>("octave");
  if (step.empty() || !octave_text) throw Error(ErrorKind::MalformedFile, "<pitch> without step/octave");
  int alter = 0;
  if (auto a = pitch.get_optional<std::string>("alter")) {
    double v = 0;
    try {
      v = std::stod(*a);
    } catch (const std::exception&) {
      throw Error(ErrorKind::MalformedFile, "bad <alter> '" + *a + "'");
    }
    if (v != std::floor(v)) throw Error(ErrorKind::UnsupportedFeature, "alter (microtonal value " + *a + ")");
    alter = static_cast<int>(v);
  }
  const long octave = parse_long(*octave_text, "octave");
  const int midi = static_cast<int>((octave + 1) * 12) + step_semitone(step) + alter;
  if (midi < 0 || midi > 127) throw Error(ErrorKind::MalformedFile, "pitch outside MIDI range");
  return midi;
}

struct OpenTie {
  std::size_t note_index;
};

}  // namespace musicxml_detail

/// Parses a partwise MusicXML document. Ties are merged into one note, rests
/// and grace notes produce nothing (grace notes add a warning). Measure onsets
/// come from the first part.
inline ScoreData parse_musicxml(std::string_view raw) {
  using namespace musicxml_detail;
  ptree doc;
  try {
    std::istringstream in{std::string(raw)};
    boost::property_tree::read_xml(in, doc);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw Error(ErrorKind::MalformedFile, std::string("XML parse error: ") + e.what());
  }

  const ptree* root = nullptr;
  for (const auto& [key, child] : doc) {
    if (is_meta_key(key)) continue;
    if (key == "score-partwise") {
      root = &child;
    } else if (key == "score-timewise") {
      throw Error(ErrorKind::UnsupportedFeature, "score-timewise");
    } else {
      throw Error(ErrorKind::MalformedFile, "unexpected root element <" + key + ">");
    }
  }
  if (root == nullptr) throw Error(ErrorKind::MalformedFile, "no <score-partwise> root");

  ScoreData out;
  int part_index = -1;
  for (const auto& [key, part] : *root) {
    if (is_meta_key(key) || ignored_score_children().count(key)) continue;
    if (key != "part") throw Error(ErrorKind::UnsupportedFeature, key);
    ++part_index;

    long divisions = 1;
    Rational cursor{0};
    Rational last_onset{0};
    std::map<int, std::vector<std::size_t>> open_ties;  // pitch -> notes awaiting a tie stop
    std::vector<Rational> measure_onsets;

    for (const auto& [mkey, measure] : part) {
      if (is_meta_key(mkey)) continue;
      if (mkey != "measure") throw Error(ErrorKind::UnsupportedFeature, mkey);
      const Rational measure_start = cursor;
      Rational measure_end = cursor;
      measure_onsets.push_back(measure_start);

      for (const auto& [ekey, elem] : measure) {
        if (is_meta_key(ekey) || ignored_measure_children().count(ekey)) continue;
        if (ekey == "attributes") {
          if (auto d = elem.get_optional<std::string>("divisions")) {
            divisions = parse_long(*d, "divisions");
            if (divisions <= 0) throw Error(ErrorKind::MalformedFile, "non-positive <divisions>");
          }
          continue;
        }
        if (ekey == "backup" || ekey == "forward") {
          const Rational d(parse_long(elem.get<std::string>("duration", ""), "duration"), divisions);
          cursor += ekey == "backup" ? -d : d;
          if (cursor < measure_start) throw Error(ErrorKind::MalformedFile, "<backup> past start of measure");
          measure_end = std::max(measure_end, cursor);
          continue;
        }
        if (ekey != "note") throw Error(ErrorKind::UnsupportedFeature, ekey);

        bool is_chord = false, is_rest = false, is_grace = false, tie_start = false, tie_stop = false;
        std::optional<int> pitch;
        std::optional<long> duration_div;
        for (const auto& [nkey, nchild] : elem) {
          if (is_meta_key(nkey) || ignored_note_children().count(nkey)) continue;
          if (nkey == "chord") {
            is_chord = true;
          } else if (nkey == "rest") {
            is_rest = true;
          } else if (nkey == "grace") {
            is_grace = true;
          } else if (nkey == "pitch") {
            pitch = parse_pitch(nchild);
          } else if (nkey == "duration") {
            duration_div = parse_long(nchild.data(), "duration");
          } else if (nkey == "tie") {
            const std::string type = nchild.get<std::string>("<xmlattr>.type", "");
            if (type == "start") tie_start = true;
            if (type == "stop") tie_stop = true;
          } else {
            throw Error(ErrorKind::UnsupportedFeature, nkey);
          }
        }

        if (is_grace) {
          out.warnings.push_back({"GraceNoteDropped", "grace note skipped in part " + std::to_string(part_index)});
          continue;
        }
        if (!duration_div) throw Error(ErrorKind::MalformedFile, "<note> without <duration>");
        const Rational duration(*duration_div, divisions);
        const Rational onset = is_chord ? last_onset : cursor;
        if (!is_chord) {
          last_onset = cursor;
          cursor += duration;
          measure_end = std::max(measure_end, cursor);
        }
        if (is_rest) continue;
        if (!pitch) throw Error(ErrorKind::UnsupportedFeature, "note without <pitch> (unpitched)");
        if (duration <= 0) {
          out.warnings.push_back({"ZeroDurationDropped", "zero-length note skipped"});
          continue;
        }

        bool merged = false;
        if (tie_stop) {
          auto it = open_ties.find(*pitch);
          if (it != open_ties.end()) {
            auto& pending = it->second;
            for (auto p = pending.begin(); p != pending.end(); ++p) {
              TimedNote& prev = out.notes[*p];
              if (prev.offset() == onset && prev.part_index == part_index) {
                prev.duration += duration;
                const std::size_t idx = *p;
                pending.erase(p);
                if (tie_start) pending.push_back(idx);
                merged = true;
                break;
              }
            }
          }
          if (!merged) out.warnings.push_back({"DanglingTieStop", "tie stop without matching start"});
        }
        if (!merged) {
          out.notes.push_back(TimedNote{onset, duration, *pitch, part_index});
          if (tie_start) open_ties[*pitch].push_back(out.notes.size() - 1);
        }
      }
      cursor = measure_end;
    }

    if (part_index == 0) {
      out.measure_onsets = measure_onsets;
      out.end = cursor;
    } else {
      out.end = std::max(out.end, cursor);
    }
  }
  if (part_index < 0) throw Error(ErrorKind::MalformedFile, "score has no parts");
  return out;
}

}  // namespace scoregraph
