#pragma once

#include <map>

#include "scoregraph/music_graph.hpp"
#include "scoregraph/score.hpp"

namespace scoregraph {

enum class GraphKind { PitchChordRhythm, PitchChordIntervalRhythm, VerticalPitchClass, HorizontalPitchClass, ChordSequence };

namespace builders_detail {

inline void add_pcr_core(MusicGraph& g, const ElementStats& stats) {
  for (const auto& [pc, w] : stats.pc_stats) g.add_node(pc_node(pc), {w.duration, w.count});
  for (const auto& [chord, w] : stats.chord_stats) {
    const NodeId c = chord_node(chord);
    g.add_node(c, {w.duration, w.count});
    for (int pc : chord.to_vector()) g.add_edge(c, pc_node(pc), w.count);
  }
  for (const auto& [value, count] : stats.rhythm_stats) g.add_node(rhythm_node(value), {std::nullopt, count});
  for (const auto& [key, count] : stats.chord_rhythm_counts) g.add_edge(chord_node(key.first), rhythm_node(key.second), count);
}

inline void add_pc_nodes(MusicGraph& g, const Timeline& timeline) {
  for (const auto& e : timeline.events) {
    for (int pc : e.pitch_classes.to_vector()) g.add_node(pc_node(pc), {e.duration, 1});
  }
}

}  // namespace builders_detail

/// Pitch-chord-rhythm graph: chord-pc edges weighted by chord occurrences,
/// chord-rhythm edges by co-occurrence count. No pc-rhythm edges.
inline MusicGraph build_pcr(const ElementStats& stats) {
  if (stats.empty()) throw Error(ErrorKind::EmptyInput, "no chords to build a p-c-r graph from");
  MusicGraph g(false);
  builders_detail::add_pcr_core(g, stats);
  return g;
}

/// p-c-r plus interval-class nodes, linked to each chord through the
/// consecutive pairs of its normal form.
inline MusicGraph build_pcir(const ElementStats& stats) {
  if (stats.empty()) throw Error(ErrorKind::EmptyInput, "no chords to build a p-c-i-r graph from");
  MusicGraph g(false);
  builders_detail::add_pcr_core(g, stats);
  for (const auto& [chord, w] : stats.chord_stats) {
    const auto nf = normal_form(chord);
    for (std::size_t i = 0; i + 1 < nf.size(); ++i) {
      const NodeId ic = ic_node(interval_class(nf[i], nf[i + 1]));
      g.add_node(ic, {std::nullopt, w.count});
      g.add_edge(chord_node(chord), ic, w.count);
    }
  }
  return g;
}

/// Pitch classes joined when they sound in the same event; weight counts
/// the events they share.
inline MusicGraph build_vertical_pc(const Timeline& timeline) {
  if (timeline.empty()) throw Error(ErrorKind::EmptyInput, "empty timeline");
  MusicGraph g(false);
  builders_detail::add_pc_nodes(g, timeline);
  for (const auto& e : timeline.events) {
    const auto pcs = e.pitch_classes.to_vector();
    for (std::size_t i = 0; i < pcs.size(); ++i)
      for (std::size_t j = i + 1; j < pcs.size(); ++j) g.add_edge(pc_node(pcs[i]), pc_node(pcs[j]));
  }
  return g;
}

/// Arrow from every pc of an event to every pc of the next one. A pc held
/// across the boundary would be a loop and is skipped.
inline MusicGraph build_horizontal_pc(const Timeline& timeline) {
  if (timeline.events.size() < 2) throw Error(ErrorKind::TooFewEvents, "horizontal graph needs >= 2 events");
  MusicGraph g(true);
  builders_detail::add_pc_nodes(g, timeline);
  for (std::size_t i = 0; i + 1 < timeline.events.size(); ++i) {
    for (int from : timeline.events[i].pitch_classes.to_vector())
      for (int to : timeline.events[i + 1].pitch_classes.to_vector()) g.add_edge(pc_node(from), pc_node(to));
  }
  return g;
}

/// Chord progression network: one arrow per distinct consecutive pair,
/// weighted by how often that progression happens.
inline MusicGraph build_chord_sequence(const Timeline& timeline) {
  if (timeline.events.size() < 2) throw Error(ErrorKind::TooFewEvents, "chord sequence graph needs >= 2 events");
  MusicGraph g(true);
  for (const auto& e : timeline.events) g.add_node(chord_node(e.pitch_classes), {e.duration, 1});
  for (std::size_t i = 0; i + 1 < timeline.events.size(); ++i)
    g.add_edge(chord_node(timeline.events[i].pitch_classes), chord_node(timeline.events[i + 1].pitch_classes));
  return g;
}

inline MusicGraph build_graph(GraphKind kind, const Timeline& timeline) {
  switch (kind) {
    case GraphKind::PitchChordRhythm:         return build_pcr(accumulate_weights(timeline));
    case GraphKind::PitchChordIntervalRhythm: return build_pcir(accumulate_weights(timeline));
    case GraphKind::VerticalPitchClass:       return build_vertical_pc(timeline);
    case GraphKind::HorizontalPitchClass:     return build_horizontal_pc(timeline);
    case GraphKind::ChordSequence:            return build_chord_sequence(timeline);
  }
  throw Error(ErrorKind::UnsupportedFeature, "unknown graph kind");
}

}  // namespace scoregraph
