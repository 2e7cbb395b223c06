#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "scoregraph/builders.hpp"
#include "scoregraph/communities.hpp"
#include "scoregraph/dtw.hpp"
#include "scoregraph/error.hpp"
#include "scoregraph/export.hpp"
#include "scoregraph/graph_measures.hpp"
#include "scoregraph/metrics.hpp"
#include "scoregraph/midi.hpp"
#include "scoregraph/music_graph.hpp"
#include "scoregraph/musicxml.hpp"
#include "scoregraph/partition.hpp"
#include "scoregraph/pitch.hpp"
#include "scoregraph/render.hpp"
#include "scoregraph/report.hpp"
#include "scoregraph/score.hpp"
#include "scoregraph/timeseries.hpp"

namespace scoregraph {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedFile, "cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Parses a MusicXML or Standard MIDI file. The format is taken from the
/// "MThd" magic, not the extension.
inline ScoreData load_score(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.rfind("MThd", 0) == 0) return parse_midi(bytes);
  return parse_musicxml(bytes);
}

}  // namespace scoregraph
