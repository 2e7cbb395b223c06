#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scoregraph/builders.hpp"
#include "scoregraph/communities.hpp"
#include "scoregraph/export.hpp"
#include "scoregraph/graph_measures.hpp"
#include "scoregraph/timeseries.hpp"

namespace scoregraph {

inline const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::PitchChordRhythm:         return "pcr";
    case GraphKind::PitchChordIntervalRhythm: return "pcir";
    case GraphKind::VerticalPitchClass:       return "vertical";
    case GraphKind::HorizontalPitchClass:     return "horizontal";
    case GraphKind::ChordSequence:            return "chords";
  }
  return "unknown";
}

inline GraphKind parse_graph_kind(std::string_view name) {
  for (GraphKind k : {GraphKind::PitchChordRhythm, GraphKind::PitchChordIntervalRhythm, GraphKind::VerticalPitchClass,
                      GraphKind::HorizontalPitchClass, GraphKind::ChordSequence})
    if (name == to_string(k)) return k;
  throw Error(ErrorKind::InvalidArgument, "unknown graph kind '" + std::string(name) + "'");
}

struct GraphSummary {
  GraphKind kind{};
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::optional<double> density;
  std::optional<double> average_clustering;
  std::string unavailable;  // reason when the graph could not be built
};

/// Whole-fragment statistics. The five entropies and the p-c-i-r measures
/// are produced by evaluate_metrics, so they agree bit for bit with a
/// single window spanning the fragment.
struct StatsReport {
  std::size_t events = 0;
  Rational total_duration;
  MetricValues metrics;
  std::vector<GraphSummary> graphs;
  std::optional<double> pcr_degree_entropy;
  std::optional<std::size_t> pcr_communities;
  std::optional<double> pcr_modularity;
  std::optional<std::size_t> chord_cycle_basis;
  std::vector<Diagnostic> diagnostics;
};

inline StatsReport make_stats_report(const Timeline& timeline, const MetricOptions& opts = {}) {
  StatsReport r;
  r.events = timeline.events.size();
  r.total_duration = timeline.total_duration;
  const std::vector<MetricId> all(kAllMetrics.begin(), kAllMetrics.end());
  r.metrics = evaluate_metrics(timeline, all, opts, &r.diagnostics);

  for (GraphKind kind : {GraphKind::PitchChordRhythm, GraphKind::PitchChordIntervalRhythm, GraphKind::VerticalPitchClass,
                         GraphKind::HorizontalPitchClass, GraphKind::ChordSequence}) {
    GraphSummary s;
    s.kind = kind;
    try {
      const MusicGraph g = build_graph(kind, timeline);
      s.nodes = g.order();
      s.edges = g.size();
      if (g.order() >= 2) s.density = density(g);
      s.average_clustering = average_clustering(g);
      if (kind == GraphKind::PitchChordRhythm) {
        try {
          r.pcr_degree_entropy = centrality_entropy(g, CentralityKind::Degree);
          const Partition p = greedy_modularity(g, {opts.resolution, false});
          r.pcr_communities = p.size();
          r.pcr_modularity = modularity(g, p, {opts.resolution, false});
        } catch (const Error& e) {
          r.diagnostics.push_back({"pcr", e.what()});
        }
      }
      if (kind == GraphKind::ChordSequence) r.chord_cycle_basis = cycle_basis_size(g);
    } catch (const Error& e) {
      s.unavailable = e.what();
    }
    r.graphs.push_back(std::move(s));
  }
  return r;
}

inline std::string format_report(const StatsReport& r) {
  auto num = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("n/a"); };
  std::ostringstream os;
  os << "events: " << r.events << "\n";
  os << "total duration: " << to_decimal(r.total_duration) << " qL\n";
  for (MetricId id : {MetricId::PcEntropyByDuration, MetricId::PcEntropyByOccurrence, MetricId::ChordEntropyByDuration,
                      MetricId::ChordEntropyByOccurrence, MetricId::RhythmEntropyByOccurrence})
    os << to_string(id) << ": " << num(r.metrics.at(id)) << "\n";
  for (const auto& g : r.graphs) {
    os << "graph " << to_string(g.kind) << ": ";
    if (!g.unavailable.empty()) {
      os << "unavailable (" << g.unavailable << ")\n";
      continue;
    }
    os << "nodes " << g.nodes << ", edges " << g.edges << ", density " << num(g.density) << ", average clustering "
       << num(g.average_clustering) << "\n";
  }
  os << "pcr degree-centrality entropy: " << num(r.pcr_degree_entropy) << "\n";
  os << "pcr communities: " << (r.pcr_communities ? std::to_string(*r.pcr_communities) : "n/a") << "\n";
  os << "pcr modularity: " << num(r.pcr_modularity) << "\n";
  os << "chord cycle basis: " << (r.chord_cycle_basis ? std::to_string(*r.chord_cycle_basis) : "n/a") << "\n";
  for (MetricId id : {MetricId::GraphEntropyByDegreeCentrality, MetricId::GraphEntropyByEigenvectorCentrality,
                      MetricId::VonNeumannEntropy, MetricId::Density, MetricId::CommunityCount, MetricId::Modularity})
    os << "pcir " << to_string(id) << ": " << num(r.metrics.at(id)) << "\n";
  for (const auto& d : r.diagnostics) os << "note: " << d.code << ": " << d.message << "\n";
  return os.str();
}

}  // namespace scoregraph
