#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoregraph/builders.hpp"
#include "scoregraph/communities.hpp"
#include "scoregraph/graph_measures.hpp"
#include "scoregraph/metrics.hpp"
#include "scoregraph/score.hpp"

namespace scoregraph {

struct WindowSpec {
  int length_measures = 4;
  int step_measures = 2;
};

/// The eleven per-window metrics, in plotting order.
enum class MetricId {
  PcEntropyByDuration,
  PcEntropyByOccurrence,
  ChordEntropyByDuration,
  ChordEntropyByOccurrence,
  RhythmEntropyByOccurrence,
  GraphEntropyByDegreeCentrality,
  GraphEntropyByEigenvectorCentrality,
  VonNeumannEntropy,
  Density,
  CommunityCount,
  Modularity,
};

inline constexpr std::array<MetricId, 11> kAllMetrics = {
    MetricId::PcEntropyByDuration,         MetricId::PcEntropyByOccurrence,
    MetricId::ChordEntropyByDuration,      MetricId::ChordEntropyByOccurrence,
    MetricId::RhythmEntropyByOccurrence,   MetricId::GraphEntropyByDegreeCentrality,
    MetricId::GraphEntropyByEigenvectorCentrality, MetricId::VonNeumannEntropy,
    MetricId::Density,                     MetricId::CommunityCount,
    MetricId::Modularity,
};

inline const char* to_string(MetricId id) {
  switch (id) {
    case MetricId::PcEntropyByDuration:                 return "pc-entropy-by-duration";
    case MetricId::PcEntropyByOccurrence:               return "pc-entropy-by-occurrence";
    case MetricId::ChordEntropyByDuration:              return "chord-entropy-by-duration";
    case MetricId::ChordEntropyByOccurrence:            return "chord-entropy-by-occurrence";
    case MetricId::RhythmEntropyByOccurrence:           return "rhythm-entropy-by-occurrence";
    case MetricId::GraphEntropyByDegreeCentrality:      return "graph-entropy-by-degree-centrality";
    case MetricId::GraphEntropyByEigenvectorCentrality: return "graph-entropy-by-eigenvector-centrality";
    case MetricId::VonNeumannEntropy:                   return "von-neumann-entropy";
    case MetricId::Density:                             return "density";
    case MetricId::CommunityCount:                      return "community-count";
    case MetricId::Modularity:                          return "modularity";
  }
  return "unknown";
}

inline MetricId parse_metric_id(std::string_view name) {
  for (MetricId id : kAllMetrics)
    if (name == to_string(id)) return id;
  throw Error(ErrorKind::InvalidArgument, "unknown metric id '" + std::string(name) + "'");
}

struct Window {
  double center = 0.0;  // barline position
  int first_measure = 0;
  int last_measure = 0;
  Rational start;
  Rational end;
  Timeline timeline;  // events clipped to [start, end)
};

namespace timeseries_detail {

inline Timeline clip(const Timeline& tl, const Rational& start, const Rational& end) {
  Timeline out;
  for (const auto& e : tl.events) {
    const Rational s = std::max(e.onset, start);
    const Rational f = std::min(e.offset(), end);
    if (s < f) out.events.push_back(Event{s, f - s, e.pitch_classes});
  }
  for (const auto& [number, onset] : tl.measure_onsets)
    if (onset >= start && onset < end) out.measure_onsets.emplace(number, onset);
  out.total_duration = end - start;
  return out;
}

}  // namespace timeseries_detail

/// Fixed-length windows starting at the first measure and advancing by the
/// step. Only full windows are emitted, plus one window anchored to the last
/// measure when the sweep would leave trailing measures uncovered. A window
/// longer than the piece collapses to the whole piece.
inline std::vector<Window> windows(const Timeline& timeline, const WindowSpec& spec) {
  if (spec.length_measures < 1 || spec.step_measures < 1)
    throw Error(ErrorKind::InvalidArgument, "window length and step must be >= 1");
  if (timeline.measure_onsets.empty()) throw Error(ErrorKind::NoMeasures, "timeline has no measure boundaries");

  std::vector<int> numbers;
  std::vector<Rational> starts;
  for (const auto& [number, onset] : timeline.measure_onsets) {
    numbers.push_back(number);
    starts.push_back(onset);
  }
  const int count = static_cast<int>(numbers.size());
  auto measure_end = [&](int i) { return i + 1 < count ? starts[static_cast<std::size_t>(i + 1)] : timeline.total_duration; };
  const int length = std::min(spec.length_measures, count);

  auto make = [&](int first) {
    const int last = first + length - 1;
    Window w;
    w.first_measure = numbers[static_cast<std::size_t>(first)];
    w.last_measure = numbers[static_cast<std::size_t>(last)];
    w.center = (static_cast<double>(w.first_measure) + static_cast<double>(w.last_measure) + 1.0) / 2.0;
    w.start = starts[static_cast<std::size_t>(first)];
    w.end = measure_end(last);
    w.timeline = timeseries_detail::clip(timeline, w.start, w.end);
    return w;
  };

  std::vector<Window> out;
  int first = 0;
  for (; first + length <= count; first += spec.step_measures) out.push_back(make(first));
  if (out.empty() || out.back().last_measure != numbers.back()) out.push_back(make(count - length));
  return out;
}

struct MetricOptions {
  double resolution = 1.0;
  EigenvectorOptions eigen;
};

using MetricValues = std::map<MetricId, std::optional<double>>;

/// Evaluates the requested metrics on one fragment. Metrics 1-5 come from
/// the element distributions, the rest from the p-c-i-r graph and its greedy
/// modularity partition. A metric that cannot be computed is left empty and
/// explained in `diagnostics`.
inline MetricValues evaluate_metrics(const Timeline& fragment, const std::vector<MetricId>& metrics,
                                     const MetricOptions& opts = {}, std::vector<Diagnostic>* diagnostics = nullptr) {
  MetricValues out;
  for (MetricId id : metrics) out[id] = std::nullopt;
  if (fragment.events.empty()) {
    if (diagnostics) diagnostics->push_back({"EmptyWindow", "no events in fragment"});
    return out;
  }

  const ElementStats stats = accumulate_weights(fragment);
  std::optional<MusicGraph> graph;
  std::optional<Partition> partition;
  auto need_graph = [&]() -> const MusicGraph& {
    if (!graph) graph = build_pcir(stats);
    return *graph;
  };
  auto need_partition = [&]() -> const Partition& {
    if (!partition) partition = greedy_modularity(need_graph(), {opts.resolution, false});
    return *partition;
  };

  for (MetricId id : metrics) {
    try {
      double v = 0.0;
      switch (id) {
        case MetricId::PcEntropyByDuration: {
          std::vector<double> w;
          for (const auto& [pc, s] : stats.pc_stats) w.push_back(to_double(s.duration));
          v = shannon_entropy(w);
          break;
        }
        case MetricId::PcEntropyByOccurrence: {
          std::vector<double> w;
          for (const auto& [pc, s] : stats.pc_stats) w.push_back(static_cast<double>(s.count));
          v = shannon_entropy(w);
          break;
        }
        case MetricId::ChordEntropyByDuration: {
          std::vector<double> w;
          for (const auto& [c, s] : stats.chord_stats) w.push_back(to_double(s.duration));
          v = shannon_entropy(w);
          break;
        }
        case MetricId::ChordEntropyByOccurrence: {
          std::vector<double> w;
          for (const auto& [c, s] : stats.chord_stats) w.push_back(static_cast<double>(s.count));
          v = shannon_entropy(w);
          break;
        }
        case MetricId::RhythmEntropyByOccurrence: {
          std::vector<double> w;
          for (const auto& [r, count] : stats.rhythm_stats) w.push_back(static_cast<double>(count));
          v = shannon_entropy(w);
          break;
        }
        case MetricId::GraphEntropyByDegreeCentrality:
          v = centrality_entropy(need_graph(), CentralityKind::Degree);
          break;
        case MetricId::GraphEntropyByEigenvectorCentrality:
          v = centrality_entropy(need_graph(), CentralityKind::Eigenvector, opts.eigen);
          break;
        case MetricId::VonNeumannEntropy:
          v = von_neumann_entropy(need_graph());
          break;
        case MetricId::Density:
          v = density(need_graph());
          break;
        case MetricId::CommunityCount:
          v = static_cast<double>(need_partition().size());
          break;
        case MetricId::Modularity:
          v = modularity(need_graph(), need_partition(), {opts.resolution, false});
          break;
      }
      out[id] = v;
    } catch (const Error& e) {
      if (diagnostics) diagnostics->push_back({to_string(id), e.what()});
    }
  }
  return out;
}

struct MetricSeries {
  std::vector<double> window_centers;
  std::vector<MetricId> metrics;
  std::map<MetricId, std::vector<std::optional<double>>> values;
  std::vector<Diagnostic> diagnostics;

  std::size_t size() const { return window_centers.size(); }
};

/// One value per window per metric; failures become gaps, never aborts.
inline MetricSeries compute_series(const Timeline& timeline, const WindowSpec& spec,
                                   const std::vector<MetricId>& metrics, const MetricOptions& opts = {}) {
  const std::vector<Window> ws = windows(timeline, spec);
  if (ws.empty()) throw Error(ErrorKind::EmptySeries, "no windows");
  MetricSeries series;
  series.metrics = metrics;
  for (MetricId id : metrics) series.values[id].reserve(ws.size());
  for (const auto& w : ws) {
    series.window_centers.push_back(w.center);
    std::vector<Diagnostic> local;
    const MetricValues vals = evaluate_metrics(w.timeline, metrics, opts, &local);
    for (MetricId id : metrics) series.values[id].push_back(vals.at(id));
    for (auto& d : local) {
      d.message = "window centered at " + to_decimal(Rational(static_cast<std::int64_t>(w.center * 2), 2)) + ": " + d.message;
      series.diagnostics.push_back(std::move(d));
    }
  }
  return series;
}

}  // namespace scoregraph
