#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scoregraph/scoregraph.hpp"

namespace fs = std::filesystem;
using namespace scoregraph;

namespace {

struct RunConfig {
  std::string graph = "pcir";
  int window_length = 4;
  int window_step = 2;
  std::vector<std::string> metrics;
  std::vector<std::string> formats;
  std::string out = ".";
  std::uint32_t seed = 42;
  double resolution = 1.0;
  std::string method = "greedy";
};

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::vector<MetricId> selected_metrics(const RunConfig& cfg) {
  const auto names = split_list(cfg.metrics);
  if (names.empty()) return {kAllMetrics.begin(), kAllMetrics.end()};
  std::vector<MetricId> ids;
  for (const auto& n : names) ids.push_back(parse_metric_id(n));
  return ids;
}

std::vector<std::string> selected_formats(const RunConfig& cfg, std::vector<std::string> fallback,
                                          const std::vector<std::string>& allowed) {
  auto fmts = split_list(cfg.formats);
  if (fmts.empty()) fmts = std::move(fallback);
  for (const auto& f : fmts) {
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
      throw Error(ErrorKind::InvalidArgument, "format '" + f + "' not available for this command");
  }
  return fmts;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  std::cout << "wrote " << path.string() << "\n";
}

Timeline load_timeline(const std::string& input) {
  if (!fs::exists(input)) throw Error(ErrorKind::MalformedFile, "no such file: '" + input + "'");
  const ScoreData score = load_score(input);
  for (const auto& w : score.warnings) std::cerr << "warning: " << w.code << ": " << w.message << "\n";
  return chordify(score);
}

std::string stem_of(const std::string& input) { return fs::path(input).stem().string(); }

void validate(const RunConfig& cfg) {
  if (cfg.window_length < 1 || cfg.window_step < 1)
    throw Error(ErrorKind::InvalidArgument, "window length and step must be >= 1");
  if (!(cfg.resolution > 0.0)) throw Error(ErrorKind::InvalidArgument, "resolution must be positive");
  parse_graph_kind(cfg.graph);
  if (cfg.method != "greedy" && cfg.method != "entropy")
    throw Error(ErrorKind::InvalidArgument, "method must be greedy or entropy");
}

void cmd_stats(const std::string& input, const RunConfig& cfg) {
  const Timeline tl = load_timeline(input);
  MetricOptions opts;
  opts.resolution = cfg.resolution;
  std::cout << format_report(make_stats_report(tl, opts));
}

void cmd_graph(const std::string& input, const RunConfig& cfg) {
  const Timeline tl = load_timeline(input);
  const GraphKind kind = parse_graph_kind(cfg.graph);
  const MusicGraph g = build_graph(kind, tl);
  const auto fmts = selected_formats(cfg, {"json", "svg"}, {"dot", "graphml", "json", "svg"});
  const fs::path base = fs::path(cfg.out) / (stem_of(input) + "." + cfg.graph);
  for (const auto& f : fmts) {
    std::string text;
    if (f == "dot") text = graph_to_dot(g);
    if (f == "graphml") text = graph_to_graphml(g);
    if (f == "json") text = graph_to_json(g);
    if (f == "svg") text = render_graph_svg(g, {}, cfg.seed);
    write_text(base.string() + "." + f, text);
  }
}

void cmd_ecg(const std::string& input, const RunConfig& cfg) {
  const Timeline tl = load_timeline(input);
  MetricOptions opts;
  opts.resolution = cfg.resolution;
  const auto ids = selected_metrics(cfg);
  const MetricSeries series = compute_series(tl, {cfg.window_length, cfg.window_step}, ids, opts);
  for (const auto& d : series.diagnostics) std::cerr << "gap: " << d.code << ": " << d.message << "\n";
  const auto fmts = selected_formats(cfg, {"csv", "svg"}, {"csv", "svg"});
  const fs::path base = fs::path(cfg.out) / (stem_of(input) + ".ecg");
  for (const auto& f : fmts) write_text(base.string() + "." + f, f == "csv" ? series_to_csv(series) : render_ecg_svg(series, ids));
}

void cmd_compare(const std::string& a, const std::string& b, const RunConfig& cfg) {
  const auto names = split_list(cfg.metrics);
  if (names.size() != 1) throw Error(ErrorKind::InvalidArgument, "compare needs exactly one metric id in --metrics");
  const MetricId id = parse_metric_id(names.front());
  auto column = [&](const std::string& path) {
    const MetricSeries s = series_from_csv(read_file(path));
    auto it = s.values.find(id);
    if (it == s.values.end()) throw Error(ErrorKind::MissingColumn, "'" + path + "' has no column " + to_string(id));
    std::vector<double> v;
    for (const auto& x : it->second)
      if (x) v.push_back(*x);
    return v;
  };
  const DtwResult r = dtw(column(a), column(b));
  std::cout << "metric: " << to_string(id) << "\n"
            << "cost: " << format_number(r.cost) << "\n"
            << "path length: " << r.path.size() << "\n";
}

void cmd_communities(const std::string& input, const RunConfig& cfg) {
  const Timeline tl = load_timeline(input);
  const GraphKind kind = parse_graph_kind(cfg.graph);
  const MusicGraph g = build_graph(kind, tl);
  const Partition p = cfg.method == "greedy" ? greedy_modularity(g, {cfg.resolution, false}) : entropy_min_partition(g);
  std::cout << "graph: " << cfg.graph << "\nmethod: " << cfg.method << "\ncommunities: " << p.size() << "\n";
  if (cfg.method == "greedy") std::cout << "modularity: " << format_number(modularity(g, p, {cfg.resolution, false})) << "\n";
  const auto fmts = selected_formats(cfg, {"svg"}, {"svg", "dot", "graphml", "json"});
  const fs::path base = fs::path(cfg.out) / (stem_of(input) + "." + cfg.graph + "." + cfg.method);
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::cout << "community " << i + 1 << ":\n";
    for (NodeKind k : {NodeKind::PitchClass, NodeKind::Chord, NodeKind::Rhythm, NodeKind::IntervalClass}) {
      std::string line;
      for (const auto& v : p.communities()[i])
        if (kind_of(v) == k) line += (line.empty() ? "" : " ") + label(v);
      if (!line.empty()) std::cout << "  " << to_string(k) << ": " << line << "\n";
    }
    const auto& members = p.communities()[i];
    const MusicGraph sub = induced_subgraph(g, {members.begin(), members.end()});
    for (const auto& f : fmts) {
      std::string text;
      if (f == "svg") text = render_graph_svg(sub, {}, cfg.seed);
      if (f == "dot") text = graph_to_dot(sub);
      if (f == "graphml") text = graph_to_graphml(sub);
      if (f == "json") text = graph_to_json(sub);
      write_text(base.string() + ".community-" + std::to_string(i + 1) + "." + f, text);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph and entropy analysis of symbolic scores"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Plain-text key = value file; flags override it")->envname("SCORE_GRAPHS_CONFIG");

  RunConfig cfg;
  app.add_option("--graph", cfg.graph, "pcr | pcir | vertical | horizontal | chords")->capture_default_str();
  app.add_option("--window-length", cfg.window_length, "Window length in measures")->capture_default_str();
  app.add_option("--window-step", cfg.window_step, "Window step in measures")->capture_default_str();
  app.add_option("--metrics", cfg.metrics, "Comma-separated metric ids (default: all)")->delimiter(',');
  app.add_option("--format", cfg.formats, "Comma-separated: dot,graphml,json,svg,csv")->delimiter(',');
  app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Layout seed")->capture_default_str();
  app.add_option("--resolution", cfg.resolution, "Modularity resolution")->capture_default_str();
  app.add_option("--method", cfg.method, "greedy | entropy")->capture_default_str();

  std::string input, other;
  auto* stats = app.add_subcommand("stats", "Print the statistics report of a score");
  stats->add_option("input", input, "MusicXML or MIDI file")->required();
  auto* graph = app.add_subcommand("graph", "Build one graph and write it out");
  graph->add_option("input", input, "MusicXML or MIDI file")->required();
  auto* ecg = app.add_subcommand("ecg", "Windowed metric series as CSV and SVG");
  ecg->add_option("input", input, "MusicXML or MIDI file")->required();
  auto* compare = app.add_subcommand("compare", "DTW cost between one metric column of two CSVs");
  compare->add_option("csv_a", input, "First series CSV")->required();
  compare->add_option("csv_b", other, "Second series CSV")->required();
  auto* communities = app.add_subcommand("communities", "Detect and list communities");
  communities->add_option("input", input, "MusicXML or MIDI file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    validate(cfg);
    if (stats->parsed()) cmd_stats(input, cfg);
    if (graph->parsed()) cmd_graph(input, cfg);
    if (ecg->parsed()) cmd_ecg(input, cfg);
    if (compare->parsed()) cmd_compare(input, other, cfg);
    if (communities->parsed()) cmd_communities(input, cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
