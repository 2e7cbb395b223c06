#include <gtest/gtest.h>

#include <random>
#include <regex>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "scoregraph/scoregraph.hpp"
#include "support/oracles.hpp"

using namespace scoregraph;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

Timeline random_timeline(std::mt19937& rng, int n) {
  Timeline tl;
  Rational t{0};
  for (int i = 0; i < n; ++i) {
    PitchClassSet pcs;
    for (int j = 0, k = 1 + static_cast<int>(rng() % 4); j < k; ++j) pcs.insert(static_cast<int>(rng() % 12));
    const Rational d(1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 3));
    tl.events.push_back(Event{t, d, pcs});
    t += d;
  }
  tl.total_duration = t;
  tl.measure_onsets[1] = 0;
  return tl;
}

Timeline one_event(PitchClassSet pcs) {
  Timeline tl;
  tl.events = {Event{0, 1, pcs}};
  tl.total_duration = 1;
  tl.measure_onsets[1] = 0;
  return tl;
}

MetricSeries sample_series(std::size_t windows, std::mt19937& rng) {
  MetricSeries s;
  s.metrics.assign(kAllMetrics.begin(), kAllMetrics.end());
  std::uniform_real_distribution<double> u(-3.0, 7.0);
  for (std::size_t i = 0; i < windows; ++i) s.window_centers.push_back(1.5 + static_cast<double>(i));
  for (MetricId id : s.metrics)
    for (std::size_t i = 0; i < windows; ++i) s.values[id].push_back(u(rng) / 3.0);
  return s;
}

}  // namespace

TEST(Json, SingleNodeRoundTrip) {
  MusicGraph g(false);
  g.add_node(pc_node(3), {Rational(3, 2), 2});
  const std::string text = graph_to_json(g);
  const nlohmann::json doc = nlohmann::json::parse(text);
  EXPECT_EQ(doc["nodes"].size(), 1u);
  EXPECT_EQ(doc["edges"].size(), 0u);
  EXPECT_EQ(graph_from_json(text), g);
}

TEST(Json, RoundTripEveryGraphKind) {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const Timeline tl = random_timeline(rng, 2 + static_cast<int>(rng() % 25));
    for (GraphKind kind : {GraphKind::PitchChordRhythm, GraphKind::PitchChordIntervalRhythm, GraphKind::VerticalPitchClass,
                           GraphKind::HorizontalPitchClass, GraphKind::ChordSequence}) {
      const MusicGraph g = build_graph(kind, tl);
      EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
    }
  }
}

TEST(Json, RejectsBadInput) {
  EXPECT_THROW(graph_from_json("{"), Error);
  EXPECT_THROW(graph_from_json(R"({"directed":false,"nodes":[{"id":0,"type":"moon","value":1,"occurrences":1}],"edges":[]})"),
               Error);
  EXPECT_THROW(graph_from_json(R"({"directed":false,"nodes":[],"edges":[{"source":0,"target":1,"weight":1}]})"), Error);
}

TEST(Dot, OneEventPcrGraph) {
  const MusicGraph g = build_pcr(accumulate_weights(one_event({0, 4})));
  const std::string dot = graph_to_dot(g);
  EXPECT_EQ(dot.rfind("graph music {", 0), 0u);
  EXPECT_EQ(count(dot, "[label="), 4u);
  EXPECT_EQ(count(dot, " -- "), 3u);
  EXPECT_NE(dot.find("label=\"1 qL\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"(0, 4)\""), std::string::npos);
  EXPECT_NE(dot.find("type=\"rhythm\""), std::string::npos);
  EXPECT_NE(dot.find("occurrences=1"), std::string::npos);
  EXPECT_NE(dot.find("weight=1"), std::string::npos);
}

TEST(GraphMl, StructureMatchesGraph) {
  std::mt19937 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const Timeline tl = random_timeline(rng, 3 + static_cast<int>(rng() % 20));
    for (GraphKind kind : {GraphKind::PitchChordIntervalRhythm, GraphKind::HorizontalPitchClass}) {
      const MusicGraph g = build_graph(kind, tl);
      std::istringstream in(graph_to_graphml(g));
      boost::property_tree::ptree doc;
      ASSERT_NO_THROW(boost::property_tree::read_xml(in, doc));
      const auto& root = doc.get_child("graphml");
      std::set<std::string> keys;
      for (const auto& [k, v] : root)
        if (k == "key") keys.insert(v.get<std::string>("<xmlattr>.id"));
      EXPECT_EQ(keys, (std::set<std::string>{"type", "label", "duration", "occurrences", "weight"}));
      const auto& graph = root.get_child("graph");
      EXPECT_EQ(graph.get<std::string>("<xmlattr>.edgedefault"), g.directed() ? "directed" : "undirected");
      std::set<std::string> node_ids;
      std::size_t edges = 0;
      for (const auto& [k, v] : graph) {
        if (k == "node") {
          node_ids.insert(v.get<std::string>("<xmlattr>.id"));
          for (const auto& [dk, dv] : v)
            if (dk == "data") {
              EXPECT_TRUE(keys.count(dv.get<std::string>("<xmlattr>.key")));
            }
        }
        if (k == "edge") {
          ++edges;
          EXPECT_TRUE(node_ids.count(v.get<std::string>("<xmlattr>.source")));
          EXPECT_TRUE(node_ids.count(v.get<std::string>("<xmlattr>.target")));
          EXPECT_GE(v.get<long>("data"), 1);
        }
      }
      EXPECT_EQ(node_ids.size(), g.order());
      EXPECT_EQ(edges, g.size());
    }
  }
}

TEST(Style, SizeOpacityAndColor) {
  Timeline tl;
  tl.events = {Event{0, 4, {0}}, Event{4, 1, {2}}, Event{5, 1, {2}}, Event{6, 1, {2}}};
  tl.total_duration = 7;
  const MusicGraph g = build_pcr(accumulate_weights(tl));
  const RenderStyle style;
  const StyledGraph s(g, style);
  NodeId widest = pc_node(0);
  for (const auto& [v, w] : g.nodes()) {
    EXPECT_GE(s.opacity.at(v), 0.25);
    EXPECT_LE(s.opacity.at(v), 1.0);
    if (s.radius.at(v) > s.radius.at(widest)) widest = v;
  }
  // pc 0 and chord (0) tie for the largest duration (4 qL).
  EXPECT_EQ(s.radius.at(pc_node(0)), style.max_radius);
  EXPECT_EQ(s.radius.at(widest), style.max_radius);
  EXPECT_EQ(s.opacity.at(pc_node(2)), 1.0);
  EXPECT_EQ(s.opacity.at(pc_node(0)), 0.25);
  EXPECT_EQ(style.color(NodeKind::PitchClass), "#40e0d0");
  EXPECT_NE(style.color(NodeKind::IntervalClass), style.color(NodeKind::Chord));
}

TEST(Svg, PathDrawsThreeCirclesTwoLines) {
  MusicGraph g(false);
  g.add_edge(pc_node(0), pc_node(1));
  g.add_edge(pc_node(1), pc_node(2));
  const std::string svg = render_graph_svg(g, {}, 7);
  EXPECT_EQ(count(svg, "<circle "), 3u);
  EXPECT_EQ(count(svg, "<line "), 2u);
  std::istringstream in(svg);
  boost::property_tree::ptree doc;
  EXPECT_NO_THROW(boost::property_tree::read_xml(in, doc));
}

TEST(Svg, DeterministicPerSeed) {
  std::mt19937 rng(79);
  const MusicGraph g = build_pcir(accumulate_weights(random_timeline(rng, 20)));
  EXPECT_EQ(render_graph_svg(g, {}, 42), render_graph_svg(g, {}, 42));
  EXPECT_NE(render_graph_svg(g, {}, 42), render_graph_svg(g, {}, 43));
}

TEST(Svg, LargestDurationGetsLargestRadius) {
  Timeline tl;
  tl.events = {Event{0, 6, {0, 7}}, Event{6, 1, {2}}, Event{7, 1, {4}}};
  tl.total_duration = 8;
  const MusicGraph g = build_vertical_pc(tl);
  const std::string svg = render_graph_svg(g, {}, 1);
  const std::regex circle("<circle [^>]*r=\"([0-9.]+)\"");
  double max_r = 0.0;
  std::size_t circles = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator(); ++it) {
    max_r = std::max(max_r, std::stod((*it)[1]));
    ++circles;
  }
  EXPECT_EQ(circles, 4u);
  EXPECT_EQ(max_r, RenderStyle{}.max_radius);
}

TEST(Ecg, GapSplitsPolyline) {
  MetricSeries s;
  s.metrics = {MetricId::Density};
  s.window_centers = {1.5, 2.5, 3.5, 4.5};
  s.values[MetricId::Density] = {0.1, 0.2, std::nullopt, 0.3};
  const std::string svg = render_ecg_svg(s, s.metrics);
  EXPECT_EQ(count(svg, "<polyline "), 2u);
  EXPECT_NE(svg.find("density"), std::string::npos);
  EXPECT_THROW(render_ecg_svg(MetricSeries{}, {}), Error);
}

TEST(Csv, ShapeAndRoundTrip) {
  std::mt19937 rng(83);
  const MetricSeries s = sample_series(8, rng);
  const std::string csv = series_to_csv(s);
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(count(line, ","), 11u);
    ++rows;
  }
  EXPECT_EQ(rows, 9u);
  const MetricSeries back = series_from_csv(csv);
  ASSERT_EQ(back.size(), 8u);
  EXPECT_EQ(back.metrics, s.metrics);
  for (MetricId id : s.metrics)
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(*back.values.at(id)[i], *s.values.at(id)[i], 1e-12);
}

TEST(Csv, SingleRowAndGaps) {
  MetricSeries s;
  s.metrics = {MetricId::Density, MetricId::Modularity};
  s.window_centers = {4.5};
  s.values[MetricId::Density] = {std::nullopt};
  s.values[MetricId::Modularity] = {std::nullopt};
  const std::string csv = series_to_csv(s);
  EXPECT_EQ(csv, "window_center,density,modularity\n4.5,,\n");
  const MetricSeries back = series_from_csv(csv);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_FALSE(back.values.at(MetricId::Modularity)[0].has_value());
  EXPECT_THROW(series_to_csv(MetricSeries{}), Error);
  EXPECT_THROW(series_from_csv("window_center,nonsense\n1,2\n"), Error);
}

TEST(Numbers, FifteenSignificantDigits) {
  EXPECT_EQ(format_number(0.1036036036036036), "0.103603603603604");
  EXPECT_EQ(format_number(34.0), "34");
  EXPECT_EQ(format_number(0.0), "0");
}
