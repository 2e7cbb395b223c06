#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scoregraph/music_graph.hpp"

namespace scoregraph {

/// Shortest decimal form with 15 significant digits.
inline std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string format_rational(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error(ErrorKind::MalformedFile, "bad rational '" + text + "'");
  }
}

struct RenderStyle {
  std::string pitch_class_color = "#40e0d0";   // turquoise
  std::string chord_color = "#e0302a";         // red
  std::string rhythm_color = "#2a5ce0";        // blue
  std::string interval_class_color = "#f0a020";  // amber
  double min_radius = 6.0;
  double max_radius = 28.0;
  double min_opacity = 0.25;
  double max_edge_width = 6.0;

  const std::string& color(NodeKind k) const {
    switch (k) {
      case NodeKind::PitchClass:    return pitch_class_color;
      case NodeKind::Chord:         return chord_color;
      case NodeKind::Rhythm:        return rhythm_color;
      case NodeKind::IntervalClass: return interval_class_color;
    }
    return chord_color;
  }
};

/// Per-node and per-edge visual attributes derived from a RenderStyle.
/// Area grows linearly with duration weight; nodes without one get the
/// minimum radius. Opacity is the min-max normalized occurrence count mapped
/// onto [min_opacity, 1]. Edge width grows linearly with weight.
struct StyledGraph {
  std::map<NodeId, double> radius;
  std::map<NodeId, double> opacity;
  std::map<MusicGraph::EdgeKey, double> width;

  StyledGraph(const MusicGraph& g, const RenderStyle& style) {
    double max_duration = 0.0;
    long min_occ = 0, max_occ = 0;
    bool first = true;
    for (const auto& [id, w] : g.nodes()) {
      if (w.duration) max_duration = std::max(max_duration, to_double(*w.duration));
      if (first || w.occurrences < min_occ) min_occ = w.occurrences;
      if (first || w.occurrences > max_occ) max_occ = w.occurrences;
      first = false;
    }
    for (const auto& [id, w] : g.nodes()) {
      double r = style.min_radius;
      if (w.duration && max_duration > 0.0) {
        const double share = to_double(*w.duration) / max_duration;
        r = std::max(style.min_radius, style.max_radius * std::sqrt(share));
      }
      radius.emplace(id, r);
      const double t = max_occ > min_occ ? static_cast<double>(w.occurrences - min_occ) / static_cast<double>(max_occ - min_occ) : 1.0;
      opacity.emplace(id, style.min_opacity + (1.0 - style.min_opacity) * t);
    }
    long max_weight = 1;
    for (const auto& [e, w] : g.edges()) max_weight = std::max(max_weight, w);
    for (const auto& [e, w] : g.edges())
      width.emplace(e, std::max(0.5, style.max_edge_width * static_cast<double>(w) / static_cast<double>(max_weight)));
  }
};

namespace export_detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string duration_text(const NodeWeights& w) { return w.duration ? format_number(to_double(*w.duration)) : ""; }

inline std::string hex_alpha(double opacity) {
  char buf[3];
  std::snprintf(buf, sizeof buf, "%02x", static_cast<int>(std::lround(opacity * 255.0)));
  return buf;
}

}  // namespace export_detail

/// Graphviz text. Nodes are named n0, n1, ... in NodeId order.
inline std::string graph_to_dot(const MusicGraph& g, const RenderStyle& style = {}) {
  const GraphIndex idx(g);
  const StyledGraph styled(g, style);
  std::ostringstream os;
  const char* arrow = g.directed() ? " -> " : " -- ";
  os << (g.directed() ? "digraph" : "graph") << " music {\n";
  os << "  node [shape=circle, style=filled, fixedsize=true];\n";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const NodeId& id = idx.nodes[i];
    const NodeWeights& w = g.nodes().at(id);
    os << "  n" << i << " [label=\"" << export_detail::dot_escape(label(id)) << "\", type=\"" << to_string(kind_of(id))
       << "\", duration=\"" << export_detail::duration_text(w) << "\", occurrences=" << w.occurrences
       << ", fillcolor=\"" << style.color(kind_of(id)) << export_detail::hex_alpha(styled.opacity.at(id))
       << "\", width=" << format_number(2.0 * styled.radius.at(id) / 72.0) << "];\n";
  }
  for (const auto& [e, weight] : g.edges()) {
    os << "  n" << idx.position.at(e.first) << arrow << "n" << idx.position.at(e.second) << " [weight=" << weight
       << ", penwidth=" << format_number(styled.width.at(e)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

/// GraphML with typed attribute keys for node type, label, both node
/// weights, and edge weight.
inline std::string graph_to_graphml(const MusicGraph& g) {
  const GraphIndex idx(g);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
     << "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
     << "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
        "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
     << "  <key id=\"type\" for=\"node\" attr.name=\"type\" attr.type=\"string\"/>\n"
     << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
     << "  <key id=\"duration\" for=\"node\" attr.name=\"duration\" attr.type=\"double\"/>\n"
     << "  <key id=\"occurrences\" for=\"node\" attr.name=\"occurrences\" attr.type=\"long\"/>\n"
     << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
     << "  <graph id=\"G\" edgedefault=\"" << (g.directed() ? "directed" : "undirected") << "\">\n";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const NodeId& id = idx.nodes[i];
    const NodeWeights& w = g.nodes().at(id);
    os << "    <node id=\"n" << i << "\">\n"
       << "      <data key=\"type\">" << to_string(kind_of(id)) << "</data>\n"
       << "      <data key=\"label\">" << export_detail::xml_escape(label(id)) << "</data>\n";
    if (w.duration) os << "      <data key=\"duration\">" << export_detail::duration_text(w) << "</data>\n";
    os << "      <data key=\"occurrences\">" << w.occurrences << "</data>\n"
       << "    </node>\n";
  }
  std::size_t k = 0;
  for (const auto& [e, weight] : g.edges()) {
    os << "    <edge id=\"e" << k++ << "\" source=\"n" << idx.position.at(e.first) << "\" target=\"n"
       << idx.position.at(e.second) << "\">\n"
       << "      <data key=\"weight\">" << weight << "</data>\n"
       << "    </edge>\n";
  }
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

namespace export_detail {

inline nlohmann::json node_to_json(const NodeId& id) {
  nlohmann::json j;
  j["type"] = to_string(kind_of(id));
  j["label"] = label(id);
  switch (kind_of(id)) {
    case NodeKind::PitchClass:    j["value"] = std::get<PitchClassNode>(id).pc; break;
    case NodeKind::Chord:         j["value"] = std::get<ChordNode>(id).pcs.to_vector(); break;
    case NodeKind::Rhythm:        j["value"] = format_rational(std::get<RhythmNode>(id).value); break;
    case NodeKind::IntervalClass: j["value"] = std::get<IntervalClassNode>(id).ic; break;
  }
  return j;
}

inline NodeId node_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  const nlohmann::json& v = j.at("value");
  if (type == "pitch_class") {
    const int pc = v.get<int>();
    if (pc < 0 || pc > 11) throw Error(ErrorKind::MalformedFile, "pitch class out of range");
    return pc_node(pc);
  }
  if (type == "chord") {
    PitchClassSet pcs;
    for (const auto& x : v) pcs.insert(x.get<int>());
    if (pcs.size() == 0) throw Error(ErrorKind::MalformedFile, "empty chord");
    return chord_node(pcs);
  }
  if (type == "rhythm") return rhythm_node(parse_rational(v.get<std::string>()));
  if (type == "interval_class") return ic_node(v.get<int>());
  throw Error(ErrorKind::MalformedFile, "unknown node type '" + type + "'");
}

}  // namespace export_detail

/// Lossless JSON form. Durations and rhythm values are exact rationals
/// written as "p/q" strings.
inline std::string graph_to_json(const MusicGraph& g) {
  const GraphIndex idx(g);
  nlohmann::json doc;
  doc["directed"] = g.directed();
  doc["nodes"] = nlohmann::json::array();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const NodeId& id = idx.nodes[i];
    const NodeWeights& w = g.nodes().at(id);
    nlohmann::json j = export_detail::node_to_json(id);
    j["id"] = i;
    if (w.duration) j["duration"] = format_rational(*w.duration);
    j["occurrences"] = w.occurrences;
    doc["nodes"].push_back(std::move(j));
  }
  doc["edges"] = nlohmann::json::array();
  for (const auto& [e, weight] : g.edges())
    doc["edges"].push_back({{"source", idx.position.at(e.first)}, {"target", idx.position.at(e.second)}, {"weight", weight}});
  return doc.dump(2) + "\n";
}

inline MusicGraph graph_from_json(const std::string& text) {
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    MusicGraph g(doc.at("directed").get<bool>());
    std::map<std::size_t, NodeId> by_id;
    for (const auto& j : doc.at("nodes")) {
      const NodeId id = export_detail::node_from_json(j);
      NodeWeights w;
      if (j.contains("duration")) w.duration = parse_rational(j.at("duration").get<std::string>());
      w.occurrences = j.at("occurrences").get<long>();
      g.set_node(id, w);
      by_id.emplace(j.at("id").get<std::size_t>(), id);
    }
    for (const auto& j : doc.at("edges")) {
      const NodeId& u = by_id.at(j.at("source").get<std::size_t>());
      const NodeId& v = by_id.at(j.at("target").get<std::size_t>());
      if (!g.add_edge(u, v, j.at("weight").get<long>())) throw Error(ErrorKind::MalformedFile, "loop edge");
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedFile, std::string("graph JSON: ") + e.what());
  } catch (const std::out_of_range&) {
    throw Error(ErrorKind::MalformedFile, "graph JSON: edge refers to unknown node id");
  }
}

}  // namespace scoregraph
