#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scoregraph/error.hpp"
#include "scoregraph/pitch.hpp"

namespace scoregraph {

struct PitchClassNode {
  int pc = 0;
  friend auto operator<=>(const PitchClassNode&, const PitchClassNode&) = default;
};

struct ChordNode {
  PitchClassSet pcs;
  friend auto operator<=>(const ChordNode&, const ChordNode&) = default;
  friend bool operator==(const ChordNode&, const ChordNode&) = default;
};

struct RhythmNode {
  Rational value;
  friend bool operator==(const RhythmNode&, const RhythmNode&) = default;
  friend std::strong_ordering operator<=>(const RhythmNode& a, const RhythmNode& b) {
    if (a.value < b.value) return std::strong_ordering::less;
    if (b.value < a.value) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

struct IntervalClassNode {
  int ic = 1;
  friend auto operator<=>(const IntervalClassNode&, const IntervalClassNode&) = default;
};

/// Typed node key. Ordering is by kind (pitch class, chord, rhythm, interval
/// class) and then by value; every deterministic tie-break in the library
/// uses this order.
using NodeId = std::variant<PitchClassNode, ChordNode, RhythmNode, IntervalClassNode>;

enum class NodeKind { PitchClass, Chord, Rhythm, IntervalClass };

inline NodeKind kind_of(const NodeId& id) { return static_cast<NodeKind>(id.index()); }

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::PitchClass:    return "pitch_class";
    case NodeKind::Chord:         return "chord";
    case NodeKind::Rhythm:        return "rhythm";
    case NodeKind::IntervalClass: return "interval_class";
  }
  return "unknown";
}

inline NodeId pc_node(int pc) { return PitchClassNode{pc}; }
inline NodeId chord_node(const PitchClassSet& pcs) { return ChordNode{pcs}; }
inline NodeId rhythm_node(const Rational& value) { return RhythmNode{value}; }
inline NodeId ic_node(int ic) {
  if (ic < 1 || ic > 6) throw Error(ErrorKind::MalformedFile, "interval class out of range: " + std::to_string(ic));
  return IntervalClassNode{ic};
}

/// Display label: pitch classes as integers, chords as tuples, rhythms as
/// "<decimal> qL", interval classes as "ic<n>".
inline std::string label(const NodeId& id) {
  struct Visitor {
    std::string operator()(const PitchClassNode& n) const { return std::to_string(n.pc); }
    std::string operator()(const ChordNode& n) const { return n.pcs.label(); }
    std::string operator()(const RhythmNode& n) const { return to_decimal(n.value) + " qL"; }
    std::string operator()(const IntervalClassNode& n) const { return "ic" + std::to_string(n.ic); }
  };
  return std::visit(Visitor{}, id);
}

struct NodeWeights {
  std::optional<Rational> duration;  // unset for rhythm and interval-class nodes
  long occurrences = 0;
  friend bool operator==(const NodeWeights&, const NodeWeights&) = default;
};

/// Weighted simple graph: no loops, at most one edge per node pair (one per
/// ordered pair when directed). Undirected edge keys are stored as
/// (smaller, larger).
class MusicGraph {
 public:
  using EdgeKey = std::pair<NodeId, NodeId>;

  explicit MusicGraph(bool directed = false) : directed_(directed) {}

  bool directed() const { return directed_; }
  const std::map<NodeId, NodeWeights>& nodes() const { return nodes_; }
  const std::map<EdgeKey, long>& edges() const { return edges_; }
  std::size_t order() const { return nodes_.size(); }
  std::size_t size() const { return edges_.size(); }
  bool contains(const NodeId& id) const { return nodes_.count(id) != 0; }

  /// Inserts the node if absent and accumulates the given weights.
  void add_node(const NodeId& id, const NodeWeights& w = {}) {
    auto& slot = nodes_[id];
    if (w.duration) slot.duration = slot.duration.value_or(Rational{0}) + *w.duration;
    slot.occurrences += w.occurrences;
  }

  void set_node(const NodeId& id, const NodeWeights& w) { nodes_[id] = w; }

  /// Adds `weight` to the edge u-v (u->v when directed). Loops are dropped.
  /// Returns false when the edge was a loop.
  bool add_edge(const NodeId& u, const NodeId& v, long weight = 1) {
    if (u == v) return false;
    if (weight < 1) throw Error(ErrorKind::MalformedFile, "edge weight must be a positive count");
    nodes_.try_emplace(u);
    nodes_.try_emplace(v);
    edges_[key(u, v)] += weight;
    return true;
  }

  std::optional<long> edge_weight(const NodeId& u, const NodeId& v) const {
    auto it = edges_.find(key(u, v));
    if (it == edges_.end()) return std::nullopt;
    return it->second;
  }

  EdgeKey key(const NodeId& u, const NodeId& v) const {
    if (directed_ || u < v) return {u, v};
    return {v, u};
  }

  friend bool operator==(const MusicGraph&, const MusicGraph&) = default;

 private:
  bool directed_;
  std::map<NodeId, NodeWeights> nodes_;
  std::map<EdgeKey, long> edges_;
};

/// Dense index over a graph's nodes (in NodeId order) with the adjacency of
/// the underlying undirected simple graph. For directed graphs the two arcs
/// between a pair collapse into one neighbor relation whose weight is their
/// sum.
struct GraphIndex {
  std::vector<NodeId> nodes;
  std::map<NodeId, std::size_t> position;
  std::vector<std::map<std::size_t, double>> adjacency;  // neighbor -> weight
  std::size_t undirected_edges = 0;

  explicit GraphIndex(const MusicGraph& g) {
    nodes.reserve(g.order());
    for (const auto& [id, w] : g.nodes()) {
      position.emplace(id, nodes.size());
      nodes.push_back(id);
    }
    adjacency.resize(nodes.size());
    for (const auto& [edge, weight] : g.edges()) {
      const std::size_t a = position.at(edge.first);
      const std::size_t b = position.at(edge.second);
      auto [it, inserted] = adjacency[a].try_emplace(b, 0.0);
      it->second += static_cast<double>(weight);
      adjacency[b][a] = it->second;
      if (inserted) ++undirected_edges;
    }
  }

  std::size_t size() const { return nodes.size(); }
  std::size_t degree(std::size_t v) const { return adjacency[v].size(); }
};

}  // namespace scoregraph
