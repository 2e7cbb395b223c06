#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "scoregraph/music_graph.hpp"

namespace scoregraph {

/// Disjoint communities covering a graph's nodes. Communities are kept
/// sorted internally and ordered by their smallest member.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<std::vector<NodeId>> communities) {
    for (auto& c : communities) {
      if (c.empty()) throw Error(ErrorKind::PartitionMismatch, "empty community");
      std::sort(c.begin(), c.end());
    }
    std::sort(communities.begin(), communities.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    communities_ = std::move(communities);
    for (std::size_t i = 0; i < communities_.size(); ++i) {
      for (const auto& v : communities_[i]) {
        if (!community_of_.emplace(v, i).second)
          throw Error(ErrorKind::PartitionMismatch, "node " + label(v) + " appears in two communities");
      }
    }
  }

  /// Every node in its own community.
  static Partition singletons(const MusicGraph& g) {
    std::vector<std::vector<NodeId>> cs;
    for (const auto& [id, w] : g.nodes()) cs.push_back({id});
    return Partition(std::move(cs));
  }

  /// All nodes in one community.
  static Partition whole(const MusicGraph& g) {
    std::vector<NodeId> all;
    for (const auto& [id, w] : g.nodes()) all.push_back(id);
    if (all.empty()) return Partition();
    return Partition({all});
  }

  const std::vector<std::vector<NodeId>>& communities() const { return communities_; }
  const std::map<NodeId, std::size_t>& community_of() const { return community_of_; }
  std::size_t size() const { return communities_.size(); }

  std::size_t community(const NodeId& v) const {
    auto it = community_of_.find(v);
    if (it == community_of_.end()) throw Error(ErrorKind::PartitionMismatch, "node " + label(v) + " not in partition");
    return it->second;
  }

  /// True when the communities cover exactly the nodes of g.
  bool covers(const MusicGraph& g) const {
    if (community_of_.size() != g.order()) return false;
    return std::all_of(g.nodes().begin(), g.nodes().end(),
                       [&](const auto& kv) { return community_of_.count(kv.first) != 0; });
  }

  void require_cover(const MusicGraph& g) const {
    if (!covers(g)) throw Error(ErrorKind::PartitionMismatch, "partition does not cover the graph's nodes exactly");
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.communities_ == b.communities_; }

 private:
  std::vector<std::vector<NodeId>> communities_;
  std::map<NodeId, std::size_t> community_of_;
};

}  // namespace scoregraph
