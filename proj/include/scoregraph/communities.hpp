#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "scoregraph/metrics.hpp"
#include "scoregraph/music_graph.hpp"
#include "scoregraph/partition.hpp"

namespace scoregraph {

struct ModularityOptions {
  double resolution = 1.0;
  bool weighted = false;  // false: every edge of the underlying simple graph counts 1
};

namespace communities_detail {

inline double edge_value(double weight, const ModularityOptions& opts) { return opts.weighted ? weight : 1.0; }

inline void check_modularity_input(const MusicGraph& g, const ModularityOptions& opts) {
  if (g.size() == 0) throw Error(ErrorKind::NoEdges, "modularity needs at least one edge");
  if (!(opts.resolution > 0.0)) throw Error(ErrorKind::InvalidArgument, "resolution must be positive");
}

}  // namespace communities_detail

/// Q = sum over communities of (m_C / |E| - theta * (deg_C / 2|E|)^2), on
/// the underlying undirected graph.
inline double modularity(const MusicGraph& g, const Partition& p, ModularityOptions opts = {}) {
  communities_detail::check_modularity_input(g, opts);
  p.require_cover(g);
  const GraphIndex idx(g);
  std::vector<double> inner(p.size(), 0.0), degree(p.size(), 0.0);
  double m = 0.0;
  for (std::size_t v = 0; v < idx.size(); ++v) {
    const std::size_t cv = p.community(idx.nodes[v]);
    for (const auto& [u, w] : idx.adjacency[v]) {
      const double x = communities_detail::edge_value(w, opts);
      degree[cv] += x;
      if (v < u) {
        m += x;
        if (p.community(idx.nodes[u]) == cv) inner[cv] += x;
      }
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    const double share = degree[c] / (2.0 * m);
    q += inner[c] / m - opts.resolution * share * share;
  }
  return q;
}

/// The same quantity written as a double sum over node pairs with a
/// Kronecker delta on community membership.
inline double modularity_pairwise(const MusicGraph& g, const Partition& p, ModularityOptions opts = {}) {
  communities_detail::check_modularity_input(g, opts);
  p.require_cover(g);
  const GraphIndex idx(g);
  const std::size_t n = idx.size();
  std::vector<double> degree(n, 0.0);
  double two_m = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& [u, w] : idx.adjacency[v]) degree[v] += communities_detail::edge_value(w, opts);
    two_m += degree[v];
  }
  std::vector<std::size_t> community(n);
  for (std::size_t v = 0; v < n; ++v) community[v] = p.community(idx.nodes[v]);
  double q = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (community[u] != community[v]) continue;
      auto it = idx.adjacency[u].find(v);
      const double a = it == idx.adjacency[u].end() ? 0.0 : communities_detail::edge_value(it->second, opts);
      q += a - opts.resolution * degree[u] * degree[v] / two_m;
    }
  }
  return q / two_m;
}

/// Clauset-Newman-Moore agglomeration: start from singletons and keep
/// merging the connected pair of communities with the largest modularity
/// gain while that gain is positive. Communities are identified by their
/// smallest node (NodeId order); equal gains go to the lexicographically
/// smallest pair.
inline Partition greedy_modularity(const MusicGraph& g, ModularityOptions opts = {}) {
  communities_detail::check_modularity_input(g, opts);
  const GraphIndex idx(g);
  const std::size_t n = idx.size();

  // Gains are compared as 2m^2 * dQ = 2m * e_ab - theta * d_a * d_b, which
  // stays integral for unweighted graphs at theta = 1.
  std::map<std::pair<std::size_t, std::size_t>, double> between;
  std::vector<double> degree(n, 0.0);
  double m = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& [u, w] : idx.adjacency[v]) {
      const double x = communities_detail::edge_value(w, opts);
      degree[v] += x;
      if (v < u) {
        between[{v, u}] += x;
        m += x;
      }
    }
  }
  std::vector<std::vector<std::size_t>> members(n);
  std::vector<bool> alive(n, true);
  for (std::size_t v = 0; v < n; ++v) members[v] = {v};

  for (;;) {
    double best_gain = 0.0;
    std::pair<std::size_t, std::size_t> best{n, n};
    for (const auto& [pair, e] : between) {
      const double gain = 2.0 * m * e - opts.resolution * degree[pair.first] * degree[pair.second];
      if (best.first == n ? gain > 1e-9 : gain > best_gain + 1e-9) {
        best_gain = gain;
        best = pair;
      }
    }
    if (best.first == n) break;

    const auto [a, b] = best;
    std::map<std::pair<std::size_t, std::size_t>, double> next;
    for (const auto& [pair, e] : between) {
      auto remap = [&](std::size_t c) { return c == b ? a : c; };
      std::size_t x = remap(pair.first), y = remap(pair.second);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      next[{x, y}] += e;
    }
    between = std::move(next);
    degree[a] += degree[b];
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
    alive[b] = false;
  }

  std::vector<std::vector<NodeId>> communities;
  for (std::size_t c = 0; c < n; ++c) {
    if (!alive[c]) continue;
    std::vector<NodeId> ids;
    for (std::size_t v : members[c]) ids.push_back(idx.nodes[v]);
    communities.push_back(std::move(ids));
  }
  return Partition(std::move(communities));
}

/// Subgraph induced by `keep`, with node weights carried over.
inline MusicGraph induced_subgraph(const MusicGraph& g, const std::set<NodeId>& keep) {
  MusicGraph sub(g.directed());
  for (const auto& [id, w] : g.nodes())
    if (keep.count(id)) sub.set_node(id, w);
  for (const auto& [edge, weight] : g.edges())
    if (keep.count(edge.first) && keep.count(edge.second)) sub.add_edge(edge.first, edge.second, weight);
  return sub;
}

/// Grows and shrinks a cluster around `seed` while that lowers the summed
/// cluster entropy over all nodes. Starts from the seed's closed
/// neighborhood; each round applies the single addition (a neighbor of the
/// cluster) or deletion (any member but the seed) with the largest decrease,
/// smallest node first on ties.
inline std::set<NodeId> entropy_min_cluster(const MusicGraph& g, const NodeId& seed) {
  if (!g.contains(seed)) throw Error(ErrorKind::NodeNotFound, "seed " + label(seed) + " not in graph");
  const GraphIndex idx(g);
  const std::size_t s = idx.position.at(seed);
  const std::size_t n = idx.size();

  std::vector<char> in(n, 0);
  in[s] = 1;
  for (const auto& [u, w] : idx.adjacency[s]) in[u] = 1;

  auto total_entropy = [&](const std::vector<char>& member) {
    double total = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t k = idx.degree(v);
      if (k == 0) continue;
      std::size_t inner = 0;
      for (const auto& [u, w] : idx.adjacency[v]) inner += member[u];
      total += metrics_detail::binary_entropy(static_cast<double>(inner) / static_cast<double>(k));
    }
    return total;
  };

  double current = total_entropy(in);
  for (;;) {
    double best = current;
    std::size_t best_node = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == s) continue;
      bool candidate = in[v] != 0;
      if (!candidate) {
        for (const auto& [u, w] : idx.adjacency[v]) {
          if (in[u]) {
            candidate = true;
            break;
          }
        }
      }
      if (!candidate) continue;
      in[v] ^= 1;
      const double h = total_entropy(in);
      in[v] ^= 1;
      if (h < best - 1e-12) {
        best = h;
        best_node = v;
      }
    }
    if (best_node == n) break;
    in[best_node] ^= 1;
    current = best;
  }

  std::set<NodeId> out;
  for (std::size_t v = 0; v < n; ++v)
    if (in[v]) out.insert(idx.nodes[v]);
  return out;
}

/// Covers the graph with entropy-minimizing clusters: seed at the
/// highest-degree unassigned node (smallest on ties), cluster within the
/// subgraph of still-unassigned nodes, remove, repeat.
inline Partition entropy_min_partition(const MusicGraph& g) {
  std::set<NodeId> remaining;
  for (const auto& [id, w] : g.nodes()) remaining.insert(id);
  std::vector<std::vector<NodeId>> clusters;
  while (!remaining.empty()) {
    const MusicGraph sub = induced_subgraph(g, remaining);
    const GraphIndex idx(sub);
    std::size_t seed = 0;
    for (std::size_t v = 1; v < idx.size(); ++v)
      if (idx.degree(v) > idx.degree(seed)) seed = v;
    const std::set<NodeId> cluster = entropy_min_cluster(sub, idx.nodes[seed]);
    clusters.emplace_back(cluster.begin(), cluster.end());
    for (const auto& v : cluster) remaining.erase(v);
  }
  return Partition(std::move(clusters));
}

}  // namespace scoregraph
