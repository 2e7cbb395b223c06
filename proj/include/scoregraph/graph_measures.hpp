#pragma once

#include <numeric>
#include <vector>

#include "scoregraph/music_graph.hpp"

namespace scoregraph {

/// Unweighted edge count over the maximum possible: n(n-1)/2 undirected,
/// n(n-1) directed.
inline double density(const MusicGraph& g) {
  const double n = static_cast<double>(g.order());
  if (g.order() < 2) throw Error(ErrorKind::TooFewNodes, "density needs at least two nodes");
  const double possible = g.directed() ? n * (n - 1) : n * (n - 1) / 2;
  return static_cast<double>(g.size()) / possible;
}

inline std::size_t connected_components(const GraphIndex& idx) {
  std::vector<std::size_t> parent(idx.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = idx.size();
  for (std::size_t v = 0; v < idx.size(); ++v) {
    for (const auto& [u, w] : idx.adjacency[v]) {
      const auto a = find(v), b = find(u);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components;
}

/// Circuit rank of the underlying undirected simple graph.
inline std::size_t cycle_basis_size(const MusicGraph& g) {
  const GraphIndex idx(g);
  return idx.undirected_edges + connected_components(idx) - idx.size();
}

/// Mean local clustering coefficient on the underlying undirected simple
/// graph; nodes of degree < 2 count as 0.
inline double average_clustering(const MusicGraph& g) {
  const GraphIndex idx(g);
  if (idx.size() == 0) return 0.0;
  double total = 0.0;
  for (std::size_t v = 0; v < idx.size(); ++v) {
    const auto& nb = idx.adjacency[v];
    const std::size_t k = nb.size();
    if (k < 2) continue;
    std::size_t triangles = 0;
    for (auto a = nb.begin(); a != nb.end(); ++a)
      for (auto b = std::next(a); b != nb.end(); ++b)
        if (idx.adjacency[a->first].count(b->first)) ++triangles;
    total += 2.0 * static_cast<double>(triangles) / (static_cast<double>(k) * static_cast<double>(k - 1));
  }
  return total / static_cast<double>(idx.size());
}

}  // namespace scoregraph
