#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <ranges>
#include <vector>

#include <Eigen/Dense>

#include "scoregraph/music_graph.hpp"
#include "scoregraph/partition.hpp"

namespace scoregraph {

using CentralityMap = std::map<NodeId, double>;

/// Shannon entropy in bits of the distribution obtained by normalizing
/// `weights`. Zero weights contribute nothing.
template <std::ranges::input_range R>
double shannon_entropy(const R& weights) {
  double total = 0.0;
  for (const auto& w : weights) {
    const double x = static_cast<double>(w);
    if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "weights must be finite and >= 0");
    total += x;
  }
  if (total <= 0.0) throw Error(ErrorKind::AllZero, "no positive weight");
  double h = 0.0;
  for (const auto& w : weights) {
    const double p = static_cast<double>(w) / total;
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::max(0.0, h);
}

inline double shannon_entropy(std::initializer_list<double> weights) {
  return shannon_entropy(std::vector<double>(weights));
}

/// Neighbor count over n-1. Directed graphs count each distinct neighbor
/// once, whichever way the arrows point.
inline CentralityMap degree_centrality(const MusicGraph& g) {
  if (g.order() < 2) throw Error(ErrorKind::TooFewNodes, "degree centrality needs at least two nodes");
  const GraphIndex idx(g);
  const double denom = static_cast<double>(idx.size() - 1);
  CentralityMap out;
  for (std::size_t v = 0; v < idx.size(); ++v) out.emplace(idx.nodes[v], static_cast<double>(idx.degree(v)) / denom);
  return out;
}

struct EigenvectorOptions {
  double tolerance = 1e-10;
  int max_iterations = 100000;
};

/// Leading eigenvector of the weighted adjacency matrix by power iteration
/// from the all-ones vector. The iteration runs on A + sI with s half the
/// largest weighted degree, which keeps bipartite graphs from oscillating
/// without changing the eigenvector. Stops once successive iterates agree to
/// `tolerance` in max-norm and the residual |Ax - lambda x| does too.
/// Isolated nodes get 0.
inline CentralityMap eigenvector_centrality(const MusicGraph& g, EigenvectorOptions opts = {}) {
  if (g.directed()) throw Error(ErrorKind::DirectedUnsupported, "eigenvector centrality needs an undirected graph");
  if (g.size() == 0) throw Error(ErrorKind::NoEdges, "eigenvector centrality needs at least one edge");
  const GraphIndex idx(g);
  const std::size_t n = idx.size();

  double max_degree = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    double d = 0.0;
    for (const auto& [u, w] : idx.adjacency[v]) d += w;
    max_degree = std::max(max_degree, d);
  }
  const double shift = 0.5 * max_degree;

  auto multiply = [&](const std::vector<double>& x) {
    std::vector<double> y(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (const auto& [u, w] : idx.adjacency[v]) y[v] += w * x[u];
    return y;
  };
  auto normalize = [](std::vector<double>& x) {
    double norm = 0.0;
    for (double xi : x) norm += xi * xi;
    norm = std::sqrt(norm);
    for (double& xi : x) xi /= norm;
  };

  std::vector<double> x(n);
  for (std::size_t v = 0; v < n; ++v) x[v] = idx.degree(v) > 0 ? 1.0 : 0.0;
  normalize(x);

  for (int it = 0; it < opts.max_iterations; ++it) {
    std::vector<double> y = multiply(x);
    for (std::size_t v = 0; v < n; ++v) y[v] += shift * x[v];
    normalize(y);

    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change = std::max(change, std::abs(y[v] - x[v]));
    x = std::move(y);
    if (change >= opts.tolerance) continue;

    const std::vector<double> ax = multiply(x);
    double lambda = 0.0;
    for (std::size_t v = 0; v < n; ++v) lambda += x[v] * ax[v];
    double residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) residual = std::max(residual, std::abs(ax[v] - lambda * x[v]));
    if (residual < opts.tolerance) {
      CentralityMap out;
      for (std::size_t v = 0; v < n; ++v) out.emplace(idx.nodes[v], std::max(0.0, x[v]));
      return out;
    }
  }
  throw Error(ErrorKind::NotConverged,
              "eigenvector centrality did not converge in " + std::to_string(opts.max_iterations) + " iterations");
}

/// Weighted Laplacian L = D - A of an undirected graph, rows in NodeId order.
inline Eigen::MatrixXd laplacian(const MusicGraph& g) {
  if (g.directed()) throw Error(ErrorKind::DirectedUnsupported, "Laplacian needs an undirected graph");
  const GraphIndex idx(g);
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t v = 0; v < idx.size(); ++v) {
    for (const auto& [u, w] : idx.adjacency[v]) {
      L(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) -= w;
      L(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) += w;
    }
  }
  return L;
}

/// Shannon entropy (base 2) of the Laplacian spectrum normalized by its
/// trace.
inline double von_neumann_entropy(const MusicGraph& g) {
  if (g.directed()) throw Error(ErrorKind::DirectedUnsupported, "von Neumann entropy needs an undirected graph");
  if (g.order() < 2) throw Error(ErrorKind::TooFewNodes, "von Neumann entropy needs at least two nodes");
  if (g.size() == 0) throw Error(ErrorKind::NoEdges, "graph volume is zero");
  const Eigen::MatrixXd L = laplacian(g);
  const double volume = L.trace();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NotConverged, "Laplacian eigensolver failed");
  double h = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = std::max(0.0, solver.eigenvalues()(i));
    const double p = lambda / volume;
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::max(0.0, h);
}

namespace metrics_detail {

inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return std::max(0.0, h);
}

}  // namespace metrics_detail

struct ClusterEntropy {
  std::map<NodeId, double> per_node;
  double total = 0.0;
};

/// Binary entropy of each node's inner/outer neighbor split with respect to
/// `cluster`, for every node of g. Isolated nodes contribute 0.
inline ClusterEntropy cluster_entropy(const MusicGraph& g, const std::set<NodeId>& cluster) {
  const GraphIndex idx(g);
  std::vector<char> inside(idx.size(), 0);
  for (const auto& v : cluster) {
    auto it = idx.position.find(v);
    if (it == idx.position.end()) throw Error(ErrorKind::NodeNotFound, "cluster node " + label(v) + " not in graph");
    inside[it->second] = 1;
  }
  ClusterEntropy out;
  for (std::size_t v = 0; v < idx.size(); ++v) {
    const std::size_t k = idx.degree(v);
    double h = 0.0;
    if (k > 0) {
      std::size_t inner = 0;
      for (const auto& [u, w] : idx.adjacency[v]) inner += inside[u];
      h = metrics_detail::binary_entropy(static_cast<double>(inner) / static_cast<double>(k));
    }
    out.per_node.emplace(idx.nodes[v], h);
    out.total += h;
  }
  return out;
}

/// Per-node average of the cluster entropy, each node measured against its
/// own community.
inline double graph_entropy_avg(const MusicGraph& g, const Partition& partition) {
  partition.require_cover(g);
  if (g.order() == 0) return 0.0;
  const GraphIndex idx(g);
  double total = 0.0;
  for (std::size_t v = 0; v < idx.size(); ++v) {
    const std::size_t k = idx.degree(v);
    if (k == 0) continue;
    const std::size_t own = partition.community(idx.nodes[v]);
    std::size_t inner = 0;
    for (const auto& [u, w] : idx.adjacency[v]) inner += partition.community(idx.nodes[u]) == own ? 1 : 0;
    total += metrics_detail::binary_entropy(static_cast<double>(inner) / static_cast<double>(k));
  }
  return total / static_cast<double>(idx.size());
}

enum class CentralityKind { Degree, Eigenvector };

inline double centrality_entropy(const MusicGraph& g, CentralityKind kind, EigenvectorOptions opts = {}) {
  const CentralityMap c = kind == CentralityKind::Degree ? degree_centrality(g) : eigenvector_centrality(g, opts);
  return shannon_entropy(c | std::views::values);
}

}  // namespace scoregraph
