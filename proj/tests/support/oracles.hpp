#pragma once

// Independent reference computations used to check the library. None of
// these share code with include/scoregraph beyond the graph container.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scoregraph/music_graph.hpp"
#include "scoregraph/partition.hpp"

namespace oracle {

using scoregraph::MusicGraph;
using scoregraph::NodeId;

/// Plain adjacency matrix (weights or 0/1) in NodeId order.
inline std::vector<std::vector<double>> adjacency_matrix(const MusicGraph& g, bool weighted) {
  std::vector<NodeId> nodes;
  for (const auto& [id, w] : g.nodes()) nodes.push_back(id);
  auto pos = [&](const NodeId& v) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
  };
  std::vector<std::vector<double>> a(nodes.size(), std::vector<double>(nodes.size(), 0.0));
  for (const auto& [e, w] : g.edges()) {
    const std::size_t i = pos(e.first), j = pos(e.second);
    const double x = weighted ? static_cast<double>(w) : 1.0;
    if (weighted) {
      a[i][j] += x;
      a[j][i] = a[i][j];
    } else {
      a[i][j] = a[j][i] = x;
    }
  }
  return a;
}

inline double entropy_bits(const std::vector<double>& w) {
  long double total = 0;
  for (double x : w) total += x;
  long double h = 0;
  for (double x : w) {
    if (x <= 0) continue;
    const long double p = x / total;
    h -= p * std::log2(p);
  }
  return static_cast<double>(h);
}

/// Cyclic Jacobi eigenvalue sweep for a symmetric matrix.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline double von_neumann_bits(const MusicGraph& g) {
  auto a = adjacency_matrix(g, true);
  const std::size_t n = a.size();
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  double vol = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      l[i][j] = -a[i][j];
      degree += a[i][j];
    }
    l[i][i] = degree;
    vol += degree;
  }
  double h = 0.0;
  for (double lam : jacobi_eigenvalues(l)) {
    const double p = std::max(0.0, lam) / vol;
    if (p > 1e-15) h -= p * std::log2(p);
  }
  return h;
}

/// Textbook modularity straight from the adjacency matrix, community labels
/// per node in NodeId order.
inline double modularity_from_labels(const std::vector<std::vector<double>>& a, const std::vector<int>& label) {
  const std::size_t n = a.size();
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
    two_m += k[i];
  }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (label[i] == label[j]) q += a[i][j] - k[i] * k[j] / two_m;
  return q / two_m;
}

/// Best modularity over every set partition (restricted growth strings).
inline double brute_force_max_modularity(const MusicGraph& g, std::vector<int>* best_labels = nullptr) {
  const auto a = adjacency_matrix(g, false);
  const std::size_t n = a.size();
  std::vector<int> label(n, 0);
  double best = -std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == n) {
      const double q = modularity_from_labels(a, label);
      if (q > best + 1e-12) {
        best = q;
        if (best_labels) *best_labels = label;
      }
      return;
    }
    for (int c = 0; c <= used; ++c) {
      label[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  if (n > 0) {
    label[0] = 0;
    rec(1, 1);
  }
  return best;
}

/// Minimal DTW cost by enumerating every monotone boundary-matching path.
inline double brute_force_dtw(const std::vector<double>& a, const std::vector<double>& b) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
    acc += std::abs(a[i] - b[j]);
    if (i + 1 == a.size() && j + 1 == b.size()) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < a.size()) walk(i + 1, j, acc);
    if (j + 1 < b.size()) walk(i, j + 1, acc);
    if (i + 1 < a.size() && j + 1 < b.size()) walk(i + 1, j + 1, acc);
  };
  walk(0, 0, 0.0);
  return best;
}

// ---- generators ----------------------------------------------------------

/// Random undirected graph on pitch-class nodes 0..n-1 with edge
/// probability p and integer weights in [1, max_weight].
inline MusicGraph random_graph(std::mt19937& rng, int n, double p, long max_weight = 1) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<long> weight(1, max_weight);
  MusicGraph g(false);
  for (int v = 0; v < n; ++v) g.add_node(scoregraph::pc_node(v));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < p) g.add_edge(scoregraph::pc_node(u), scoregraph::pc_node(v), weight(rng));
  return g;
}

/// Random connected graph: a random spanning tree plus extra edges.
inline MusicGraph random_connected_graph(std::mt19937& rng, int n, double extra_p, long max_weight = 1) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<long> weight(1, max_weight);
  MusicGraph g(false);
  g.add_node(scoregraph::pc_node(0));
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    g.add_edge(scoregraph::pc_node(parent(rng)), scoregraph::pc_node(v), weight(rng));
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.edge_weight(scoregraph::pc_node(u), scoregraph::pc_node(v)) && coin(rng) < extra_p)
        g.add_edge(scoregraph::pc_node(u), scoregraph::pc_node(v), weight(rng));
  return g;
}

/// Random connected bipartite graph between pc nodes 0..a-1 and chord nodes.
inline MusicGraph random_bipartite_graph(std::mt19937& rng, int a, int b, double p, long max_weight = 1) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<long> weight(1, max_weight);
  MusicGraph g(false);
  auto right = [](int j) {
    scoregraph::PitchClassSet s;
    s.insert(j % 12);
    if (j >= 12) s.insert((j + 5) % 12);
    return scoregraph::chord_node(s);
  };
  // A zig-zag spanning path keeps it connected.
  for (int i = 0; i < std::max(a, b); ++i) {
    const int l = std::min(i, a - 1), r = std::min(i, b - 1);
    g.add_edge(scoregraph::pc_node(l), right(r), weight(rng));
    if (i + 1 < a) g.add_edge(scoregraph::pc_node(i + 1), right(r), weight(rng));
  }
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      if (!g.edge_weight(scoregraph::pc_node(i), right(j)) && coin(rng) < p)
        g.add_edge(scoregraph::pc_node(i), right(j), weight(rng));
  return g;
}

inline scoregraph::Partition random_partition(std::mt19937& rng, const MusicGraph& g, int max_parts) {
  std::uniform_int_distribution<int> pick(0, max_parts - 1);
  std::vector<std::vector<NodeId>> parts(static_cast<std::size_t>(max_parts));
  for (const auto& [id, w] : g.nodes()) parts[static_cast<std::size_t>(pick(rng))].push_back(id);
  std::erase_if(parts, [](const auto& c) { return c.empty(); });
  return scoregraph::Partition(std::move(parts));
}

/// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline MusicGraph two_triangle_bridge() {
  MusicGraph g(false);
  using scoregraph::pc_node;
  for (auto [u, v] : {std::pair{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}}) g.add_edge(pc_node(u), pc_node(v));
  return g;
}

inline MusicGraph two_disjoint_triangles() {
  MusicGraph g(false);
  using scoregraph::pc_node;
  for (auto [u, v] : {std::pair{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}}) g.add_edge(pc_node(u), pc_node(v));
  return g;
}

// ---- Standard MIDI File writer --------------------------------------------

struct MidiEvent {
  std::uint32_t tick;
  std::vector<std::uint8_t> bytes;
};

inline void put_varlen(std::vector<std::uint8_t>& out, std::uint32_t v) {
  std::uint8_t buf[5];
  int n = 0;
  buf[n++] = v & 0x7F;
  while ((v >>= 7) != 0) buf[n++] = static_cast<std::uint8_t>((v & 0x7F) | 0x80);
  while (n > 0) out.push_back(buf[--n]);
}

/// One MTrk chunk from absolute-tick events (sorted by the caller).
inline std::vector<std::uint8_t> midi_track(const std::vector<MidiEvent>& events, bool end_of_track = true) {
  std::vector<std::uint8_t> body;
  std::uint32_t now = 0;
  for (const auto& e : events) {
    put_varlen(body, e.tick - now);
    now = e.tick;
    body.insert(body.end(), e.bytes.begin(), e.bytes.end());
  }
  if (end_of_track) body.insert(body.end(), {0x00, 0xFF, 0x2F, 0x00});
  std::vector<std::uint8_t> out = {'M', 'T', 'r', 'k'};
  const auto len = static_cast<std::uint32_t>(body.size());
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(len >> s));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

inline std::string midi_file(int format, std::uint16_t division, const std::vector<std::vector<std::uint8_t>>& tracks) {
  std::vector<std::uint8_t> out = {'M', 'T', 'h', 'd', 0, 0, 0, 6, 0, static_cast<std::uint8_t>(format)};
  out.push_back(static_cast<std::uint8_t>(tracks.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(tracks.size()));
  out.push_back(static_cast<std::uint8_t>(division >> 8));
  out.push_back(static_cast<std::uint8_t>(division));
  for (const auto& t : tracks) out.insert(out.end(), t.begin(), t.end());
  return {out.begin(), out.end()};
}

inline MidiEvent note_on(std::uint32_t tick, int pitch, int channel = 0, int velocity = 90) {
  return {tick, {static_cast<std::uint8_t>(0x90 | channel), static_cast<std::uint8_t>(pitch), static_cast<std::uint8_t>(velocity)}};
}

inline MidiEvent note_off(std::uint32_t tick, int pitch, int channel = 0) {
  return {tick, {static_cast<std::uint8_t>(0x80 | channel), static_cast<std::uint8_t>(pitch), 0x40}};
}

}  // namespace oracle
