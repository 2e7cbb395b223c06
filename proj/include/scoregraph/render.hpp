#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scoregraph/export.hpp"
#include "scoregraph/timeseries.hpp"

namespace scoregraph {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct LayoutOptions {
  double width = 800.0;
  double height = 800.0;
  int iterations = 300;
};

/// Fruchterman-Reingold layout on the underlying undirected graph, seeded
/// from std::mt19937 raw output so positions depend only on (graph, seed).
/// Positions come back in NodeId order, inside [0, width] x [0, height].
inline std::vector<Point> force_layout(const MusicGraph& g, std::uint32_t seed, const LayoutOptions& opts = {}) {
  const GraphIndex idx(g);
  const std::size_t n = idx.size();
  std::vector<Point> pos(n);
  if (n == 0) return pos;
  std::mt19937 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng()) / 4294967296.0; };
  for (auto& p : pos) {
    p.x = unit() * opts.width;
    p.y = unit() * opts.height;
  }
  if (n == 1) {
    pos[0] = {opts.width / 2.0, opts.height / 2.0};
    return pos;
  }

  const double k = std::sqrt(opts.width * opts.height / static_cast<double>(n));
  double temperature = opts.width / 10.0;
  const double cooling = temperature / static_cast<double>(opts.iterations + 1);
  std::vector<Point> disp(n);
  for (int it = 0; it < opts.iterations; ++it) {
    std::fill(disp.begin(), disp.end(), Point{});
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t u = v + 1; u < n; ++u) {
        double dx = pos[v].x - pos[u].x, dy = pos[v].y - pos[u].y;
        const double d = std::max(0.01, std::hypot(dx, dy));
        const double f = k * k / d;
        dx = dx / d * f;
        dy = dy / d * f;
        disp[v].x += dx;
        disp[v].y += dy;
        disp[u].x -= dx;
        disp[u].y -= dy;
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      for (const auto& [u, w] : idx.adjacency[v]) {
        if (u <= v) continue;
        double dx = pos[v].x - pos[u].x, dy = pos[v].y - pos[u].y;
        const double d = std::max(0.01, std::hypot(dx, dy));
        const double f = d * d / k;
        dx = dx / d * f;
        dy = dy / d * f;
        disp[v].x -= dx;
        disp[v].y -= dy;
        disp[u].x += dx;
        disp[u].y += dy;
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      const double d = std::max(0.01, std::hypot(disp[v].x, disp[v].y));
      const double step = std::min(d, temperature);
      pos[v].x = std::clamp(pos[v].x + disp[v].x / d * step, 0.0, opts.width);
      pos[v].y = std::clamp(pos[v].y + disp[v].y / d * step, 0.0, opts.height);
    }
    temperature -= cooling;
  }
  return pos;
}

/// SVG drawing of a graph: one <line> per edge (arrowheads when directed),
/// one <circle> and one <text> per node.
inline std::string render_graph_svg(const MusicGraph& g, const RenderStyle& style = {}, std::uint32_t seed = 42) {
  const LayoutOptions opts;
  const double margin = style.max_radius + 20.0;
  const GraphIndex idx(g);
  const StyledGraph styled(g, style);
  const std::vector<Point> pos = force_layout(g, seed, opts);
  auto px = [&](std::size_t v) { return format_number(std::round((pos[v].x + margin) * 100.0) / 100.0); };
  auto py = [&](std::size_t v) { return format_number(std::round((pos[v].y + margin) * 100.0) / 100.0); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(opts.width + 2 * margin) << "\" height=\""
     << format_number(opts.height + 2 * margin) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  if (g.directed()) {
    os << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
          "orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#555\"/></marker></defs>\n";
  }
  os << "<g stroke=\"#555\" stroke-opacity=\"0.6\">\n";
  for (const auto& [e, weight] : g.edges()) {
    const std::size_t a = idx.position.at(e.first), b = idx.position.at(e.second);
    os << "<line x1=\"" << px(a) << "\" y1=\"" << py(a) << "\" x2=\"" << px(b) << "\" y2=\"" << py(b)
       << "\" stroke-width=\"" << format_number(styled.width.at(e)) << "\"";
    if (g.directed()) os << " marker-end=\"url(#arrow)\"";
    os << "/>\n";
  }
  os << "</g>\n<g>\n";
  for (std::size_t v = 0; v < idx.size(); ++v) {
    const NodeId& id = idx.nodes[v];
    os << "<circle cx=\"" << px(v) << "\" cy=\"" << py(v) << "\" r=\"" << format_number(styled.radius.at(id))
       << "\" fill=\"" << style.color(kind_of(id)) << "\" fill-opacity=\"" << format_number(styled.opacity.at(id))
       << "\" data-type=\"" << to_string(kind_of(id)) << "\"/>\n";
  }
  os << "</g>\n<g text-anchor=\"middle\">\n";
  for (std::size_t v = 0; v < idx.size(); ++v)
    os << "<text x=\"" << px(v) << "\" y=\"" << py(v) << "\" dy=\"4\">" << export_detail::xml_escape(label(idx.nodes[v]))
       << "</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

/// Overlaid metric series. Each metric is min-max scaled onto the plot
/// height (its range is shown in the legend); gaps split the polyline.
inline std::string render_ecg_svg(const MetricSeries& series, const std::vector<MetricId>& selected) {
  if (series.size() == 0) throw Error(ErrorKind::EmptySeries, "cannot plot an empty series");
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                  "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#000000"};
  const double left = 60.0, top = 20.0, plot_w = 800.0, plot_h = 400.0;
  const double legend_top = top + plot_h + 40.0;
  const double height = legend_top + 18.0 * static_cast<double>(selected.size()) + 20.0;
  const double x0 = series.window_centers.front(), x1 = series.window_centers.back();
  auto sx = [&](double x) { return x1 > x0 ? left + (x - x0) / (x1 - x0) * plot_w : left + plot_w / 2.0; };
  auto r2 = [](double v) { return format_number(std::round(v * 100.0) / 100.0); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << r2(left + plot_w + 40.0) << "\" height=\"" << r2(height)
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect x=\"" << r2(left) << "\" y=\"" << r2(top) << "\" width=\"" << r2(plot_w) << "\" height=\"" << r2(plot_h)
     << "\" fill=\"none\" stroke=\"#999\"/>\n";
  for (double c : series.window_centers)
    os << "<text x=\"" << r2(sx(c)) << "\" y=\"" << r2(top + plot_h + 16.0) << "\" text-anchor=\"middle\">"
       << format_number(c) << "</text>\n";

  for (std::size_t k = 0; k < selected.size(); ++k) {
    const MetricId id = selected[k];
    const auto it = series.values.find(id);
    if (it == series.values.end()) throw Error(ErrorKind::MissingColumn, std::string("series lacks ") + to_string(id));
    const auto& vals = it->second;
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const auto& v : vals) {
      if (!v) continue;
      lo = any ? std::min(lo, *v) : *v;
      hi = any ? std::max(hi, *v) : *v;
      any = true;
    }
    auto sy = [&](double v) { return hi > lo ? top + plot_h - (v - lo) / (hi - lo) * plot_h : top + plot_h / 2.0; };
    const char* color = palette[k % std::size(palette)];

    std::vector<std::vector<std::size_t>> segments(1);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i]) {
        segments.back().push_back(i);
      } else if (!segments.back().empty()) {
        segments.emplace_back();
      }
    }
    for (const auto& seg : segments) {
      if (seg.empty()) continue;
      os << "<polyline data-metric=\"" << to_string(id) << "\" fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t j = 0; j < seg.size(); ++j)
        os << (j ? " " : "") << r2(sx(series.window_centers[seg[j]])) << "," << r2(sy(*vals[seg[j]]));
      os << "\"/>\n";
      if (seg.size() == 1)
        os << "<circle cx=\"" << r2(sx(series.window_centers[seg[0]])) << "\" cy=\"" << r2(sy(*vals[seg[0]]))
           << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }
    const double ly = legend_top + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << r2(left) << "\" y1=\"" << r2(ly) << "\" x2=\"" << r2(left + 20.0) << "\" y2=\"" << r2(ly)
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << r2(left + 26.0) << "\" y=\"" << r2(ly + 4.0) << "\">" << to_string(id);
    if (any) os << " [" << format_number(lo) << ", " << format_number(hi) << "]";
    os << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// First column window center, then one column per metric; gaps are empty
/// cells.
inline std::string series_to_csv(const MetricSeries& series) {
  if (series.size() == 0) throw Error(ErrorKind::EmptySeries, "cannot export an empty series");
  std::ostringstream os;
  os << "window_center";
  for (MetricId id : series.metrics) os << "," << to_string(id);
  os << "\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << format_number(series.window_centers[i]);
    for (MetricId id : series.metrics) {
      os << ",";
      const auto& v = series.values.at(id)[i];
      if (v) os << format_number(*v);
    }
    os << "\n";
  }
  return os.str();
}

inline MetricSeries series_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  auto strip = [](std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
  };
  if (!std::getline(is, line)) throw Error(ErrorKind::EmptySeries, "CSV has no header");
  const auto header = split(strip(line));
  if (header.empty() || header[0] != "window_center") throw Error(ErrorKind::MalformedFile, "CSV must start with window_center");
  MetricSeries series;
  for (std::size_t c = 1; c < header.size(); ++c) {
    try {
      series.metrics.push_back(parse_metric_id(header[c]));
    } catch (const Error&) {
      throw Error(ErrorKind::MalformedFile, "unknown CSV column '" + header[c] + "'");
    }
    series.values[series.metrics.back()];
  }
  while (std::getline(is, line)) {
    line = strip(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw Error(ErrorKind::MalformedFile, "CSV row has wrong number of cells");
    try {
      series.window_centers.push_back(std::stod(cells[0]));
      for (std::size_t c = 1; c < cells.size(); ++c) {
        auto& column = series.values[series.metrics[c - 1]];
        if (cells[c].empty()) {
          column.push_back(std::nullopt);
        } else {
          column.push_back(std::stod(cells[c]));
        }
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::MalformedFile, "non-numeric CSV cell in row '" + line + "'");
    }
  }
  if (series.size() == 0) throw Error(ErrorKind::EmptySeries, "CSV has no data rows");
  return series;
}

}  // namespace scoregraph
