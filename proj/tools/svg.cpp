#include "svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace capsys {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Shadow outline of the body on plane (x_j, y_j) from support samples: the
// intersection points of consecutive supporting lines.
std::vector<std::pair<double, double>> shadow_outline(const Body& body, int plane,
                                                      int samples = 96) {
  const int n = body.dim() / 2;
  std::vector<double> h(samples);
  std::vector<std::pair<double, double>> w(samples);
  for (int i = 0; i < samples; ++i) {
    const double ang = 2.0 * M_PI * i / samples;
    Vec u = Vec::Zero(body.dim());
    u(plane) = std::cos(ang);
    u(n + plane) = std::sin(ang);
    w[i] = {std::cos(ang), std::sin(ang)};
    h[i] = body.support(u);
  }
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < samples; ++i) {
    const int j = (i + 1) % samples;
    const double det = w[i].first * w[j].second - w[i].second * w[j].first;
    if (std::abs(det) < 1e-12) continue;
    pts.push_back({(h[i] * w[j].second - h[j] * w[i].second) / det,
                   (w[i].first * h[j] - w[j].first * h[i]) / det});
  }
  return pts;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

std::string loops_svg(const Body& body, const std::vector<const TimeLoop*>& loops,
                      const std::vector<std::string>& labels) {
  const int n = body.dim() / 2;
  const int panel = 320, margin = 28;
  const int width = n * panel, height = panel + 24;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
     << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";

  for (int p = 0; p < n; ++p) {
    const auto outline = shadow_outline(body, p);
    double extent = 1e-9;
    for (const auto& q : outline)
      extent = std::max({extent, std::abs(q.first), std::abs(q.second)});
    for (const auto* lp : loops)
      for (const auto& s : lp->samples)
        extent = std::max({extent, std::abs(s(p)), std::abs(s(n + p))});
    extent *= 1.08;
    const double scale = (panel / 2.0 - margin) / extent;
    const double cx = p * panel + panel / 2.0, cy = panel / 2.0;
    auto X = [&](double v) { return cx + scale * v; };
    auto Y = [&](double v) { return cy - scale * v; };

    os << "<g>\n";
    // axes
    os << "<line x1=\"" << fmt(X(-extent)) << "\" y1=\"" << fmt(Y(0)) << "\" x2=\""
       << fmt(X(extent)) << "\" y2=\"" << fmt(Y(0))
       << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << fmt(X(0)) << "\" y1=\"" << fmt(Y(-extent)) << "\" x2=\""
       << fmt(X(0)) << "\" y2=\"" << fmt(Y(extent))
       << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    // body shadow
    os << "<polygon points=\"";
    for (const auto& q : outline) os << fmt(X(q.first)) << ',' << fmt(Y(q.second)) << ' ';
    os << "\" fill=\"#e8eef7\" stroke=\"#4a6fa5\" stroke-width=\"1.5\"/>\n";
    // loop traces
    for (size_t l = 0; l < loops.size(); ++l) {
      os << "<polyline points=\"";
      const auto& samples = loops[l]->samples;
      for (size_t j = 0; j <= samples.size(); ++j) {
        const Vec& s = samples[j % samples.size()];
        os << fmt(X(s(p))) << ',' << fmt(Y(s(n + p))) << ' ';
      }
      os << "\" fill=\"none\" stroke=\"" << kColors[l % 8]
         << "\" stroke-width=\"1.5\"/>\n";
    }
    os << "<text x=\"" << fmt(cx) << "\" y=\"" << panel + 16
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
       << "plane (x" << p + 1 << ", y" << p + 1 << ")</text>\n";
    os << "</g>\n";
  }
  // legend
  for (size_t l = 0; l < labels.size() && l < loops.size(); ++l) {
    os << "<text x=\"8\" y=\"" << 16 + 16 * l
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << kColors[l % 8]
       << "\">" << labels[l] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_loops_svg(const std::string& path, const Body& body,
                     const std::vector<const TimeLoop*>& loops,
                     const std::vector<std::string>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << loops_svg(body, loops, labels);
}

}  // namespace capsys
