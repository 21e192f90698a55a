#include "csm/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace csm::svg {

std::string palette(std::size_t i) {
  static const std::array<const char*, 8> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return colors[i % colors.size()];
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v, double step) {
  char buf[32];
  const int digits = std::clamp(static_cast<int>(std::ceil(-std::log10(step))), 0, 6);
  std::snprintf(buf, sizeof buf, "%.*f", digits, std::abs(v) < 1e-12 * step ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
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

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

void draw_panel(std::ostringstream& o, const Panel& p, double x0, double y0, double w, double h) {
  const double left = x0 + 62, right = x0 + w - 14, top = y0 + 30, bottom = y0 + h - 46;
  Range xr, yr;
  for (const auto& s : p.series) {
    for (const auto& [x, y] : s.points) {
      xr.add(x);
      yr.add(y);
    }
  }
  xr.finish();
  yr.finish();
  auto sx = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - yr.lo) / (yr.hi - yr.lo) * (bottom - top); };

  o << "<g>\n";
  o << "<text x=\"" << num(0.5 * (left + right)) << "\" y=\"" << num(y0 + 18)
    << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(p.title) << "</text>\n";
  o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(right - left) << "\" height=\""
    << num(bottom - top) << "\" fill=\"none\" stroke=\"#000\"/>\n";

  const double xs = nice_step(xr.hi - xr.lo, 6);
  for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-9 * xs; t += xs) {
    o << "<line x1=\"" << num(sx(t)) << "\" y1=\"" << num(bottom) << "\" x2=\"" << num(sx(t)) << "\" y2=\""
      << num(bottom + 5) << "\" stroke=\"#000\"/>";
    o << "<text x=\"" << num(sx(t)) << "\" y=\"" << num(bottom + 18) << "\" text-anchor=\"middle\" font-size=\"11\">"
      << tick_label(t, xs) << "</text>\n";
  }
  const double ys = nice_step(yr.hi - yr.lo, 6);
  for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-9 * ys; t += ys) {
    o << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(sy(t)) << "\" x2=\"" << num(left) << "\" y2=\""
      << num(sy(t)) << "\" stroke=\"#000\"/>";
    o << "<text x=\"" << num(left - 8) << "\" y=\"" << num(sy(t) + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
      << tick_label(t, ys) << "</text>\n";
  }
  o << "<text x=\"" << num(0.5 * (left + right)) << "\" y=\"" << num(y0 + h - 12)
    << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(p.xlabel) << "</text>\n";
  o << "<text transform=\"translate(" << num(x0 + 16) << "," << num(0.5 * (top + bottom))
    << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << escape(p.ylabel) << "</text>\n";

  for (const auto& s : p.series) {
    if (s.style == Style::Line && s.points.size() > 1) {
      o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) o << num(sx(x)) << ',' << num(sy(y)) << ' ';
      o << "\"/>\n";
    }
    if (s.style != Style::Line || s.points.size() == 1) {
      const bool open = s.style == Style::OpenMarkers;
      for (const auto& [x, y] : s.points) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        o << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"2.5\" fill=\""
          << (open ? "none" : s.color) << "\" stroke=\"" << s.color << "\"/>";
      }
      o << '\n';
    }
  }
  double ly = top + 14;
  for (const auto& s : p.series) {
    if (s.name.empty()) continue;
    o << "<rect x=\"" << num(right - 128) << "\" y=\"" << num(ly - 8) << "\" width=\"10\" height=\"10\" fill=\""
      << s.color << "\"/>";
    o << "<text x=\"" << num(right - 114) << "\" y=\"" << num(ly + 1) << "\" font-size=\"11\">" << escape(s.name)
      << "</text>\n";
    ly += 14;
  }
  o << "</g>\n";
}

}  // namespace

std::string render(const std::vector<Panel>& panels, int columns, double panel_width, double panel_height) {
  columns = std::max(1, columns);
  const std::size_t n = std::max<std::size_t>(1, panels.size());
  const int rows = static_cast<int>((n + static_cast<std::size_t>(columns) - 1) / static_cast<std::size_t>(columns));
  const double width = panel_width * std::min<std::size_t>(n, static_cast<std::size_t>(columns));
  const double height = panel_height * rows;
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
    << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const double x0 = panel_width * static_cast<double>(i % static_cast<std::size_t>(columns));
    const double y0 = panel_height * static_cast<double>(i / static_cast<std::size_t>(columns));
    draw_panel(o, panels[i], x0, y0, panel_width, panel_height);
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace csm::svg
