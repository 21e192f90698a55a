#pragma once

#include <string>
#include <utility>
#include <vector>

namespace csm::svg {

enum class Style { Markers, Line, OpenMarkers };

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
  Style style = Style::Markers;
  std::string color = "#1f77b4";
};

struct Panel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
};

/// Self-contained SVG 1.1 document with the panels on a grid of `columns`.
/// Empty panels are drawn with a placeholder axis.
std::string render(const std::vector<Panel>& panels, int columns = 1, double panel_width = 480.0,
                   double panel_height = 340.0);

/// Colour from a fixed palette.
std::string palette(std::size_t i);

}  // namespace csm::svg
