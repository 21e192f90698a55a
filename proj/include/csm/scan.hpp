#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csm/spectrum.hpp"

namespace csm {

enum class ScanParameter { V0, r0, alpha };

std::string_view to_string(ScanParameter p);
ScanParameter parse_scan_parameter(std::string_view s);

/// Copy of `base` with the scanned parameter set to `value`.
ModelParams with_parameter(ModelParams base, ScanParameter which, double value);

/// Throws ArgumentError unless the grid is non-empty and strictly monotone.
void check_grid(std::span<const double> grid);

/// One state followed across a parameter grid.
struct Trajectory {
  ScanParameter which = ScanParameter::V0;
  std::vector<double> grid;
  /// One entry per grid value; empty where the state is not present.
  std::vector<std::optional<ResonanceState>> points;
  /// Label and grid value where the state first appears, e.g. "2s1/2@V0=1.5".
  std::string key;

  [[nodiscard]] std::size_t first() const;
  [[nodiscard]] std::size_t present() const;
};

struct LinkOptions {
  /// Threshold in units of the median scaled drift of a grid step.
  double threshold_factor = 5.0;
  /// Smallest drift scale per component (reported units); keeps the metric
  /// finite when every state is frozen.
  double drift_floor = 1e-3;
  /// Consecutive unmatched grid points after which a trajectory dissolves.
  int dissolve_after = 2;
  /// Two candidates whose scaled distances differ by less than this ratio
  /// are an ambiguous link.
  double ambiguity_ratio = 1.05;
};

/// Link per-grid-point physical states into trajectories.
///
/// Throws ClassificationError on an ambiguous link.
std::vector<Trajectory> link_states(ScanParameter which, std::span<const double> grid,
                                    const std::vector<std::vector<ResonanceState>>& states,
                                    const LinkOptions& link = {});

/// Solve at every grid value (concurrently) and link the physical states.
std::vector<Trajectory> scan_parameter(const ModelParams& base, const BasisSpec& spec, ScanParameter which,
                                       std::span<const double> grid, const SolveOptions& options = {},
                                       const LinkOptions& link = {});

/// `count` evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int count);

}  // namespace csm
