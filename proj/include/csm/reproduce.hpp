#pragma once

#include <array>
#include <string>
#include <vector>

#include "csm/io.hpp"
#include "csm/pss.hpp"
#include "csm/scan.hpp"
#include "csm/spectrum.hpp"
#include "csm/svg.hpp"

namespace csm {

/// One computed state against one published value.
struct Comparison {
  std::string column;
  int row = 0;  ///< 1-based
  cplx computed;
  cplx reference;
  double tolerance = 0.0;
  bool real_only = false;  ///< the reference quotes only E_r

  [[nodiscard]] double dE_r() const { return std::abs(computed.real() - reference.real()); }
  [[nodiscard]] double dE_i() const { return real_only ? 0.0 : std::abs(computed.imag() - reference.imag()); }
  [[nodiscard]] bool pass() const { return dE_r() <= tolerance && dE_i() <= tolerance; }
};

struct TableReport {
  std::vector<Comparison> rows;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] bool pass(const std::string& column) const;
  [[nodiscard]] std::vector<Comparison> failures() const;
};

Table comparison_table(const TableReport& r);

/// Reported energy of the eigenvalue (upper branch) closest to `target`.
cplx nearest_energy(const Spectrum& s, cplx target);

/// Solve a benchmark setup: N_max = 200, theta = 70 deg, fixed b0, optional c x 100.
Spectrum benchmark_spectrum(const ModelParams& params, double b0, bool nonrel);

/// Relativistic and c x 100 columns plus the J-matrix column; first three rows
/// at 1e-3 fm^-2, the rest at 1e-2.
TableReport compare_table1(const Spectrum& rel, const Spectrum& nonrel);
/// All columns at 5e-2 au.
TableReport compare_table2(const Spectrum& rel, const Spectrum& nonrel);

struct ScanRange {
  ScanParameter which;
  double lo;
  double hi;
  int points;

  [[nodiscard]] std::vector<double> grid() const { return linspace(lo, hi, points); }
};

/// Resonance-trajectory scans around the kappa = -1 benchmark.
std::array<ScanRange, 3> fig2_ranges();
/// Rotation angle used for the trajectory scans, degrees.
inline constexpr double fig2_theta_deg = 55.0;
/// Oscillator length of the trajectory scans.
inline constexpr double fig2_b0 = 0.6;
BasisSpec fig2_basis();

/// Pseudospin splitting scans around V0 = 10, r0 = 1, alpha = 0.5 (au).
std::array<ScanRange, 3> fig5_ranges();
BasisSpec pss_basis();

/// Panels for the figure commands.
svg::Panel spectrum_panel(const Spectrum& s, const std::string& title, double window);
std::vector<svg::Panel> trajectory_panels(const std::vector<Trajectory>& t, const std::string& unit);
/// Morse curves of the three benchmark panels (V0, r0 and alpha varied).
Table potential_curves(double r_max = 12.0, int points = 241);
std::vector<svg::Panel> potential_panels(const Table& curves);
svg::Panel doublet_panel(const DoubletReport& r);
std::vector<svg::Panel> splitting_panels(ScanParameter which, const std::vector<SplittingPoint>& scan);

}  // namespace csm
