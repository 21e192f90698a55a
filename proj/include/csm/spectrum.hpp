#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csm/basis.hpp"
#include "csm/eig.hpp"
#include "csm/matrix.hpp"
#include "csm/model.hpp"

namespace csm {

enum class StateClass {
  Bound,
  Resonance,
  Continuum,
  NegativeEnergy,  ///< lower (Dirac sea) branch, Re(eps) < 0
};

std::string_view to_string(StateClass c);
StateClass parse_state_class(std::string_view s);

struct SpectralPoint {
  cplx energy;     ///< reported energy E_r + i E_i
  cplx eigenvalue; ///< raw eigenvalue of H_theta
  StateClass cls = StateClass::Continuum;
  /// Largest distance to the matched eigenvalue at the companion angles, in
  /// reported units; negative when unclassified.
  double displacement = -1.0;
};

/// One physical state (bound or resonant).
struct ResonanceState {
  double E_r = 0.0;
  double Gamma = 0.0;  ///< -2 E_i, clamped at 0 for numerically real states
  int kappa = 0;
  int index = 0;       ///< 1-based radial ordering
  std::string label;
  bool bound = false;

  [[nodiscard]] cplx energy() const { return {E_r, -0.5 * Gamma}; }
};

struct Thresholds {
  double bound_tol = 1e-6;  ///< |E_i| below which a stable E_r < 0 state is bound
  double stab_tol = 1e-3;   ///< largest theta displacement of a stable state
};

struct Spectrum {
  ModelParams params;
  BasisSpec spec;  ///< resolved
  double theta_used = 0.0;
  std::vector<SpectralPoint> states;  ///< sorted by (Re, Im) of the eigenvalue
  std::optional<ComplexMatrix> eigenvectors;
  std::vector<double> residuals;

  /// Bound states by ascending E_r, then resonances by ascending width, with
  /// radial indices assigned in that order.
  [[nodiscard]] std::vector<ResonanceState> physical_states() const;
  [[nodiscard]] std::size_t count(StateClass c) const;
};

struct SolveOptions {
  Thresholds thresholds;
  /// Extra rotation angles (radians, relative to spec.theta) used to test
  /// theta-stability. Empty leaves every positive-energy point Continuum.
  std::vector<double> companion_offsets = {-5.0 * 0.017453292519943295, 5.0 * 0.017453292519943295};
  bool want_vectors = false;
  /// Working precision; unset picks Extended when c_factor > 1.
  std::optional<Precision> precision;
};

/// Precision used by default for the given model.
Precision auto_precision(const ModelParams& params);

/// Assemble and diagonalize H_theta at spec.theta without classification.
Spectrum diagonalize(const ModelParams& params, const BasisSpec& spec, Precision precision,
                     bool want_vectors = false);

/// Label each point of `primary` by matching it against the same problem
/// solved at other rotation angles. Stable points (moved by at most stab_tol
/// in every companion) are Bound when E_r < 0 and |E_i| < bound_tol, Resonance
/// when E_i <= bound_tol, otherwise Continuum. Points so close to threshold
/// that a rotated continuum point would also move by less than stab_tol stay
/// Continuum.
///
/// Throws ClassificationError when two companion eigenvalues lie within
/// stab_tol of one stable target.
Spectrum classify(const Spectrum& primary, std::span<const Spectrum> companions,
                  const Thresholds& thresholds);

/// Full pipeline: diagonalize at spec.theta and each companion angle, classify.
Spectrum solve(const ModelParams& params, const BasisSpec& spec, const SolveOptions& options = {});

/// solve() with the speed of light scaled by `factor` (rest mass subtracted at
/// the scaled c).
Spectrum nonrel_limit(const ModelParams& params, const BasisSpec& spec, const SolveOptions& options = {},
                      double factor = 100.0);

/// Mean argument (radians) of the Continuum points with |E| > min_modulus.
double continuum_mean_argument(const Spectrum& s, double min_modulus = 1.0);

/// Direction (radians) of the continuum cloud: median argument of the
/// Continuum points with |E| > min_modulus. The few points near threshold that
/// the potential scatters off the rotated cut do not move it.
double continuum_direction(const Spectrum& s, double min_modulus = 1.0);

struct PlateauPoint {
  double b0 = 0.0;
  std::size_t stable_states = 0;
  /// Largest movement of this b0's physical states relative to the
  /// neighbouring grid values, matched to the nearest positive-energy eigenvalue.
  double drift = 0.0;
};

/// Sweep the oscillator length and report how much the physical states move
/// between neighbouring values. The plateau is where drift is smallest.
std::vector<PlateauPoint> b0_plateau_scan(const ModelParams& params, const BasisSpec& spec,
                                          std::span<const double> b0_grid, const SolveOptions& options = {});

/// b0 from the scan with the most stable states, ties broken by smallest drift.
double select_plateau_b0(std::span<const PlateauPoint> scan);

}  // namespace csm
