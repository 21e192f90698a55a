#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace csm {

using cplx = std::complex<double>;

enum class UnitSystem {
  NaturalFm,    ///< hbar = 1, lengths in fm, reported energies multiplied by 2M
  AtomicUnits,  ///< hbar = m = 1
};

std::string_view to_string(UnitSystem u);
UnitSystem parse_unit_system(std::string_view s);

/// Baseline speed of light, shared by both unit systems.
inline constexpr double kSpeedOfLight = 137.035999084;

/// Physical definition of a Dirac particle in a vector Morse potential.
///
/// `V0` is given in reported units: fm^-2 (already multiplied by 2M) for
/// NaturalFm, hartree for AtomicUnits. The Hamiltonian sees
/// `V0 / energy_scale()`.
struct ModelParams {
  double V0 = 0.0;
  double r0 = 1.0;
  double alpha = 1.0;
  double M = 1.0;
  int kappa = -1;
  double c_factor = 1.0;
  UnitSystem units = UnitSystem::AtomicUnits;

  /// Throws ArgumentError unless alpha > 0, kappa != 0, M > 0, c_factor >= 1.
  void validate() const;

  /// Large-component orbital angular momentum.
  [[nodiscard]] int l() const { return kappa > 0 ? kappa : -kappa - 1; }
  /// Small-component orbital angular momentum.
  [[nodiscard]] int l_tilde() const { return kappa > 0 ? kappa - 1 : -kappa; }
  /// Total angular momentum times two.
  [[nodiscard]] int two_j() const { return 2 * (kappa > 0 ? kappa : -kappa) - 1; }

  [[nodiscard]] double speed_of_light() const { return kSpeedOfLight * c_factor; }
  [[nodiscard]] double rest_energy() const {
    const double c = speed_of_light();
    return M * c * c;
  }
  /// Factor between internal (Hamiltonian) energies and reported energies.
  [[nodiscard]] double energy_scale() const {
    return units == UnitSystem::NaturalFm ? 2.0 * M : 1.0;
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// V0 w (2 - w) with w = exp(-(z - r0) alpha), in the units of V0.
///
/// Throws DomainError when |Re(-(z - r0) alpha)| > 700.
cplx morse_potential(const ModelParams& p, cplx z);

/// Convert a Hamiltonian eigenvalue to the reported energy (rest mass removed).
cplx report_energy(const ModelParams& p, cplx eps);

/// Inverse of report_energy.
cplx internal_energy(const ModelParams& p, cplx reported);

/// Spectroscopic label such as "2p3/2" for radial index n.
std::string spectroscopic_label(int n, int kappa);

}  // namespace csm
