#pragma once

#include <span>
#include <vector>

#include "csm/scan.hpp"
#include "csm/spectrum.hpp"

namespace csm {

struct DoubletPair {
  ResonanceState a;  ///< kappa_a member, radial index n
  ResonanceState b;  ///< kappa_b member, radial index n - 1
  double dE = 0.0;      ///< E_r(a) - E_r(b)
  double dGamma = 0.0;  ///< Gamma(a) - Gamma(b)
};

/// Pseudospin partners kappa_a < 0 and kappa_b = 1 - kappa_a.
struct DoubletReport {
  int kappa_a = 0;
  int kappa_b = 0;
  std::vector<DoubletPair> members;  ///< ascending radial index of the kappa_a member
  std::vector<ResonanceState> unpaired_a;  ///< always contains the intruder n = 1
  std::vector<ResonanceState> unpaired_b;

  [[nodiscard]] double max_abs_dE() const;
  [[nodiscard]] double max_abs_dGamma() const;
};

/// Throws ArgumentError unless kappa_a < 0, kappa_b = 1 - kappa_a and the
/// small-component orbital momenta agree.
void check_pseudospin_partners(int kappa_a, int kappa_b);

/// Pair the radial ladders: the state with index n of kappa_a goes with index
/// n - 1 of kappa_b. Inputs are physical states in radial order (as returned
/// by Spectrum::physical_states()).
DoubletReport pair_doublets(int kappa_a, std::span<const ResonanceState> a, int kappa_b,
                            std::span<const ResonanceState> b);

/// As above, from two spectra that differ only in kappa.
DoubletReport pair_doublets(const Spectrum& a, const Spectrum& b);

struct SplittingPoint {
  double value = 0.0;
  DoubletReport report;
};

/// pair_doublets at every grid value; both kappa solves run concurrently.
std::vector<SplittingPoint> splitting_scan(const ModelParams& base, const BasisSpec& spec, ScanParameter which,
                                           std::span<const double> grid, int kappa_a,
                                           const SolveOptions& options = {});

}  // namespace csm
