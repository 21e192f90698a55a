#pragma once

#include <array>
#include <optional>

#include "csm/model.hpp"

namespace csm::reference {

// Published benchmark energies for the Morse resonance problem. Rows are in
// the order the benchmark lists them (bound state first, then resonances of
// increasing width). Values are E_r + i E_i, E_i <= 0.

struct Row {
  cplx relativistic;
  cplx nonrelativistic;            ///< c scaled by 100
  std::optional<cplx> jmatrix;     ///< nonrelativistic J-matrix calculation
  std::optional<cplx> independent; ///< second nonrelativistic calculation
};

/// kappa = -1, V0 = 6 fm^-2, r0 = 4 fm, alpha = 0.3 fm^-1, M = 0.5 fm^-1.
/// Energies in fm^-2 (multiplied by 2M).
inline ModelParams table1_params() {
  ModelParams p;
  p.V0 = 6.0;
  p.r0 = 4.0;
  p.alpha = 0.3;
  p.M = 0.5;
  p.kappa = -1;
  p.units = UnitSystem::NaturalFm;
  return p;
}

inline const std::array<Row, 17> table1 = {{
    {{-8.1096, 0.0}, {-8.1089, 0.0}, cplx{-8.1090, 0.0}, cplx{-8.1090, 0.0}},
    {{1.1745, -0.0002}, {1.1779, -0.0011}, cplx{1.1778, -2.01e-13}, cplx{1.1783, 0.0}},
    {{5.6229, -0.0349}, {5.6212, -0.0303}, cplx{5.6252, -0.0351}, cplx{5.6252, -0.0351}},
    {{6.8906, -1.3170}, {6.9041, -1.3103}, cplx{6.8911, -1.3194}, std::nullopt},
    {{7.3194, -3.5858}, {7.3375, -3.6189}, cplx{7.3182, -3.5887}, std::nullopt},
    {{7.1143, -6.0693}, {7.0545, -6.0853}, cplx{7.1111, -6.0715}, std::nullopt},
    {{6.3679, -8.5999}, {6.3820, -8.5374}, cplx{6.3627, -8.6005}, std::nullopt},
    {{5.1514, -11.0980}, {5.1806, -11.1429}, cplx{5.1446, -11.0960}, std::nullopt},
    {{3.5200, -13.5209}, {3.4649, -13.5147}, cplx{3.5123, -13.5151}, std::nullopt},
    {{1.5173, -15.8439}, {1.5262, -15.8071}, cplx{1.5095, -15.8334}, std::nullopt},
    {{-0.8212, -18.0518}, {-0.8167, -18.0490}, cplx{-0.8278, -18.0358}, std::nullopt},
    {{-3.4656, -20.1350}, {-3.4773, -20.1177}, cplx{-3.4697, -20.1128}, std::nullopt},
    {{-6.3907, -22.0869}, {-6.3930, -22.0537}, cplx{-6.3907, -22.0579}, std::nullopt},
    {{-9.5750, -23.9031}, {-9.5671, -23.8658}, cplx{-9.5691, -23.8667}, std::nullopt},
    {{-12.9998, -25.5801}, {-12.9859, -25.5370}, cplx{-12.9861, -25.5363}, std::nullopt},
    {{-16.6491, -27.1155}, {-16.6258, -27.0640}, cplx{-16.6255, -27.0642}, std::nullopt},
    {{-20.5088, -28.5077}, {-20.4731, -28.4487}, std::nullopt, std::nullopt},
}};

/// The second calculation quotes only E_r for this row of table1.
inline constexpr std::size_t table1_independent_real_only_row = 1;

/// kappa = 2, V0 = 10, r0 = 1, alpha = 2, M = 1, atomic units.
inline ModelParams table2_params() {
  ModelParams p;
  p.V0 = 10.0;
  p.r0 = 1.0;
  p.alpha = 2.0;
  p.M = 1.0;
  p.kappa = 2;
  p.units = UnitSystem::AtomicUnits;
  return p;
}

inline const std::array<Row, 6> table2 = {{
    {{-30.7047, 0.0}, {-30.4136, 0.0}, cplx{-30.4139, 0.0}, std::nullopt},
    {{10.8020, -0.2822}, {10.9262, -0.3026}, cplx{10.9260, -0.3027}, std::nullopt},
    {{17.1419, -12.3689}, {17.1244, -12.5031}, cplx{17.1240, -12.5027}, std::nullopt},
    {{11.1795, -32.0868}, {11.0511, -32.1914}, cplx{11.0521, -32.1906}, std::nullopt},
    {{-4.8377, -52.5443}, {-5.0383, -52.5395}, cplx{-5.0376, -52.5407}, std::nullopt},
    {{-29.3283, -72.2381}, {-29.5208, -72.0565}, std::nullopt, std::nullopt},
}};

/// Rotation angle of the benchmark spectra, degrees.
inline constexpr double benchmark_theta_deg = 70.0;
inline constexpr int benchmark_N_max = 200;

/// Plateau oscillator lengths used to reproduce the two tables.
inline constexpr double table1_b0 = 0.8;
inline constexpr double table2_b0 = 0.2;

/// Pseudospin study: V0 = 10, r0 = 1, alpha = 0.5, M = 1, atomic units.
inline ModelParams pss_params(int kappa) {
  ModelParams p;
  p.V0 = 10.0;
  p.r0 = 1.0;
  p.alpha = 0.5;
  p.M = 1.0;
  p.kappa = kappa;
  p.units = UnitSystem::AtomicUnits;
  return p;
}
inline constexpr double pss_b0 = 0.5;
/// Published upper bounds of |dE| and |dGamma| over the splitting scans, au.
inline constexpr double pss_max_dE = 1.17;
inline constexpr double pss_max_dGamma = 1.04;

}  // namespace csm::reference
