#pragma once

#include <iosfwd>

#include "csm/basis.hpp"
#include "csm/matrix.hpp"
#include "csm/model.hpp"

namespace csm {

// Blocks of the complex-scaled Dirac Hamiltonian in the oscillator basis. All
// energies here are internal (Hamiltonian) units, i.e. V / energy_scale().
// `spec` arguments must already be resolved (see resolve()).

/// <R_nl | V(r e^{i theta}) | R_n'l>, n, n' = 1..size, by radial Gauss quadrature.
ComplexMatrix potential_block(const ModelParams& params, const BasisSpec& spec, int l, int size);

/// Coupling block B (n~_max x n_max) in closed form:
///   kappa < 0:  B = -(e^{-i theta}/b0) (sqrt(n~ + l + 1/2) d_{n~,n'} + sqrt(n~) d_{n~,n'-1})
///   kappa > 0:  B = +(e^{-i theta}/b0) (sqrt(n~ + l - 1/2) d_{n~,n'} + sqrt(n~ - 1) d_{n~,n'+1})
/// with l the large-component orbital momentum.
ComplexMatrix kinetic_block(const ModelParams& params, const BasisSpec& spec);

/// Full complex-symmetric H_theta:
///   [[V_l + M c^2,  c B^T],
///    [c B,          V_l~ - M c^2]]
ComplexMatrix assemble(const ModelParams& params, const BasisSpec& spec);

/// assemble() minus Mc^2 on the diagonal. Its eigenvalues are eps - Mc^2 with
/// no cancellation against the rest energy, which matters once c is scaled up.
ComplexMatrix assemble_relative(const ModelParams& params, const BasisSpec& spec);

/// Text dump, one "row col re im" entry per line (0-based indices).
void write_matrix_dump(std::ostream& out, const ComplexMatrix& m);

}  // namespace csm
