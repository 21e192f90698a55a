#pragma once

#include <optional>
#include <vector>

#include "csm/matrix.hpp"
#include "csm/model.hpp"

namespace csm {

/// Working precision of the QR iteration. Extended uses long double and is
/// needed when the rest energy dwarfs the physical energy scale (large c).
enum class Precision { Double, Extended };

struct EigenResult {
  /// Sorted lexicographically by (Re, Im).
  std::vector<cplx> eigenvalues;
  /// Column k pairs with eigenvalue k; c-normalized (v^T v = 1) unless the
  /// vector is numerically self-orthogonal, then v^H v = 1.
  std::optional<ComplexMatrix> eigenvectors;
  /// ||H v - lambda v|| / ||v|| per pair, empty unless vectors were requested.
  std::vector<double> residuals;
};

/// Full spectrum of a dense complex matrix: balancing, Householder reduction
/// to Hessenberg form, single-shift complex QR to Schur form.
///
/// Throws NumericError naming the stuck index when QR fails to converge.
EigenResult eig_dense(const ComplexMatrix& h, bool want_vectors = false,
                      Precision precision = Precision::Double);

/// Frobenius norm.
double frobenius_norm(const ComplexMatrix& h);

}  // namespace csm
