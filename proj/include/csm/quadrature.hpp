#pragma once

#include <span>
#include <vector>

namespace csm {

/// Gauss rule for a positive weight function on [0, inf).
///
/// `weights[k]` may underflow to zero for far-out nodes; `log_weights` stays
/// exact and is what callers combine with large polynomial values.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;
  /// Exponent of the weight: x^exponent e^-x for Laguerre rules,
  /// t^exponent e^-t^2 for radial rules.
  double exponent = 0.0;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Three-term recurrence of monic orthogonal polynomials:
/// p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x), with b_0 = mu_0 (total mass).
struct Recurrence {
  std::vector<double> a;
  std::vector<double> b;
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Eigenvalues of the symmetric tridiagonal matrix (diag, offdiag), ascending.
/// `offdiag` has size diag.size() - 1. Implicit QL with Wilkinson shifts.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> offdiag);

/// Gauss rule of the given order from the first order+1 recurrence
/// coefficients (Golub-Welsch nodes, Newton-polished; Christoffel weights).
QuadratureRule gauss_from_recurrence(const Recurrence& rec, int order);

/// Generalized Gauss-Laguerre rule for x^exponent e^-x on [0, inf).
QuadratureRule gauss_laguerre(int order, double exponent);

/// Gauss rule for t^power e^-t^2 on [0, inf).
///
/// Recurrence coefficients come from a discretized Stieltjes procedure
/// (Lanczos on a composite Gauss-Legendre discretization); the rule is cached
/// per (order, power) and safe to call from several threads.
const QuadratureRule& gauss_radial(int order, int power);

/// Recurrence coefficients of t^power e^-t^2 on [0, inf), `count` of each.
Recurrence radial_recurrence(int count, int power);

}  // namespace csm
