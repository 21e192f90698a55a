#pragma once

#include <span>
#include <vector>

#include "csm/model.hpp"

namespace csm {

/// Numerical discretization of the scaled Dirac problem.
struct BasisSpec {
  int N_max = 200;      ///< major-shell cutoff, even
  double b0 = 0.0;      ///< oscillator length; <= 0 selects default_b0(params)
  double theta = 0.0;   ///< complex rotation angle in radians, [0, pi/2)
  int quad_order = 0;   ///< radial quadrature nodes; <= 0 selects 2 n_max + 40

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
};

/// Number of radial functions with 2(n-1) + l <= N_max.
int radial_count(int N_max, int l);

/// BasisSpec with defaults filled in for `params`. Validates everything.
BasisSpec resolve(const BasisSpec& spec, const ModelParams& params);

/// Default oscillator length: 0.18 / alpha clamped to [r0/10, r0/2], at least 0.05.
double default_b0(const ModelParams& params);

/// Default quadrature order for the given model: 2 max(n_max, n~_max) + 40.
int default_quad_order(const ModelParams& params, int N_max);

/// Normalized spherical oscillator radial function R_nl(r), n >= 1,
/// with int_0^inf R_nl^2 r^2 dr = 1.
double ho_radial(int n, int l, double b0, double r);

/// Derivative dR_nl/dr, from the Laguerre derivative identity.
double ho_radial_derivative(int n, int l, double b0, double r);

/// Orthonormal Laguerre polynomials p_k^(alpha)(x), k = 0..out.size()-1,
/// each multiplied by exp(log_prefactor). Evaluated by upward recurrence with
/// rescaling so that huge polynomial values and tiny prefactors combine
/// without overflow.
void scaled_laguerre(double x, double alpha, double log_prefactor, std::span<double> out);

}  // namespace csm
