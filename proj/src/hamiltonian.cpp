#include "csm/hamiltonian.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "csm/error.hpp"
#include "csm/quadrature.hpp"

namespace csm {

ComplexMatrix potential_block(const ModelParams& params, const BasisSpec& spec, int l, int size) {
  if (size < 1) throw ArgumentError("potential block size must be >= 1");
  const QuadratureRule& rule = gauss_radial(spec.quad_order, 2 * l + 2);
  const std::size_t q = rule.size();
  const std::size_t n = static_cast<std::size_t>(size);
  const cplx rotation = std::polar(1.0, spec.theta);
  const double inv_scale = 1.0 / params.energy_scale();

  // phi(k, n) = sqrt(2 w_k) p_{n-1}(t_k^2), so that V_nn' = sum_k phi phi' V_k.
  std::vector<double> phi(q * n);
  std::vector<cplx> pot(q);
  for (std::size_t k = 0; k < q; ++k) {
    const double t = rule.nodes[k];
    scaled_laguerre(t * t, l + 0.5, 0.5 * (std::log(2.0) + rule.log_weights[k]),
                    std::span<double>(phi.data() + k * n, n));
    try {
      pot[k] = morse_potential(params, spec.b0 * t * rotation) * inv_scale;
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " (quadrature node " + std::to_string(k) + ")");
    }
  }

  ComplexMatrix block(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx sum = 0.0;
      for (std::size_t k = 0; k < q; ++k) sum += phi[k * n + i] * phi[k * n + j] * pot[k];
      block(i, j) = sum;
      block(j, i) = sum;
    }
  }
  return block;
}

ComplexMatrix kinetic_block(const ModelParams& params, const BasisSpec& spec) {
  params.validate();
  const int l = params.l();
  const int n_big = radial_count(spec.N_max, l);
  const int n_small = radial_count(spec.N_max, params.l_tilde());
  const cplx pref = std::polar(1.0 / spec.b0, -spec.theta);
  ComplexMatrix b(static_cast<std::size_t>(n_small), static_cast<std::size_t>(n_big));
  for (int nt = 1; nt <= n_small; ++nt) {
    const auto row = static_cast<std::size_t>(nt - 1);
    if (params.kappa < 0) {
      if (nt <= n_big) b(row, row) = -pref * std::sqrt(nt + l + 0.5);
      if (nt + 1 <= n_big) b(row, row + 1) = -pref * std::sqrt(static_cast<double>(nt));
    } else {
      if (nt <= n_big) b(row, row) = pref * std::sqrt(nt + l - 0.5);
      // sqrt(n~ - 1) vanishes for n~ = 1: the sub-diagonal starts at row 2.
      if (nt >= 2 && nt - 1 <= n_big) b(row, row - 1) = pref * std::sqrt(nt - 1.0);
    }
  }
  return b;
}

namespace {

ComplexMatrix assemble_shifted(const ModelParams& params, const BasisSpec& spec, double upper_shift,
                               double lower_shift) {
  params.validate();
  const int n_big = radial_count(spec.N_max, params.l());
  const int n_small = radial_count(spec.N_max, params.l_tilde());
  const ComplexMatrix upper = potential_block(params, spec, params.l(), n_big);
  const ComplexMatrix lower = potential_block(params, spec, params.l_tilde(), n_small);
  const ComplexMatrix coupling = kinetic_block(params, spec);
  const double c = params.speed_of_light();

  const auto nb = static_cast<std::size_t>(n_big);
  const auto ns = static_cast<std::size_t>(n_small);
  ComplexMatrix h(nb + ns, nb + ns);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) h(i, j) = upper(i, j);
    h(i, i) += upper_shift;
  }
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < ns; ++j) h(nb + i, nb + j) = lower(i, j);
    h(nb + i, nb + i) += lower_shift;
  }
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const cplx v = c * coupling(i, j);
      h(nb + i, j) = v;
      h(j, nb + i) = v;
    }
  }
  return h;
}

}  // namespace

ComplexMatrix assemble(const ModelParams& params, const BasisSpec& spec) {
  const double mc2 = params.rest_energy();
  return assemble_shifted(params, spec, mc2, -mc2);
}

ComplexMatrix assemble_relative(const ModelParams& params, const BasisSpec& spec) {
  return assemble_shifted(params, spec, 0.0, -2.0 * params.rest_energy());
}

void write_matrix_dump(std::ostream& out, const ComplexMatrix& m) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out << i << ' ' << j << ' ' << m(i, j).real() << ' ' << m(i, j).imag() << '\n';
    }
  }
}

}  // namespace csm
