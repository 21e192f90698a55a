#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "csm/basis.hpp"
#include "csm/eig.hpp"
#include "csm/hamiltonian.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace csm;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

ModelParams table1() {
  ModelParams p;
  p.V0 = 6.0;
  p.r0 = 4.0;
  p.alpha = 0.3;
  p.M = 0.5;
  p.kappa = -1;
  p.units = UnitSystem::NaturalFm;
  return p;
}

BasisSpec spec(double theta_deg, int N_max = 200, double b0 = 0.6) {
  BasisSpec s;
  s.N_max = N_max;
  s.b0 = b0;
  s.theta = theta_deg * kDeg;
  return s;
}

}  // namespace

TEST_SUITE("operator") {
  TEST_CASE("null potential gives a zero block") {
    ModelParams p = table1();
    p.V0 = 0.0;
    const BasisSpec s = resolve(spec(70.0, 40), p);
    const ComplexMatrix v = potential_block(p, s, p.l(), radial_count(s.N_max, p.l()));
    for (const cplx& x : v.data()) CHECK(x == cplx{0.0, 0.0});
  }

  TEST_CASE("unrotated blocks are real and symmetric") {
    const ModelParams p = table1();
    const BasisSpec s = resolve(spec(0.0, 60), p);
    const ComplexMatrix v = potential_block(p, s, p.l(), radial_count(s.N_max, p.l()));
    double imag = 0.0;
    for (const cplx& x : v.data()) imag = std::max(imag, std::abs(x.imag()));
    CHECK(imag < 1e-12);
    CHECK(max_asymmetry(v) < 1e-12);
    const ComplexMatrix b = kinetic_block(p, s);
    for (const cplx& x : b.data()) CHECK(x.imag() == 0.0);
  }

  TEST_CASE("potential entry (1,1) against an adaptive integral") {
    const ModelParams p = table1();
    const BasisSpec s = resolve(spec(70.0), p);
    for (int l : {p.l(), p.l_tilde()}) {
      const ComplexMatrix v = potential_block(p, s, l, 3);
      std::function<cplx(double)> f = [&](double r) {
        const double R = ho_radial(1, l, s.b0, r);
        return R * R * r * r * morse_potential(p, std::polar(r, s.theta)) / p.energy_scale();
      };
      const cplx ref = oracle::integrate(f, 0.0, 30.0 * s.b0, 1e-15, 128);
      CHECK(std::abs(v(0, 0) - ref) <= 1e-9 * std::abs(ref));
    }
  }

  TEST_CASE("doubling the quadrature order leaves the potential block unchanged") {
    const ModelParams p = table1();
    BasisSpec s = resolve(spec(70.0), p);
    const int n = radial_count(s.N_max, p.l());
    const ComplexMatrix a = potential_block(p, s, p.l(), n);
    s.quad_order *= 2;
    const ComplexMatrix b = potential_block(p, s, p.l(), n);
    double scale = 0.0;
    for (const cplx& x : a.data()) scale = std::max(scale, std::abs(x));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    CHECK(worst <= 1e-10 * scale);
  }

  TEST_CASE("kinetic block: structure and theta dependence") {
    ModelParams p = table1();
    for (int kappa : {-3, -1, 2, 4}) {
      p.kappa = kappa;
      const BasisSpec s0 = resolve(spec(0.0, 40, 0.7), p);
      const BasisSpec s1 = resolve(spec(63.0, 40, 0.7), p);
      const ComplexMatrix b0 = kinetic_block(p, s0);
      const ComplexMatrix b1 = kinetic_block(p, s1);
      CHECK(b0.rows() == static_cast<std::size_t>(radial_count(40, p.l_tilde())));
      CHECK(b0.cols() == static_cast<std::size_t>(radial_count(40, p.l())));
      for (std::size_t i = 0; i < b0.rows(); ++i) {
        int nonzero = 0;
        for (std::size_t j = 0; j < b0.cols(); ++j) {
          if (b0(i, j) != 0.0) {
            ++nonzero;
            // kappa < 0: columns n' = n~ and n~ + 1; kappa > 0: n' = n~ and n~ - 1.
            CHECK((j == i || (kappa < 0 ? j == i + 1 : j + 1 == i)));
          }
          CHECK(std::abs(b1(i, j) - std::polar(1.0, -s1.theta) * b0(i, j)) < 1e-14 * (1.0 + std::abs(b0(i, j))));
        }
        CHECK(nonzero <= 2);
      }
    }
  }

  TEST_CASE("kinetic block equals the radial derivative integral") {
    ModelParams p = table1();
    const double b0 = 1.0;
    for (int kappa : {-3, -1, 2, 4}) {
      p.kappa = kappa;
      const int l = p.l();
      const int lt = p.l_tilde();
      const BasisSpec s = resolve(spec(0.0, 2 * 19 + l + 2, b0), p);
      const ComplexMatrix b = kinetic_block(p, s);
      double worst = 0.0;
      for (int nt = 1; nt <= 20; ++nt) {
        for (int n = 1; n <= 20; ++n) {
          if (std::abs(nt - n) > 1) {
            CHECK(b(static_cast<std::size_t>(nt - 1), static_cast<std::size_t>(n - 1)) == cplx{0.0, 0.0});
            continue;
          }
          std::function<double(double)> f = [&](double r) {
            return r * r * ho_radial(nt, lt, b0, r) *
                   (ho_radial_derivative(n, l, b0, r) + (1.0 + kappa) / r * ho_radial(n, l, b0, r));
          };
          const double ref = oracle::integrate(f, 1e-300, 18.0, 1e-14, 96);
          worst = std::max(worst, std::abs(b(static_cast<std::size_t>(nt - 1), static_cast<std::size_t>(n - 1)) - ref));
        }
      }
      CHECK(worst < 1e-10);
    }
  }

  TEST_CASE("assembled matrix: dimension and symmetry") {
    const ModelParams p = table1();
    const BasisSpec s = resolve(spec(70.0), p);
    const ComplexMatrix h = assemble(p, s);
    CHECK(h.rows() == static_cast<std::size_t>(radial_count(200, 0) + radial_count(200, 1)));
    CHECK(max_asymmetry(h) < 1e-12);
  }

  TEST_CASE("free Dirac spectrum against the characteristic polynomial") {
    ModelParams p;
    p.V0 = 0.0;
    p.r0 = 1.0;
    p.alpha = 1.0;
    p.kappa = 2;
    p.M = 5e-4;
    p.units = UnitSystem::AtomicUnits;
    const BasisSpec s = resolve(spec(0.0, 10, 30.0), p);
    const ComplexMatrix h = assemble(p, s);
    REQUIRE(h.rows() == 10);
    const auto roots = oracle::polynomial_roots(oracle::characteristic_polynomial(h));
    const auto eig = eig_dense(h);
    CHECK(oracle::multiset_distance(eig.eigenvalues, roots) < 1e-8 * frobenius_norm(h));
    const double mc2 = p.rest_energy();
    for (const cplx& e : eig.eigenvalues) {
      CHECK(std::abs(e.imag()) < 1e-10);
      CHECK(std::abs(e.real()) >= mc2 * (1.0 - 1e-12));
    }
  }

  TEST_CASE("matrix dump") {
    const ModelParams p = table1();
    const BasisSpec s = resolve(spec(70.0, 10), p);
    const ComplexMatrix h = assemble(p, s);
    std::ostringstream out;
    write_matrix_dump(out, h);
    std::istringstream in(out.str());
    std::size_t lines = 0;
    std::size_t i = 0, j = 0;
    double re = 0.0, im = 0.0;
    while (in >> i >> j >> re >> im) {
      CHECK(re == h(i, j).real());
      CHECK(im == h(i, j).imag());
      ++lines;
    }
    CHECK(lines == h.rows() * h.cols());
  }
}
