#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library, so agreement is an independent check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "csm/matrix.hpp"

namespace oracle {

using lcplx = std::complex<long double>;

/// Adaptive Gauss-Kronrod (7/15) on [a, b] for complex integrands.
template <class T>
T gauss_kronrod(const std::function<T(double)>& f, double a, double b, double tol, int depth = 0) {
  static const double xk[8] = {0.991455371120812639, 0.949107912342758525, 0.864864423359769073,
                               0.741531185599394440, 0.586087235467691130, 0.405845151377397167,
                               0.207784955007898468, 0.000000000000000000};
  static const double wk[8] = {0.022935322010529225, 0.063092092629978553, 0.104790010322250184,
                               0.140653259715525919, 0.169004726639267903, 0.190350578064785410,
                               0.204432940075298892, 0.209482141084727828};
  static const double wg[4] = {0.129484966168869693, 0.279705391489276668, 0.381830050505118945,
                               0.417959183673469388};
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T k = f(c) * wk[7];
  T g = f(c) * wg[3];
  for (int i = 0; i < 7; ++i) {
    const T fp = f(c + h * xk[i]);
    const T fm = f(c - h * xk[i]);
    k += (fp + fm) * wk[i];
    if (i % 2 == 1) g += (fp + fm) * wg[i / 2];
  }
  k *= h;
  g *= h;
  const double err = static_cast<double>(std::abs(k - g));
  if (err <= tol || err <= 1e-15 * static_cast<double>(std::abs(k)) || depth > 24) return k;
  return gauss_kronrod(f, a, c, tol, depth + 1) + gauss_kronrod(f, c, b, tol, depth + 1);
}

/// Adaptive integral over [a, b] split into `pieces` equal panels first.
template <class T>
T integrate(const std::function<T(double)>& f, double a, double b, double tol, int pieces = 64) {
  T sum{};
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) sum += gauss_kronrod<T>(f, a + i * h, a + (i + 1) * h, tol / pieces);
  return sum;
}

/// Coefficients c_0..c_n of det(x I - A) = sum c_k x^k by Faddeev-LeVerrier.
inline std::vector<lcplx> characteristic_polynomial(const csm::ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<lcplx> c(n + 1);
  c[n] = 1.0L;
  std::vector<lcplx> m(n * n, 0.0L);
  std::vector<lcplx> am(n * n);
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] += c[n - k + 1];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        lcplx s = 0.0L;
        for (std::size_t l = 0; l < n; ++l) s += lcplx(a(i, l)) * m[l * n + j];
        am[i * n + j] = s;
      }
    }
    lcplx tr = 0.0L;
    for (std::size_t i = 0; i < n; ++i) tr += am[i * n + i];
    c[n - k] = -tr / static_cast<long double>(k);
    m = am;
  }
  return c;
}

/// All roots of sum c_k x^k (Aberth-Ehrlich iteration, then Newton polish).
inline std::vector<lcplx> polynomial_roots(const std::vector<lcplx>& c) {
  const std::size_t n = c.size() - 1;
  auto eval = [&](lcplx x, lcplx& d) {
    lcplx p = c[n];
    d = 0.0L;
    for (std::size_t k = n; k-- > 0;) {
      d = d * x + p;
      p = p * x + c[k];
    }
    return p;
  };
  long double radius = 0.0L;
  for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k] / c[n]));
  radius = 1.0L + radius;
  std::vector<lcplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = std::polar(0.5L * radius, 2.0L * 3.14159265358979323846L * k / n + 0.4L);
  }
  for (int it = 0; it < 2000; ++it) {
    long double moved = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
      lcplx d;
      const lcplx p = eval(z[k], d);
      const lcplx ratio = p / d;
      lcplx s = 0.0L;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) s += 1.0L / (z[k] - z[j]);
      }
      const lcplx step = ratio / (1.0L - ratio * s);
      z[k] -= step;
      moved = std::max(moved, std::abs(step) / (1.0L + std::abs(z[k])));
    }
    if (moved < 1e-17L) break;
  }
  for (auto& r : z) {
    for (int it = 0; it < 5; ++it) {
      lcplx d;
      const lcplx p = eval(r, d);
      if (std::abs(d) == 0.0L) break;
      r -= p / d;
    }
  }
  return z;
}

/// det(A) by LU with partial pivoting, long double.
inline lcplx determinant(const csm::ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<lcplx> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = lcplx(a(i, j));
  }
  lcplx det = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m[i * n + k]) > std::abs(m[p * n + k])) p = i;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
      det = -det;
    }
    det *= m[k * n + k];
    if (std::abs(m[k * n + k]) == 0.0L) return 0.0L;
    for (std::size_t i = k + 1; i < n; ++i) {
      const lcplx f = m[i * n + k] / m[k * n + k];
      for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
    }
  }
  return det;
}

/// Largest distance from each of `got` to a distinct partner in `want`
/// (greedy nearest matching).
template <class A, class B>
double multiset_distance(std::vector<A> got, std::vector<B> want) {
  double worst = 0.0;
  for (const auto& g : got) {
    std::size_t best = 0;
    double bd = INFINITY;
    for (std::size_t j = 0; j < want.size(); ++j) {
      const double d = static_cast<double>(std::abs(std::complex<long double>(g) - std::complex<long double>(want[j])));
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    worst = std::max(worst, bd);
    want.erase(want.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

inline csm::ComplexMatrix random_complex_symmetric(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  csm::ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      a(i, j) = {u(rng), u(rng)};
      a(j, i) = a(i, j);
    }
  }
  return a;
}

inline csm::ComplexMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  csm::ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = {u(rng), u(rng)};
  }
  return a;
}

inline csm::ComplexMatrix multiply(const csm::ComplexMatrix& a, const csm::ComplexMatrix& b) {
  csm::ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

/// Inverse by Gauss-Jordan with partial pivoting.
inline csm::ComplexMatrix inverse(csm::ComplexMatrix a) {
  const std::size_t n = a.rows();
  csm::ComplexMatrix inv = csm::ComplexMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(k, j), a(p, j));
      std::swap(inv(k, j), inv(p, j));
    }
    const auto d = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const auto f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace oracle
