#include "csm/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "csm/error.hpp"

namespace csm {

namespace {

template <class R>
using C = std::complex<R>;

// Plain complex product; std::complex<long double> * otherwise goes through
// the Annex G NaN-recovery libcall in the innermost loops.
template <class R>
inline C<R> mul(const C<R>& a, const C<R>& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

template <class R>
inline R abs1(const C<R>& a) {
  return std::abs(a.real()) + std::abs(a.imag());
}

template <class R>
inline R modulus(const C<R>& a) {
  return std::hypot(a.real(), a.imag());
}

template <class R>
struct Givens {
  R c = 1;
  C<R> s{0, 0};

  /// Rotation with G [a; b] = [r; 0] for G = [[c, s], [-conj(s), c]].
  static Givens make(const C<R>& a, const C<R>& b) {
    Givens g;
    const R nb = modulus(b);
    if (nb == 0) return g;
    const R na = modulus(a);
    if (na == 0) {
      g.c = 0;
      g.s = std::conj(b) / nb;
      return g;
    }
    const R norm = std::hypot(na, nb);
    g.c = na / norm;
    g.s = mul(a, std::conj(b)) / (na * norm);
    return g;
  }
};

template <class R>
class SchurSolver {
 public:
  SchurSolver(const ComplexMatrix& h, bool vectors)
      : n_(h.rows()), vectors_(vectors), a_(n_, n_), scale_(n_, R(1)) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a_(i, j) = C<R>(h(i, j).real(), h(i, j).imag());
    if (vectors_) z_ = Matrix<C<R>>::identity(n_);
  }

  void run() {
    balance();
    hessenberg();
    qr();
  }

  [[nodiscard]] std::vector<cplx> eigenvalues() const {
    std::vector<cplx> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      out[i] = cplx(static_cast<double>(a_(i, i).real()), static_cast<double>(a_(i, i).imag()));
    return out;
  }

  /// Right eigenvectors of the original matrix, columns in Schur order.
  [[nodiscard]] Matrix<C<R>> eigenvectors() const {
    const R small = std::numeric_limits<R>::epsilon() * std::max(norm1(), R(1e-300L));
    Matrix<C<R>> out(n_, n_);
    std::vector<C<R>> y(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      std::fill(y.begin(), y.end(), C<R>(0, 0));
      y[k] = C<R>(1, 0);
      const C<R> lambda = a_(k, k);
      for (std::size_t jj = k; jj-- > 0;) {
        C<R> sum(0, 0);
        for (std::size_t m = jj + 1; m <= k; ++m) sum += mul(a_(jj, m), y[m]);
        C<R> denom = a_(jj, jj) - lambda;
        if (abs1(denom) < small) denom = C<R>(small, 0);
        y[jj] = -sum / denom;
        const R big = abs1(y[jj]);
        if (big > R(1e100)) {
          for (std::size_t m = jj; m <= k; ++m) y[m] /= big;
        }
      }
      for (std::size_t i = 0; i < n_; ++i) {
        C<R> v(0, 0);
        for (std::size_t m = 0; m <= k; ++m) v += mul(z_(i, m), y[m]);
        out(i, k) = v * scale_[i];
      }
    }
    return out;
  }

 private:
  R norm1() const {
    R s = 0;
    for (const auto& v : a_.data()) s += abs1(v);
    return s;
  }

  // Diagonal similarity D^-1 A D with power-of-two entries equalizing row and
  // column norms.
  void balance() {
    constexpr R radix = 2;
    constexpr R sqrdx = radix * radix;
    bool done = false;
    while (!done) {
      done = true;
      for (std::size_t i = 0; i < n_; ++i) {
        R c = 0;
        R r = 0;
        for (std::size_t j = 0; j < n_; ++j) {
          if (j == i) continue;
          c += abs1(a_(j, i));
          r += abs1(a_(i, j));
        }
        if (c == 0 || r == 0) continue;
        R g = r / radix;
        R f = 1;
        const R s = c + r;
        while (c < g) {
          f *= radix;
          c *= sqrdx;
        }
        g = r * radix;
        while (c > g) {
          f /= radix;
          c /= sqrdx;
        }
        if ((c + r) / f < R(0.95) * s) {
          done = false;
          scale_[i] *= f;
          const R inv = 1 / f;
          for (std::size_t j = 0; j < n_; ++j) a_(i, j) *= inv;
          for (std::size_t j = 0; j < n_; ++j) a_(j, i) *= f;
        }
      }
    }
  }

  void hessenberg() {
    if (n_ < 3) return;
    std::vector<C<R>> v(n_);
    for (std::size_t k = 0; k + 2 < n_; ++k) {
      const std::size_t len = n_ - k - 1;
      R norm2 = 0;
      for (std::size_t i = 0; i < len; ++i) norm2 += std::norm(a_(k + 1 + i, k));
      if (norm2 == 0) continue;
      const R norm = std::sqrt(norm2);
      const C<R> x0 = a_(k + 1, k);
      const R m0 = modulus(x0);
      const C<R> phase = m0 == 0 ? C<R>(1, 0) : x0 / m0;
      const C<R> alpha = -phase * norm;
      for (std::size_t i = 0; i < len; ++i) v[i] = a_(k + 1 + i, k);
      v[0] -= alpha;
      R vv = 0;
      for (std::size_t i = 0; i < len; ++i) vv += std::norm(v[i]);
      if (vv == 0) continue;
      const R tau = 2 / vv;

      for (std::size_t j = k; j < n_; ++j) {
        C<R> d(0, 0);
        for (std::size_t i = 0; i < len; ++i) d += mul(std::conj(v[i]), a_(k + 1 + i, j));
        d *= tau;
        for (std::size_t i = 0; i < len; ++i) a_(k + 1 + i, j) -= mul(v[i], d);
      }
      apply_householder_right(a_, v, len, k + 1, tau);
      if (vectors_) apply_householder_right(z_, v, len, k + 1, tau);
      a_(k + 1, k) = alpha;
      for (std::size_t i = 1; i < len; ++i) a_(k + 1 + i, k) = C<R>(0, 0);
    }
  }

  void apply_householder_right(Matrix<C<R>>& m, const std::vector<C<R>>& v, std::size_t len,
                               std::size_t offset, R tau) const {
    for (std::size_t i = 0; i < n_; ++i) {
      C<R> d(0, 0);
      for (std::size_t j = 0; j < len; ++j) d += mul(m(i, offset + j), v[j]);
      d *= tau;
      for (std::size_t j = 0; j < len; ++j) m(i, offset + j) -= mul(d, std::conj(v[j]));
    }
  }

  bool negligible(std::size_t i) {
    const R sub = abs1(a_(i + 1, i));
    R ref = abs1(a_(i, i)) + abs1(a_(i + 1, i + 1));
    if (ref == 0) ref = norm_estimate_;
    if (sub <= std::numeric_limits<R>::epsilon() * ref) {
      a_(i + 1, i) = C<R>(0, 0);
      return true;
    }
    return false;
  }

  C<R> shift(std::size_t iu, int iter) const {
    if (iter == 10 || iter == 30) {
      R s = std::abs(a_(iu, iu - 1).real());
      if (iu >= 2) s += std::abs(a_(iu - 1, iu - 2).real());
      return C<R>(s, 0);
    }
    C<R> t00 = a_(iu - 1, iu - 1);
    C<R> t01 = a_(iu - 1, iu);
    C<R> t10 = a_(iu, iu - 1);
    C<R> t11 = a_(iu, iu);
    const R normt = abs1(t00) + abs1(t01) + abs1(t10) + abs1(t11);
    if (normt == 0) return C<R>(0, 0);
    t00 /= normt;
    t01 /= normt;
    t10 /= normt;
    t11 /= normt;
    const C<R> b = mul(t01, t10);
    const C<R> c = t00 - t11;
    const C<R> disc = std::sqrt(mul(c, c) + R(4) * b);
    const C<R> det = mul(t00, t11) - b;
    const C<R> trace = t00 + t11;
    C<R> ev1 = (trace + disc) / R(2);
    C<R> ev2 = (trace - disc) / R(2);
    const R n1 = abs1(ev1);
    const R n2 = abs1(ev2);
    if (n1 > n2 && n1 > 0) {
      ev2 = det / ev1;
    } else if (n2 > 0) {
      ev1 = det / ev2;
    }
    return normt * (abs1(ev1 - t11) < abs1(ev2 - t11) ? ev1 : ev2);
  }

  void rotate_left(const Givens<R>& g, std::size_t p, std::size_t j0, std::size_t j1) {
    for (std::size_t j = j0; j <= j1; ++j) {
      const C<R> x = a_(p, j);
      const C<R> y = a_(p + 1, j);
      a_(p, j) = g.c * x + mul(g.s, y);
      a_(p + 1, j) = g.c * y - mul(std::conj(g.s), x);
    }
  }

  static void rotate_right(Matrix<C<R>>& m, const Givens<R>& g, std::size_t p, std::size_t i0,
                           std::size_t i1) {
    for (std::size_t i = i0; i <= i1; ++i) {
      const C<R> x = m(i, p);
      const C<R> y = m(i, p + 1);
      m(i, p) = g.c * x + mul(std::conj(g.s), y);
      m(i, p + 1) = g.c * y - mul(g.s, x);
    }
  }

  void qr() {
    if (n_ < 2) return;
    norm_estimate_ = norm1() / static_cast<R>(n_);
    std::size_t iu = n_ - 1;
    int iter = 0;
    long total = 0;
    const long max_total = 60L * static_cast<long>(n_);
    while (true) {
      while (iu > 0 && negligible(iu - 1)) {
        iter = 0;
        --iu;
      }
      if (iu == 0) break;
      ++iter;
      ++total;
      if (iter > 100 || total > max_total) {
        throw NumericError("complex QR failed to converge at eigenvalue index " + std::to_string(iu));
      }
      std::size_t il = iu - 1;
      while (il > 0 && !negligible(il - 1)) --il;

      const std::size_t col_end = vectors_ ? n_ - 1 : iu;
      const std::size_t row_begin = vectors_ ? 0 : il;

      const C<R> mu = shift(iu, iter);
      Givens<R> g = Givens<R>::make(a_(il, il) - mu, a_(il + 1, il));
      rotate_left(g, il, il, col_end);
      rotate_right(a_, g, il, row_begin, std::min(il + 2, iu));
      if (vectors_) rotate_right(z_, g, il, 0, n_ - 1);

      for (std::size_t i = il + 1; i < iu; ++i) {
        g = Givens<R>::make(a_(i, i - 1), a_(i + 1, i - 1));
        rotate_left(g, i, i - 1, col_end);
        a_(i + 1, i - 1) = C<R>(0, 0);
        rotate_right(a_, g, i, row_begin, std::min(i + 2, iu));
        if (vectors_) rotate_right(z_, g, i, 0, n_ - 1);
      }
    }
  }

  std::size_t n_;
  bool vectors_;
  Matrix<C<R>> a_;
  Matrix<C<R>> z_;
  std::vector<R> scale_;
  R norm_estimate_ = 0;
};

template <class R>
EigenResult solve_with(const ComplexMatrix& h, bool want_vectors) {
  SchurSolver<R> solver(h, want_vectors);
  solver.run();
  EigenResult result;
  std::vector<cplx> values = solver.eigenvalues();
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a].real() != values[b].real()) return values[a].real() < values[b].real();
    return values[a].imag() < values[b].imag();
  });
  result.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) result.eigenvalues[k] = values[order[k]];

  if (want_vectors) {
    const Matrix<C<R>> raw = solver.eigenvectors();
    ComplexMatrix vecs(n, n);
    result.residuals.resize(n);
    std::vector<cplx> v(n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t src = order[k];
      C<R> vtv(0, 0);
      R vhv = 0;
      for (std::size_t i = 0; i < n; ++i) {
        vtv += mul(raw(i, src), raw(i, src));
        vhv += std::norm(raw(i, src));
      }
      C<R> factor;
      if (modulus(vtv) > R(1e-10) * vhv) {
        factor = R(1) / std::sqrt(vtv);
      } else {
        factor = C<R>(1 / std::sqrt(vhv), 0);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const C<R> x = mul(raw(i, src), factor);
        v[i] = cplx(static_cast<double>(x.real()), static_cast<double>(x.imag()));
        vecs(i, k) = v[i];
      }
      double rnorm = 0.0;
      double vnorm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cplx hv = 0.0;
        for (std::size_t j = 0; j < n; ++j) hv += h(i, j) * v[j];
        rnorm += std::norm(hv - result.eigenvalues[k] * v[i]);
        vnorm += std::norm(v[i]);
      }
      result.residuals[k] = std::sqrt(rnorm / vnorm);
    }
    result.eigenvectors = std::move(vecs);
  }
  return result;
}

}  // namespace

double frobenius_norm(const ComplexMatrix& h) {
  double s = 0.0;
  for (const auto& v : h.data()) s += std::norm(v);
  return std::sqrt(s);
}

EigenResult eig_dense(const ComplexMatrix& h, bool want_vectors, Precision precision) {
  if (h.rows() == 0 || h.rows() != h.cols()) throw ArgumentError("eig_dense: matrix must be square and nonempty");
  for (const auto& v : h.data()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ArgumentError("eig_dense: matrix has non-finite entries");
    }
  }
  return precision == Precision::Extended ? solve_with<long double>(h, want_vectors)
                                          : solve_with<double>(h, want_vectors);
}

}  // namespace csm
