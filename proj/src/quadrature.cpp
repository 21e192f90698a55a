#include "csm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "csm/error.hpp"

namespace csm {

namespace {

constexpr double kRescaleAbove = 1e150;

/// log(sum_{j<count} p_j(x)^2) for the orthonormal family of `rec`.
double log_christoffel_sum(const Recurrence& rec, int count, double x) {
  double log_scale = 0.0;
  double prev = 0.0;
  double cur = 1.0 / std::sqrt(rec.b[0]);
  double sum = cur * cur;
  for (int k = 0; k + 1 < count; ++k) {
    const double next =
        ((x - rec.a[k]) * cur - (k > 0 ? std::sqrt(rec.b[k]) * prev : 0.0)) / std::sqrt(rec.b[k + 1]);
    prev = cur;
    cur = next;
    sum += cur * cur;
    if (std::abs(cur) > kRescaleAbove) {
      const double s = 1.0 / kRescaleAbove;
      prev *= s;
      cur *= s;
      sum *= s * s;
      log_scale += 2.0 * std::log(kRescaleAbove);
    }
  }
  return std::log(sum) + log_scale;
}

/// Ratio p_n(x) / p_n'(x) for the orthonormal family, computed with rescaling.
double newton_ratio(const Recurrence& rec, int n, double x) {
  double p_prev = 0.0;
  double p = 1.0;
  double d_prev = 0.0;
  double d = 0.0;
  for (int k = 0; k < n; ++k) {
    const double sb_next = std::sqrt(rec.b[k + 1]);
    const double sb = k > 0 ? std::sqrt(rec.b[k]) : 0.0;
    const double p_next = ((x - rec.a[k]) * p - sb * p_prev) / sb_next;
    const double d_next = ((x - rec.a[k]) * d + p - sb * d_prev) / sb_next;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
    const double big = std::max(std::abs(p), std::abs(d));
    if (big > kRescaleAbove) {
      const double s = 1.0 / big;
      p *= s;
      p_prev *= s;
      d *= s;
      d_prev *= s;
    }
  }
  return p / d;
}

}  // namespace

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw ArgumentError("Gauss-Legendre order must be >= 1");
  nodes.assign(static_cast<std::size_t>(order), 0.0);
  weights.assign(static_cast<std::size_t>(order), 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(order - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(order - 1 - i)] = w;
  }
}

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> offdiag) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) return {};
  if (static_cast<int>(offdiag.size()) != n - 1) {
    throw ArgumentError("tridiagonal_eigenvalues: offdiag must have size n-1");
  }
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) {
          throw NumericError("tridiagonal QL did not converge for eigenvalue " + std::to_string(l));
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        bool underflow = false;
        for (; i >= l; --i) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

QuadratureRule gauss_from_recurrence(const Recurrence& rec, int order) {
  if (order < 1) throw ArgumentError("quadrature order must be >= 1");
  if (static_cast<int>(rec.a.size()) < order || static_cast<int>(rec.b.size()) < order + 1) {
    throw ArgumentError("recurrence too short for requested quadrature order");
  }
  std::vector<double> diag(rec.a.begin(), rec.a.begin() + order);
  std::vector<double> off(static_cast<std::size_t>(order - 1));
  for (int k = 1; k < order; ++k) off[static_cast<std::size_t>(k - 1)] = std::sqrt(rec.b[k]);
  std::vector<double> x = tridiagonal_eigenvalues(diag, off);

  for (int k = 0; k < order; ++k) {
    const double lo = k > 0 ? x[k - 1] : -std::numeric_limits<double>::infinity();
    const double hi = k + 1 < order ? x[k + 1] : std::numeric_limits<double>::infinity();
    double xk = x[k];
    for (int iter = 0; iter < 4; ++iter) {
      const double dx = newton_ratio(rec, order, xk);
      if (!std::isfinite(dx)) break;
      xk -= dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(xk)) break;
    }
    if (!(xk > lo && xk < hi)) {
      throw NumericError("Gauss node polishing left its bracket at node index " + std::to_string(k));
    }
    x[k] = xk;
  }

  QuadratureRule rule;
  rule.nodes = std::move(x);
  rule.weights.resize(rule.nodes.size());
  rule.log_weights.resize(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    rule.log_weights[k] = -log_christoffel_sum(rec, order, rule.nodes[k]);
    rule.weights[k] = std::exp(rule.log_weights[k]);
  }
  return rule;
}

QuadratureRule gauss_laguerre(int order, double exponent) {
  if (order < 1) throw ArgumentError("Gauss-Laguerre order must be >= 1");
  if (!(exponent > -1.0)) throw ArgumentError("Gauss-Laguerre exponent must be > -1");
  Recurrence rec;
  rec.a.resize(static_cast<std::size_t>(order) + 1);
  rec.b.resize(static_cast<std::size_t>(order) + 1);
  rec.b[0] = std::tgamma(exponent + 1.0);
  if (!std::isfinite(rec.b[0])) rec.b[0] = std::exp(std::lgamma(exponent + 1.0));
  for (int k = 0; k <= order; ++k) {
    rec.a[k] = 2.0 * k + 1.0 + exponent;
    if (k > 0) rec.b[k] = k * (k + exponent);
  }
  QuadratureRule rule = gauss_from_recurrence(rec, order);
  rule.exponent = exponent;
  return rule;
}

Recurrence radial_recurrence(int count, int power) {
  if (count < 1) throw ArgumentError("radial_recurrence: count must be >= 1");
  if (power < 0) throw ArgumentError("radial_recurrence: power must be >= 0");

  // Discretize t^power e^-t^2 dt with composite Gauss-Legendre panels far
  // enough out that every polynomial of degree 2*count is resolved.
  constexpr int kPanelNodes = 24;
  const double turning = std::sqrt(2.0 * count + power + 2.0);
  const double t_max = turning + 10.0;
  // About one oscillation of the degree-2*count integrand per panel.
  const double width = std::min(0.25, 3.0 / turning);
  const int panels = static_cast<int>(std::ceil(t_max / width));
  std::vector<double> gl_x;
  std::vector<double> gl_w;
  gauss_legendre(kPanelNodes, gl_x, gl_w);

  const std::size_t n = static_cast<std::size_t>(panels) * kPanelNodes;
  // e^-t^2 underflows double well inside the node range of high-order rules.
  std::vector<long double> s(n);
  std::vector<long double> root_w(n);
  for (int pnl = 0; pnl < panels; ++pnl) {
    const double left = pnl * width;
    for (int j = 0; j < kPanelNodes; ++j) {
      const std::size_t i = static_cast<std::size_t>(pnl) * kPanelNodes + static_cast<std::size_t>(j);
      s[i] = left + 0.5 * width * (gl_x[j] + 1.0);
      const long double log_w = std::log(0.5L * width * gl_w[j]) + power * std::log(s[i]) - s[i] * s[i];
      root_w[i] = std::exp(0.5 * log_w);
    }
  }

  Recurrence rec;
  rec.a.resize(static_cast<std::size_t>(count));
  rec.b.resize(static_cast<std::size_t>(count));
  rec.b[0] = 0.5 * std::tgamma(0.5 * (power + 1));

  // Lanczos with full reorthogonalization on diag(s) started from sqrt(w).
  std::vector<std::vector<long double>> basis;
  basis.reserve(static_cast<std::size_t>(count));
  std::vector<long double> v = root_w;
  long double norm = 0.0L;
  for (long double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (long double& x : v) x /= norm;

  long double b_prev = 0.0L;
  for (int k = 0; k < count; ++k) {
    long double a = 0.0L;
    for (std::size_t i = 0; i < n; ++i) a += s[i] * v[i] * v[i];
    rec.a[k] = static_cast<double>(a);
    basis.push_back(v);
    if (k + 1 == count) break;
    std::vector<long double> u(n);
    const long double sb = k > 0 ? std::sqrt(b_prev) : 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = (s[i] - a) * v[i] - (k > 0 ? sb * basis[k - 1][i] : 0.0);
    }
    for (const auto& q : basis) {
      long double dot = 0.0L;
      for (std::size_t i = 0; i < n; ++i) dot += q[i] * u[i];
      for (std::size_t i = 0; i < n; ++i) u[i] -= dot * q[i];
    }
    long double bn = 0.0L;
    for (long double x : u) bn += x * x;
    if (!(bn > 0.0L)) throw NumericError("radial recurrence broke down at step " + std::to_string(k));
    rec.b[k + 1] = static_cast<double>(bn);
    b_prev = bn;
    const long double inv = 1.0L / std::sqrt(bn);
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i] * inv;
  }
  return rec;
}

const QuadratureRule& gauss_radial(int order, int power) {
  if (order < 1) throw ArgumentError("radial quadrature order must be >= 1");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<QuadratureRule>> cache;
  const auto key = std::make_pair(order, power);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto rule = std::make_unique<QuadratureRule>(gauss_from_recurrence(radial_recurrence(order + 1, power), order));
  rule->exponent = power;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(rule));
  return *it->second;
}

}  // namespace csm
