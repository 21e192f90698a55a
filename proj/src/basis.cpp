#include "csm/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "csm/error.hpp"

namespace csm {

int radial_count(int N_max, int l) {
  if (l < 0) throw ArgumentError("orbital momentum must be >= 0");
  if (N_max < l) return 0;
  return (N_max - l) / 2 + 1;
}

double default_b0(const ModelParams& params) {
  double b = 0.18 / params.alpha;
  const double r = std::abs(params.r0);
  if (r > 0.0) b = std::clamp(b, 0.1 * r, 0.5 * r);
  return std::max(b, 0.05);
}

int default_quad_order(const ModelParams& params, int N_max) {
  const int n = std::max(radial_count(N_max, params.l()), radial_count(N_max, params.l_tilde()));
  return 2 * n + 40;
}

BasisSpec resolve(const BasisSpec& spec, const ModelParams& params) {
  params.validate();
  BasisSpec out = spec;
  if (out.N_max < 0 || out.N_max % 2 != 0) throw ArgumentError("N_max must be a nonnegative even integer");
  if (radial_count(out.N_max, params.l()) < 1 || radial_count(out.N_max, params.l_tilde()) < 1) {
    throw ArgumentError("N_max too small for kappa = " + std::to_string(params.kappa));
  }
  if (!(out.theta >= 0.0 && out.theta < std::numbers::pi / 2)) {
    throw ArgumentError("theta must lie in [0, pi/2)");
  }
  if (out.b0 <= 0.0) out.b0 = default_b0(params);
  if (!std::isfinite(out.b0)) throw ArgumentError("b0 must be finite");
  const int needed = default_quad_order(params, out.N_max);
  if (out.quad_order <= 0) out.quad_order = needed;
  const int n_big = std::max(radial_count(out.N_max, params.l()), radial_count(out.N_max, params.l_tilde()));
  if (out.quad_order < 2 * n_big) {
    throw ArgumentError("quad_order must be at least 2 n_max = " + std::to_string(2 * n_big));
  }
  return out;
}

void scaled_laguerre(double x, double alpha, double log_prefactor, std::span<double> out) {
  if (out.empty()) return;
  constexpr double kBig = 1e150;
  // Accumulated log of the rescaling applied so far.
  double log_scale = log_prefactor - 0.5 * std::lgamma(alpha + 1.0);
  double prev = 0.0;
  double cur = 1.0;
  const auto emit = [&](std::size_t k, double v) { out[k] = v == 0.0 ? 0.0 : v * std::exp(log_scale); };
  emit(0, cur);
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    const double kd = static_cast<double>(k);
    const double next =
        ((2.0 * kd + 1.0 + alpha - x) * cur - std::sqrt(kd * (kd + alpha)) * prev) /
        std::sqrt((kd + 1.0) * (kd + 1.0 + alpha));
    prev = cur;
    cur = next;
    const double mag = std::max(std::abs(cur), std::abs(prev));
    if (mag > kBig) {
      prev /= mag;
      cur /= mag;
      log_scale += std::log(mag);
    }
    emit(k + 1, cur);
  }
}

namespace {

void check_radial_args(int n, int l, double b0, double r) {
  if (n < 1) throw ArgumentError("radial quantum number n must be >= 1");
  if (l < 0) throw ArgumentError("orbital momentum must be >= 0");
  if (!(b0 > 0.0)) throw ArgumentError("oscillator length must be > 0");
  if (!(r >= 0.0)) throw ArgumentError("radius must be >= 0");
}

// p_{n-1}^{(l+1/2)}(t^2) t^l e^{-t^2/2} sqrt(2) b0^{-3/2}, and the same for n-2.
std::pair<double, double> radial_pair(int n, int l, double b0, double r) {
  const double t = r / b0;
  const double x = t * t;
  if (t == 0.0 && l > 0) return {0.0, 0.0};
  const double log_pre = 0.5 * std::log(2.0) - 1.5 * std::log(b0) - 0.5 * x + (l > 0 ? l * std::log(t) : 0.0);
  std::vector<double> p(static_cast<std::size_t>(n));
  scaled_laguerre(x, l + 0.5, log_pre, p);
  return {p[static_cast<std::size_t>(n - 1)], n >= 2 ? p[static_cast<std::size_t>(n - 2)] : 0.0};
}

}  // namespace

double ho_radial(int n, int l, double b0, double r) {
  check_radial_args(n, l, b0, r);
  return radial_pair(n, l, b0, r).first;
}

double ho_radial_derivative(int n, int l, double b0, double r) {
  check_radial_args(n, l, b0, r);
  // With x = t^2 and k = n-1, x dL_k/dx = k L_k - (k + alpha) L_{k-1}, which
  // for the orthonormal family reads x dp_k/dx = k p_k - sqrt(k (k+alpha)) p_{k-1}.
  // R = C t^l e^{-x/2} p_k(x)  =>  dR/dr = (1/b0) [ (l/t - t) R + 2 t C t^l e^{-x/2} dp_k/dx ].
  const double t = r / b0;
  const int k = n - 1;
  const double alpha = l + 0.5;
  if (t == 0.0) {
    if (l != 1) return 0.0;
    // R ~ sqrt(2) b0^{-3/2} t p_k(0), so dR/dr = sqrt(2) b0^{-5/2} p_k(0).
    std::vector<double> p(static_cast<std::size_t>(n));
    scaled_laguerre(0.0, alpha, 0.5 * std::log(2.0) - 2.5 * std::log(b0), p);
    return p[static_cast<std::size_t>(k)];
  }
  const auto [rk, rkm1] = radial_pair(n, l, b0, r);
  const double x_dp = k * rk - std::sqrt(k * (k + alpha)) * rkm1;  // x dp/dx, scaled like R
  return ((l / t - t) * rk + 2.0 * x_dp / t) / b0;
}

}  // namespace csm
