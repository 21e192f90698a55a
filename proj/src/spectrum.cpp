#include "csm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "csm/error.hpp"
#include "csm/hamiltonian.hpp"
#include "csm/parallel.hpp"

namespace csm {

std::string_view to_string(StateClass c) {
  switch (c) {
    case StateClass::Bound: return "bound";
    case StateClass::Resonance: return "resonance";
    case StateClass::Continuum: return "continuum";
    case StateClass::NegativeEnergy: return "negative";
  }
  return "?";
}

StateClass parse_state_class(std::string_view s) {
  for (StateClass c : {StateClass::Bound, StateClass::Resonance, StateClass::Continuum, StateClass::NegativeEnergy}) {
    if (to_string(c) == s) return c;
  }
  throw ArgumentError("unknown state class '" + std::string(s) + "'");
}

std::vector<ResonanceState> Spectrum::physical_states() const {
  std::vector<ResonanceState> bound;
  std::vector<ResonanceState> res;
  for (const auto& p : states) {
    if (p.cls != StateClass::Bound && p.cls != StateClass::Resonance) continue;
    ResonanceState s;
    s.E_r = p.energy.real();
    s.Gamma = std::max(0.0, -2.0 * p.energy.imag());
    s.kappa = params.kappa;
    s.bound = p.cls == StateClass::Bound;
    (s.bound ? bound : res).push_back(s);
  }
  std::stable_sort(bound.begin(), bound.end(), [](const auto& a, const auto& b) { return a.E_r < b.E_r; });
  std::stable_sort(res.begin(), res.end(), [](const auto& a, const auto& b) {
    if (a.Gamma != b.Gamma) return a.Gamma < b.Gamma;
    return a.E_r < b.E_r;
  });
  bound.insert(bound.end(), res.begin(), res.end());
  for (std::size_t i = 0; i < bound.size(); ++i) {
    bound[i].index = static_cast<int>(i) + 1;
    bound[i].label = spectroscopic_label(bound[i].index, params.kappa);
  }
  return bound;
}

std::size_t Spectrum::count(StateClass c) const {
  return static_cast<std::size_t>(std::count_if(states.begin(), states.end(), [c](const auto& p) { return p.cls == c; }));
}

Precision auto_precision(const ModelParams& params) {
  return params.c_factor > 1.0 ? Precision::Extended : Precision::Double;
}

namespace {

using lcplx = std::complex<long double>;

// Dense LU with partial pivoting, kept in long double for the folded solves.
struct LongLU {
  std::size_t n = 0;
  std::vector<lcplx> m;
  std::vector<std::size_t> piv;

  LongLU(const ComplexMatrix& lower, lcplx shift) : n(lower.rows()), m(n * n), piv(n) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] = -lcplx(lower(i, j));
      m[i * n + i] += shift;
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (std::abs(m[i * n + k]) > std::abs(m[p * n + k])) p = i;
      }
      piv[k] = p;
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
      }
      const lcplx d = m[k * n + k];
      for (std::size_t i = k + 1; i < n; ++i) {
        const lcplx f = m[i * n + k] / d;
        m[i * n + k] = f;
        for (std::size_t j = k + 1; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
      }
    }
  }

  void solve(std::vector<lcplx>& x) const {
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(x[k], x[piv[k]]);
      for (std::size_t i = k + 1; i < n; ++i) x[i] -= m[i * n + k] * x[k];
    }
    for (std::size_t k = n; k-- > 0;) {
      for (std::size_t j = k + 1; j < n; ++j) x[k] -= m[k * n + j] * x[j];
      x[k] /= m[k * n + k];
    }
  }
};

// Upper branch from the folded operator S(lambda) = A + c^2 B^T (lambda + 2Mc^2 - L)^-1 B
// on relative energies. S carries none of the 2Mc^2 scale that limits the full
// QR once c is scaled up. Each eigenpair of S(0) seeds a Newton solve of
// z^T (S(lambda) - lambda) z = 0 with exact resolvents.
struct FoldedBranch {
  std::vector<cplx> values;
  std::vector<std::vector<lcplx>> upper;
  std::vector<std::vector<lcplx>> lower;
};

FoldedBranch fold_upper_branch(const ModelParams& params, const BasisSpec& spec, Precision precision,
                               bool want_vectors) {
  const auto nb = static_cast<std::size_t>(radial_count(spec.N_max, params.l()));
  const auto ns = static_cast<std::size_t>(radial_count(spec.N_max, params.l_tilde()));
  const ComplexMatrix a = potential_block(params, spec, params.l(), static_cast<int>(nb));
  const ComplexMatrix lower = potential_block(params, spec, params.l_tilde(), static_cast<int>(ns));
  const ComplexMatrix b = kinetic_block(params, spec);
  const long double c = params.speed_of_light();
  const long double two_mc2 = 2.0L * static_cast<long double>(params.rest_energy());
  const long double eps = std::numeric_limits<long double>::epsilon();

  auto apply_b = [&](const std::vector<lcplx>& z) {
    std::vector<lcplx> y(ns);
    for (std::size_t i = 0; i < ns; ++i) {
      lcplx s = 0.0L;
      for (std::size_t j = 0; j < nb; ++j) s += lcplx(b(i, j)) * z[j];
      y[i] = c * s;
    }
    return y;
  };

  ComplexMatrix s0(nb, nb);
  {
    const LongLU lu(lower, lcplx(two_mc2));
    std::vector<std::vector<lcplx>> cols(nb);
    for (std::size_t j = 0; j < nb; ++j) {
      std::vector<lcplx> e(nb, 0.0L);
      e[j] = 1.0L;
      cols[j] = apply_b(e);
      std::vector<lcplx> r = cols[j];
      lu.solve(r);
      for (std::size_t i = 0; i <= j; ++i) {
        lcplx t = 0.0L;
        for (std::size_t k = 0; k < ns; ++k) t += cols[i][k] * r[k];
        const cplx v = cplx(a(i, j)) + cplx(static_cast<double>(t.real()), static_cast<double>(t.imag()));
        s0(i, j) = v;
        s0(j, i) = v;
      }
    }
  }
  const EigenResult seed = eig_dense(s0, true, precision);
  const ComplexMatrix& zv = *seed.eigenvectors;

  FoldedBranch out;
  out.values.resize(nb);
  if (want_vectors) {
    out.upper.resize(nb);
    out.lower.resize(nb);
  }
  for (std::size_t k = 0; k < nb; ++k) {
    std::vector<lcplx> z(nb);
    for (std::size_t i = 0; i < nb; ++i) z[i] = lcplx(zv(i, k));
    lcplx zaz = 0.0L;
    lcplx zz = 0.0L;
    for (std::size_t i = 0; i < nb; ++i) {
      lcplx row = 0.0L;
      for (std::size_t j = 0; j < nb; ++j) row += lcplx(a(i, j)) * z[j];
      zaz += z[i] * row;
      zz += z[i] * z[i];
    }
    const std::vector<lcplx> y = apply_b(z);
    lcplx x(seed.eigenvalues[k]);
    std::vector<lcplx> r;
    for (int iter = 0; iter < 20; ++iter) {
      const LongLU lu(lower, x + two_mc2);
      r = y;
      lu.solve(r);
      std::vector<lcplx> r2 = r;
      lu.solve(r2);
      lcplx g = zaz - x * zz;
      lcplx dg = -zz;
      for (std::size_t i = 0; i < ns; ++i) {
        g += y[i] * r[i];
        dg -= y[i] * r2[i];
      }
      const lcplx step = g / dg;
      x -= step;
      if (std::abs(step) <= 8.0L * eps * std::max(1.0L, std::abs(x))) break;
    }
    out.values[k] = cplx(static_cast<double>(x.real()), static_cast<double>(x.imag()));
    if (want_vectors) {
      const LongLU lu(lower, x + two_mc2);
      r = y;
      lu.solve(r);
      out.upper[k] = std::move(z);
      out.lower[k] = std::move(r);
    }
  }
  return out;
}

}  // namespace

Spectrum diagonalize(const ModelParams& params, const BasisSpec& spec, Precision precision, bool want_vectors) {
  Spectrum out;
  out.params = params;
  out.spec = resolve(spec, params);
  out.theta_used = out.spec.theta;
  const ComplexMatrix h = assemble_relative(params, out.spec);
  EigenResult eig;
  if (params.c_factor > 1.0) {
    // The QR keeps the negative-energy branch, the fold supplies the rest.
    const EigenResult full = eig_dense(h, false, precision);
    const FoldedBranch fold = fold_upper_branch(params, out.spec, precision, want_vectors);
    const std::size_t nb = fold.values.size();
    const std::size_t n = h.rows();
    struct Entry {
      cplx value;
      std::ptrdiff_t folded;
    };
    std::vector<Entry> entries;
    for (const cplx& e : full.eigenvalues) {
      if (e.real() + params.rest_energy() <= 0.0) entries.push_back({e, -1});
    }
    for (std::size_t k = 0; k < nb; ++k) entries.push_back({fold.values[k], static_cast<std::ptrdiff_t>(k)});
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
      return x.value.real() != y.value.real() ? x.value.real() < y.value.real() : x.value.imag() < y.value.imag();
    });
    for (const auto& e : entries) eig.eigenvalues.push_back(e.value);
    if (want_vectors) {
      const EigenResult withv = eig_dense(h, true, precision);
      ComplexMatrix v(n, entries.size());
      for (std::size_t col = 0; col < entries.size(); ++col) {
        const Entry& e = entries[col];
        std::vector<cplx> x(n);
        if (e.folded < 0) {
          std::size_t best = 0;
          for (std::size_t k = 1; k < withv.eigenvalues.size(); ++k) {
            if (std::abs(withv.eigenvalues[k] - e.value) < std::abs(withv.eigenvalues[best] - e.value)) best = k;
          }
          for (std::size_t i = 0; i < n; ++i) x[i] = (*withv.eigenvectors)(i, best);
        } else {
          const auto& up = fold.upper[static_cast<std::size_t>(e.folded)];
          const auto& lo = fold.lower[static_cast<std::size_t>(e.folded)];
          std::complex<long double> norm = 0.0L;
          for (const auto& t : up) norm += t * t;
          for (const auto& t : lo) norm += t * t;
          const std::complex<long double> scale = 1.0L / std::sqrt(norm);
          for (std::size_t i = 0; i < nb; ++i) x[i] = cplx(up[i] * scale);
          for (std::size_t i = 0; i < lo.size(); ++i) x[nb + i] = cplx(lo[i] * scale);
        }
        double rnorm = 0.0;
        double vnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          cplx s = -e.value * x[i];
          for (std::size_t j = 0; j < n; ++j) s += h(i, j) * x[j];
          rnorm += std::norm(s);
          vnorm += std::norm(x[i]);
          v(i, col) = x[i];
        }
        eig.residuals.push_back(std::sqrt(rnorm / vnorm));
      }
      eig.eigenvectors = std::move(v);
    }
  } else {
    eig = eig_dense(h, want_vectors, precision);
  }
  out.states.reserve(eig.eigenvalues.size());
  const double mc2 = params.rest_energy();
  for (const cplx& e : eig.eigenvalues) {
    SpectralPoint p;
    p.eigenvalue = e + mc2;
    p.energy = params.energy_scale() * e;
    p.cls = p.eigenvalue.real() < 0.0 ? StateClass::NegativeEnergy : StateClass::Continuum;
    out.states.push_back(p);
  }
  out.eigenvectors = std::move(eig.eigenvectors);
  out.residuals = std::move(eig.residuals);
  return out;
}

Spectrum classify(const Spectrum& primary, std::span<const Spectrum> companions, const Thresholds& thresholds) {
  for (const auto& c : companions) {
    if (!(c.params == primary.params)) throw ArgumentError("classify: companion spectra must share model parameters");
    if (c.spec.N_max != primary.spec.N_max || c.spec.b0 != primary.spec.b0) {
      throw ArgumentError("classify: companion spectra must share the basis");
    }
    if (c.theta_used == primary.theta_used) throw ArgumentError("classify: companion angles must differ from the primary");
  }
  Spectrum out = primary;
  for (auto& p : out.states) {
    if (p.eigenvalue.real() < 0.0) {
      p.cls = StateClass::NegativeEnergy;
      continue;
    }
    p.cls = StateClass::Continuum;
    p.displacement = -1.0;
    if (companions.empty()) continue;

    double worst = 0.0;
    bool resolvable = true;
    for (const auto& c : companions) {
      // A continuum point of modulus |E| moves by this chord under the extra rotation.
      const double chord = 2.0 * std::abs(p.energy) * std::abs(std::sin(c.theta_used - primary.theta_used));
      if (chord <= thresholds.stab_tol) resolvable = false;
      double best = std::numeric_limits<double>::infinity();
      double second = std::numeric_limits<double>::infinity();
      cplx best_e;
      cplx second_e;
      for (const auto& q : c.states) {
        if (q.eigenvalue.real() < 0.0) continue;
        const double d = std::abs(q.energy - p.energy);
        if (d < best) {
          second = best;
          second_e = best_e;
          best = d;
          best_e = q.energy;
        } else if (d < second) {
          second = d;
          second_e = q.energy;
        }
      }
      if (best <= thresholds.stab_tol && second <= thresholds.stab_tol) {
        std::ostringstream msg;
        msg << "ambiguous theta match for " << p.energy << ": " << best_e << " and " << second_e
            << " both within " << thresholds.stab_tol << " at theta = " << c.theta_used;
        throw ClassificationError(msg.str());
      }
      worst = std::max(worst, best);
    }
    p.displacement = worst;
    if (worst > thresholds.stab_tol || !resolvable) continue;
    const double er = p.energy.real();
    const double ei = p.energy.imag();
    if (er < 0.0 && std::abs(ei) < thresholds.bound_tol) {
      p.cls = StateClass::Bound;
    } else if (ei <= thresholds.bound_tol) {
      p.cls = StateClass::Resonance;
    }
  }
  return out;
}

Spectrum solve(const ModelParams& params, const BasisSpec& spec, const SolveOptions& options) {
  const BasisSpec resolved = resolve(spec, params);
  const Precision precision = options.precision.value_or(auto_precision(params));
  std::vector<BasisSpec> specs{resolved};
  for (double off : options.companion_offsets) {
    BasisSpec s = resolved;
    s.theta = resolved.theta + off;
    specs.push_back(resolve(s, params));
  }
  std::vector<Spectrum> all(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    all[i] = diagonalize(params, specs[i], precision, i == 0 && options.want_vectors);
  });
  return classify(all[0], std::span<const Spectrum>(all).subspan(1), options.thresholds);
}

Spectrum nonrel_limit(const ModelParams& params, const BasisSpec& spec, const SolveOptions& options, double factor) {
  if (!(factor > 1.0)) throw ArgumentError("nonrel_limit: factor must exceed 1");
  ModelParams scaled = params;
  scaled.c_factor = factor;
  return solve(scaled, spec, options);
}

double continuum_mean_argument(const Spectrum& s, double min_modulus) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : s.states) {
    if (p.cls != StateClass::Continuum || std::abs(p.energy) <= min_modulus) continue;
    sum += std::arg(p.energy);
    ++n;
  }
  if (n == 0) throw NumericError("no continuum points above the modulus cutoff");
  return sum / static_cast<double>(n);
}

double continuum_direction(const Spectrum& s, double min_modulus) {
  std::vector<double> args;
  for (const auto& p : s.states) {
    if (p.cls == StateClass::Continuum && std::abs(p.energy) > min_modulus) args.push_back(std::arg(p.energy));
  }
  if (args.empty()) throw NumericError("no continuum points above the modulus cutoff");
  std::sort(args.begin(), args.end());
  const std::size_t m = args.size() / 2;
  return args.size() % 2 ? args[m] : 0.5 * (args[m - 1] + args[m]);
}

namespace {

double nearest_distance(cplx e, const Spectrum& other) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : other.states) {
    if (p.cls != StateClass::NegativeEnergy) best = std::min(best, std::abs(p.energy - e));
  }
  return best;
}

}  // namespace

std::vector<PlateauPoint> b0_plateau_scan(const ModelParams& params, const BasisSpec& spec,
                                          std::span<const double> b0_grid, const SolveOptions& options) {
  if (b0_grid.size() < 2) throw ArgumentError("b0 plateau scan needs at least two grid values");
  std::vector<Spectrum> spectra;
  spectra.reserve(b0_grid.size());
  for (double b0 : b0_grid) {
    BasisSpec s = spec;
    s.b0 = b0;
    spectra.push_back(solve(params, s, options));
  }
  std::vector<PlateauPoint> out(b0_grid.size());
  for (std::size_t i = 0; i < b0_grid.size(); ++i) {
    const auto found = spectra[i].physical_states();
    out[i].b0 = b0_grid[i];
    out[i].stable_states = found.size();
    for (const auto& st : found) {
      double d = 0.0;
      if (i > 0) d = std::max(d, nearest_distance(st.energy(), spectra[i - 1]));
      if (i + 1 < b0_grid.size()) d = std::max(d, nearest_distance(st.energy(), spectra[i + 1]));
      out[i].drift = std::max(out[i].drift, d);
    }
  }
  return out;
}

double select_plateau_b0(std::span<const PlateauPoint> scan) {
  if (scan.empty()) throw ArgumentError("empty plateau scan");
  const PlateauPoint* best = &scan[0];
  for (const auto& p : scan) {
    if (p.stable_states > best->stable_states ||
        (p.stable_states == best->stable_states && p.drift < best->drift)) {
      best = &p;
    }
  }
  return best->b0;
}

}  // namespace csm
