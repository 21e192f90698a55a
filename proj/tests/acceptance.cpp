// Acceptance suite: one line per criterion, then a summary line.
//
// Exit status is 0 once every criterion has run, whatever the verdicts, so
// the suite can sit in ctest next to criteria that are known to fail.
// --strict turns any failed criterion into exit status 3.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "csm/basis.hpp"
#include "csm/eig.hpp"
#include "csm/hamiltonian.hpp"
#include "csm/pss.hpp"
#include "csm/reference_data.hpp"
#include "csm/reproduce.hpp"
#include "csm/scan.hpp"
#include "csm/spectrum.hpp"
#include "oracles.hpp"

using namespace csm;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BasisSpec benchmark_basis(double b0, double theta_deg = reference::benchmark_theta_deg, int n_max = reference::benchmark_N_max) {
  BasisSpec s;
  s.N_max = n_max;
  s.b0 = b0;
  s.theta = theta_deg * kDeg;
  return s;
}

void report_column(Verdict& v, const TableReport& r, const std::string& column, const std::string& title) {
  double worst = 0.0;
  int rows = 0;
  for (const auto& c : r.rows) {
    if (c.column != column) continue;
    ++rows;
    worst = std::max(worst, std::max(c.dE_r(), c.dE_i()) / c.tolerance);
    if (!c.pass()) {
      v.info(fmt("%s row %d: computed %.4f%+.4fi, reference %.4f%+.4fi, tolerance %.0e", title.c_str(), c.row,
                 c.computed.real(), c.computed.imag(), c.reference.real(), c.reference.imag(), c.tolerance));
    }
  }
  v.check(r.pass(column), fmt("%s: %d rows, worst deviation %.2f x tolerance", title.c_str(), rows, worst));
}

// Rows matched to an eigenvalue the classifier did not accept as a stable state.
void report_unstable_matches(Verdict& v, const Spectrum& s, const TableReport& r, const std::string& column) {
  int unstable = 0;
  for (const auto& c : r.rows) {
    if (c.column != column) continue;
    for (const auto& p : s.states) {
      if (p.energy == c.computed && p.cls != StateClass::Bound && p.cls != StateClass::Resonance) ++unstable;
    }
  }
  v.info(fmt("%s rows matched to an eigenvalue not classified stable: %d", column.c_str(), unstable));
}

Spectrum table1_rel() {
  static const Spectrum s = benchmark_spectrum(reference::table1_params(), reference::table1_b0, false);
  return s;
}

Verdict criterion1() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const Spectrum rel = benchmark_spectrum(reference::table1_params(), reference::table1_b0, false);
  const double elapsed = seconds_since(t0);
  const TableReport r = compare_table1(rel, rel);
  report_column(v, r, "relativistic", "relativistic column");
  report_unstable_matches(v, rel, r, "relativistic");
  v.check(elapsed < 10.0, fmt("solve time %.2f s (three angles) < 10 s", elapsed));

  const std::vector<double> grid = linspace(0.5, 1.1, 7);
  const auto plateau = b0_plateau_scan(reference::table1_params(), benchmark_basis(reference::table1_b0), grid);
  for (const auto& p : plateau) v.info(fmt("b0 %.2f: %zu stable states, drift %.2e", p.b0, p.stable_states, p.drift));
  const double chosen = select_plateau_b0(plateau);
  v.check(std::abs(chosen - reference::table1_b0) < 1e-12,
          fmt("plateau scan over b0 0.5..1.1 selects %.2f (benchmark uses %.2f)", chosen, reference::table1_b0));
  return v;
}

Verdict criterion2() {
  Verdict v;
  const Spectrum nonrel = benchmark_spectrum(reference::table1_params(), reference::table1_b0, true);
  const TableReport r = compare_table1(table1_rel(), nonrel);
  report_column(v, r, "nonrelativistic", "c x 100 column");
  report_column(v, r, "jmatrix", "J-matrix column");
  return v;
}

Verdict criterion3() {
  Verdict v;
  const Spectrum rel = benchmark_spectrum(reference::table2_params(), reference::table2_b0, false);
  const Spectrum nonrel = benchmark_spectrum(reference::table2_params(), reference::table2_b0, true);
  const TableReport r = compare_table2(rel, nonrel);
  report_column(v, r, "relativistic", "relativistic column");
  report_column(v, r, "nonrelativistic", "c x 100 column");
  report_column(v, r, "jmatrix", "J-matrix column");
  return v;
}

Verdict criterion4() {
  Verdict v;
  const ModelParams p = reference::table1_params();
  std::map<int, Spectrum> at;
  for (int deg : {65, 70, 75}) at.emplace(deg, solve(p, benchmark_basis(reference::table1_b0, deg)));
  const auto states = at.at(70).physical_states();
  double worst = 0.0;
  for (const auto& s : states) {
    for (int deg : {65, 75}) worst = std::max(worst, std::abs(nearest_energy(at.at(deg), s.energy()) - s.energy()));
  }
  v.check(!states.empty() && worst < 1e-4,
          fmt("%zu bound/resonant states, largest drift over 65/70/75 deg %.2e < 1e-4", states.size(), worst));
  for (int deg : {65, 70, 75}) {
    const double dir = continuum_direction(at.at(deg)) / kDeg;
    v.check(std::abs(dir + 2.0 * deg) < 2.0, fmt("theta %d: continuum argument %.2f deg vs %d", deg, dir, -2 * deg));
    v.info(fmt("theta %d: plain mean argument %.2f deg", deg, continuum_mean_argument(at.at(deg)) / kDeg));
  }
  return v;
}

Verdict criterion5() {
  Verdict v;
  ModelParams p = reference::table1_params();
  double worst_kinetic = 0.0;
  for (int kappa : {-3, -1, 2, 4}) {
    p.kappa = kappa;
    const int l = p.l();
    const int lt = p.l_tilde();
    const double b0 = 1.0;
    BasisSpec s;
    s.N_max = 2 * 19 + l + 2;
    s.b0 = b0;
    s.theta = 0.0;
    const ComplexMatrix b = kinetic_block(p, resolve(s, p));
    for (int nt = 1; nt <= 20; ++nt) {
      for (int n = 1; n <= 20; ++n) {
        std::function<double(double)> f = [&](double r) {
          return r * r * ho_radial(nt, lt, b0, r) *
                 (ho_radial_derivative(n, l, b0, r) + (1.0 + kappa) / r * ho_radial(n, l, b0, r));
        };
        const double ref = oracle::integrate(f, 1e-300, 18.0, 1e-14, 96);
        worst_kinetic = std::max(worst_kinetic, std::abs(b(static_cast<std::size_t>(nt - 1), static_cast<std::size_t>(n - 1)) - ref));
      }
    }
  }
  v.check(worst_kinetic < 1e-10,
          fmt("kinetic closed form vs radial integral, n <= 20, kappa -3,-1,2,4: %.2e < 1e-10", worst_kinetic));

  double worst_potential = 0.0;
  for (double deg : {0.0, 70.0}) {
    const ModelParams t1 = reference::table1_params();
    for (int l : {t1.l(), t1.l_tilde()}) {
      BasisSpec s = resolve(benchmark_basis(reference::table1_b0, deg), t1);
      const int n = radial_count(s.N_max, l);
      const ComplexMatrix a = potential_block(t1, s, l, n);
      s.quad_order *= 2;
      const ComplexMatrix b = potential_block(t1, s, l, n);
      double scale = 0.0;
      double diff = 0.0;
      for (std::size_t i = 0; i < a.data().size(); ++i) {
        scale = std::max(scale, std::abs(a.data()[i]));
        diff = std::max(diff, std::abs(a.data()[i] - b.data()[i]));
      }
      worst_potential = std::max(worst_potential, diff / scale);
    }
  }
  v.check(worst_potential < 1e-9,
          fmt("potential blocks vs doubled quadrature order (relative to largest entry): %.2e < 1e-9", worst_potential));

  double worst_eig = 0.0;
  for (unsigned seed = 1; seed <= 20; ++seed) {
    const ComplexMatrix a = oracle::random_complex_symmetric(8, seed * 97u);
    const auto roots = oracle::polynomial_roots(oracle::characteristic_polynomial(a));
    worst_eig = std::max(worst_eig, oracle::multiset_distance(eig_dense(a).eigenvalues, roots));
  }
  v.check(worst_eig < 1e-8, fmt("eigensolver vs characteristic polynomial roots, 20 random 8x8: %.2e < 1e-8", worst_eig));
  return v;
}

Verdict criterion6() {
  Verdict v;
  const Spectrum fine = table1_rel();
  const Spectrum coarse = solve(reference::table1_params(), benchmark_basis(reference::table1_b0, 70.0, 180));
  const auto states = fine.physical_states();
  double worst = 0.0;
  for (const auto& s : states) {
    const double d = std::abs(nearest_energy(coarse, s.energy()) - s.energy());
    if (d >= 1e-4) v.info(fmt("%s %.5f%+.5fi moves %.2e", s.label.c_str(), s.E_r, -0.5 * s.Gamma, d));
    worst = std::max(worst, d);
  }
  v.check(!states.empty() && worst < 1e-4, fmt("%zu states, largest change N_max 180 -> 200: %.2e < 1e-4", states.size(), worst));
  return v;
}

// Expected signs of the first differences of |dE| and |dGamma| along each scan.
struct Trend {
  ScanParameter which;
  int sign_dE;
  int sign_dGamma;
};

Verdict criterion7(Verdict& ladder) {
  Verdict v;
  const std::vector<Trend> trends = {{ScanParameter::V0, +1, -1}, {ScanParameter::r0, -1, -1}, {ScanParameter::alpha, +1, +1}};
  double max_dE = 0.0;
  double max_dGamma = 0.0;
  for (const auto& range : fig5_ranges()) {
    const Trend trend = *std::find_if(trends.begin(), trends.end(), [&](const Trend& t) { return t.which == range.which; });
    int seq_dE = 0, ok_dE = 0, seq_dG = 0, ok_dG = 0;
    for (int kappa_a : {-1, -2, -3, -4}) {
      const std::vector<double> grid = range.grid();
      const auto scan = splitting_scan(reference::pss_params(kappa_a), pss_basis(), range.which, grid, kappa_a);
      // |dE| and |dGamma| per doublet (radial index of the kappa_a member) along the grid.
      std::map<int, std::vector<std::pair<double, double>>> by_index;
      for (const auto& pt : scan) {
        max_dE = std::max(max_dE, pt.report.max_abs_dE());
        max_dGamma = std::max(max_dGamma, pt.report.max_abs_dGamma());
        for (const auto& m : pt.report.members) by_index[m.a.index].push_back({std::abs(m.dE), std::abs(m.dGamma)});
      }
      for (const auto& [index, seq] : by_index) {
        if (seq.size() != grid.size()) continue;
        bool good_e = true, good_g = true;
        for (std::size_t i = 1; i < seq.size(); ++i) {
          good_e = good_e && trend.sign_dE * (seq[i].first - seq[i - 1].first) >= 0.0;
          good_g = good_g && trend.sign_dGamma * (seq[i].second - seq[i - 1].second) >= 0.0;
        }
        ++seq_dE;
        ++seq_dG;
        ok_dE += good_e;
        ok_dG += good_g;
      }
    }
    const std::string name(to_string(range.which));
    v.check(seq_dE > 0 && ok_dE == seq_dE,
            fmt("%s scan: |dE| %s in %d of %d doublets", name.c_str(), trend.sign_dE > 0 ? "rises" : "falls", ok_dE, seq_dE));
    v.check(seq_dG > 0 && ok_dG == seq_dG,
            fmt("%s scan: |dGamma| %s in %d of %d doublets", name.c_str(), trend.sign_dGamma > 0 ? "rises" : "falls", ok_dG, seq_dG));
  }
  v.check(max_dE <= reference::pss_max_dE, fmt("max |dE| %.3f <= %.2f", max_dE, reference::pss_max_dE));
  v.check(max_dGamma <= reference::pss_max_dGamma, fmt("max |dGamma| %.3f <= %.2f", max_dGamma, reference::pss_max_dGamma));

  // Doublets at the base point should draw closer up the radial ladder.
  for (int kappa_a : {-1, -2, -3, -4}) {
    const int kappa_b = 1 - kappa_a;
    const DoubletReport r = pair_doublets(solve(reference::pss_params(kappa_a), pss_basis()),
                                          solve(reference::pss_params(kappa_b), pss_basis()));
    bool e_ok = true, g_ok = true;
    std::string e_seq, g_seq;
    for (std::size_t i = 0; i < r.members.size(); ++i) {
      e_seq += fmt(" %.3f", std::abs(r.members[i].dE));
      g_seq += fmt(" %.3f", std::abs(r.members[i].dGamma));
      if (i == 0) continue;
      e_ok = e_ok && std::abs(r.members[i].dE) <= std::abs(r.members[i - 1].dE);
      g_ok = g_ok && std::abs(r.members[i].dGamma) <= std::abs(r.members[i - 1].dGamma);
    }
    ladder.check(e_ok, fmt("(%d,%d) |dE| non-increasing up the ladder:%s", kappa_a, kappa_b, e_seq.c_str()));
    ladder.check(g_ok, fmt("(%d,%d) |dGamma| non-increasing up the ladder:%s", kappa_a, kappa_b, g_seq.c_str()));
  }
  return v;
}

Verdict criterion8() {
  Verdict v;
  const auto ranges = fig2_ranges();
  const auto r0_range = *std::find_if(ranges.begin(), ranges.end(), [](const ScanRange& r) { return r.which == ScanParameter::r0; });
  const std::vector<double> grid = r0_range.grid();
  const auto t0 = std::chrono::steady_clock::now();
  const auto tracks = scan_parameter(reference::table1_params(), fig2_basis(), ScanParameter::r0, grid);
  int rising = 0;
  for (const auto& t : tracks) {
    std::optional<double> last;
    for (const auto& p : t.points) {
      if (!p) continue;
      if (last && p->Gamma > *last) {
        ++rising;
        v.info(fmt("%s: width rises %.6f -> %.6f", t.key.c_str(), *last, p->Gamma));
      }
      last = p->Gamma;
    }
  }
  v.check(!tracks.empty() && rising == 0, fmt("r0 scan: %zu trajectories, width rises at %d steps", tracks.size(), rising));
  v.check(seconds_since(t0) < 300.0, fmt("r0 scan time %.1f s < 300 s", seconds_since(t0)));

  const Table curves = potential_curves();
  const std::size_t cp = curves.column("panel"), cv = curves.column("V0"), cr0 = curves.column("r0"),
                    ca = curves.column("alpha"), cr = curves.column("r"), cV = curves.column("V");
  struct Curve {
    double r0 = 0.0, alpha = 0.0, at_zero = 0.0, at_r0 = 0.0;
  };
  std::map<double, Curve> panel_a;
  for (const auto& row : curves.rows) {
    if (std::get<std::string>(row[cp]) != "a") continue;
    Curve& c = panel_a[std::get<double>(row[cv])];
    c.r0 = std::get<double>(row[cr0]);
    c.alpha = std::get<double>(row[ca]);
    const double r = std::get<double>(row[cr]);
    if (r == 0.0) c.at_zero = std::get<double>(row[cV]);
    if (std::abs(r - c.r0) < 1e-12) c.at_r0 = std::get<double>(row[cV]);
  }
  bool analytic = true, deepening = true, barrier = true;
  const Curve* prev = nullptr;
  for (const auto& [v0, c] : panel_a) {
    const double e = std::exp(c.alpha * c.r0);
    analytic = analytic && std::abs(c.at_r0 - v0) <= 1e-12 * v0 && std::abs(c.at_zero - v0 * e * (2.0 - e)) <= 1e-12 * v0 * e * e;
    if (prev) {
      deepening = deepening && c.at_zero < prev->at_zero;
      barrier = barrier && c.at_r0 > prev->at_r0;
    }
    prev = &c;
  }
  v.check(panel_a.size() >= 2 && analytic, fmt("potential curves match V(r0) = V0 and V(0) = V0 e^(a r0)(2 - e^(a r0)) (%zu curves)", panel_a.size()));
  v.check(deepening, "well at r = 0 deepens with V0");
  v.check(barrier, "barrier top at r0 rises with V0");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) strict = true;
    else if (std::strcmp(argv[i], "--verbose") == 0 || std::strcmp(argv[i], "-v") == 0) verbose = true;
    else {
      std::fprintf(stderr, "usage: acceptance [--strict] [--verbose]\n");
      return 2;
    }
  }

  Verdict ladder;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"Table 1 relativistic column within a b0 plateau", criterion1},
      {"Table 1 nonrelativistic limit and J-matrix columns", criterion2},
      {"Table 2 relativistic and nonrelativistic columns", criterion3},
      {"theta independence of physical states, continuum rotated by -2 theta", criterion4},
      {"oracle equivalences", criterion5},
      {"N_max 180 -> 200 convergence", criterion6},
      {"pseudospin splitting bounds and trends", [&] { return criterion7(ladder); }},
      {"trajectory widths in r0 and potential shapes in V0", criterion8},
  };

  int passed = 0;
  int ran = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second();
      ++ran;
    } catch (const std::exception& e) {
      v.pass = false;
      v.notes.push_back(std::string("error: ") + e.what());
    }
    passed += v.pass;
    std::printf("[%s] criterion %zu: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), seconds_since(t0));
    for (const auto& n : v.notes) {
      if (verbose || n.rfind("FAIL", 0) == 0 || n.rfind("ok", 0) == 0) std::printf("    %s\n", n.c_str());
    }
    std::fflush(stdout);
  }
  if (!ladder.notes.empty()) {
    std::printf("[%s] supplementary: pseudospin doublets converge up the radial ladder\n", ladder.pass ? "PASS" : "FAIL");
    for (const auto& n : ladder.notes) std::printf("    %s\n", n.c_str());
  }
  std::printf("acceptance: %d of %zu criteria passed\n", passed, criteria.size());
  if (ran < static_cast<int>(criteria.size())) return 1;
  return strict && passed < static_cast<int>(criteria.size()) ? 3 : 0;
}
