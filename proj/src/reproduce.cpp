#include "csm/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "csm/error.hpp"
#include "csm/reference_data.hpp"

namespace csm {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void add_column(TableReport& r, const std::string& name, const Spectrum& s, std::size_t count,
                auto&& reference, auto&& tolerance, std::size_t real_only_row = std::numeric_limits<std::size_t>::max()) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::optional<cplx> ref = reference(i);
    if (!ref) continue;
    Comparison c;
    c.column = name;
    c.row = static_cast<int>(i) + 1;
    c.reference = *ref;
    c.computed = nearest_energy(s, *ref);
    c.tolerance = tolerance(i);
    c.real_only = i == real_only_row;
    r.rows.push_back(c);
  }
}

}  // namespace

bool TableReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const Comparison& c) { return c.pass(); });
}

bool TableReport::pass(const std::string& column) const {
  return std::all_of(rows.begin(), rows.end(), [&](const Comparison& c) { return c.column != column || c.pass(); });
}

std::vector<Comparison> TableReport::failures() const {
  std::vector<Comparison> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [](const Comparison& c) { return !c.pass(); });
  return out;
}

Table comparison_table(const TableReport& r) {
  Table t;
  t.schema = "csm-comparison";
  t.columns = {"column", "row", "E_r", "E_i", "ref_E_r", "ref_E_i", "dE_r", "dE_i", "tolerance", "pass"};
  for (const auto& c : r.rows) {
    t.rows.push_back({c.column, static_cast<long long>(c.row), c.computed.real(), c.computed.imag(),
                      c.reference.real(), c.real_only ? Cell{std::string()} : Cell{c.reference.imag()}, c.dE_r(),
                      c.dE_i(), c.tolerance, std::string(c.pass() ? "pass" : "FAIL")});
  }
  return t;
}

cplx nearest_energy(const Spectrum& s, cplx target) {
  double best = std::numeric_limits<double>::infinity();
  cplx out{std::numeric_limits<double>::quiet_NaN(), 0.0};
  for (const auto& p : s.states) {
    if (p.cls == StateClass::NegativeEnergy) continue;
    const double d = std::abs(p.energy - target);
    if (d < best) {
      best = d;
      out = p.energy;
    }
  }
  return out;
}

Spectrum benchmark_spectrum(const ModelParams& params, double b0, bool nonrel) {
  BasisSpec spec;
  spec.N_max = reference::benchmark_N_max;
  spec.b0 = b0;
  spec.theta = reference::benchmark_theta_deg * kDeg;
  return nonrel ? nonrel_limit(params, spec) : solve(params, spec);
}

TableReport compare_table1(const Spectrum& rel, const Spectrum& nonrel) {
  const auto& t = reference::table1;
  auto tol = [](std::size_t i) { return i < 3 ? 1e-3 : 1e-2; };
  TableReport r;
  add_column(r, "relativistic", rel, t.size(), [&](std::size_t i) { return std::optional<cplx>(t[i].relativistic); }, tol);
  add_column(r, "nonrelativistic", nonrel, t.size(),
             [&](std::size_t i) { return std::optional<cplx>(t[i].nonrelativistic); }, tol);
  add_column(r, "jmatrix", nonrel, t.size(), [&](std::size_t i) { return t[i].jmatrix; },
             [](std::size_t) { return 1e-2; });
  return r;
}

TableReport compare_table2(const Spectrum& rel, const Spectrum& nonrel) {
  const auto& t = reference::table2;
  auto tol = [](std::size_t) { return 5e-2; };
  TableReport r;
  add_column(r, "relativistic", rel, t.size(), [&](std::size_t i) { return std::optional<cplx>(t[i].relativistic); }, tol);
  add_column(r, "nonrelativistic", nonrel, t.size(),
             [&](std::size_t i) { return std::optional<cplx>(t[i].nonrelativistic); }, tol);
  add_column(r, "jmatrix", nonrel, t.size(), [&](std::size_t i) { return t[i].jmatrix; }, tol);
  return r;
}

std::array<ScanRange, 3> fig2_ranges() {
  return {{{ScanParameter::V0, 1.0, 10.0, 10}, {ScanParameter::r0, 3.0, 5.0, 10}, {ScanParameter::alpha, 0.2, 0.4, 10}}};
}

BasisSpec fig2_basis() {
  BasisSpec s;
  s.b0 = fig2_b0;
  s.theta = fig2_theta_deg * kDeg;
  return s;
}

std::array<ScanRange, 3> fig5_ranges() {
  return {{{ScanParameter::V0, 2.0, 16.0, 8}, {ScanParameter::r0, 0.5, 1.5, 11}, {ScanParameter::alpha, 0.35, 0.65, 7}}};
}

BasisSpec pss_basis() {
  BasisSpec s;
  s.b0 = reference::pss_b0;
  s.theta = reference::benchmark_theta_deg * kDeg;
  return s;
}

svg::Panel spectrum_panel(const Spectrum& s, const std::string& title, double window) {
  svg::Panel p;
  p.title = title;
  p.xlabel = "E_r";
  p.ylabel = "E_i";
  svg::Series bound{"bound", {}, svg::Style::OpenMarkers, svg::palette(1)};
  svg::Series res{"resonance", {}, svg::Style::OpenMarkers, svg::palette(2)};
  svg::Series cont{"continuum", {}, svg::Style::Markers, svg::palette(0)};
  for (const auto& q : s.states) {
    if (q.cls == StateClass::NegativeEnergy || std::abs(q.energy) > window) continue;
    const std::pair<double, double> xy{q.energy.real(), q.energy.imag()};
    (q.cls == StateClass::Bound ? bound : q.cls == StateClass::Resonance ? res : cont).points.push_back(xy);
  }
  p.series = {cont, res, bound};
  return p;
}

std::vector<svg::Panel> trajectory_panels(const std::vector<Trajectory>& t, const std::string& unit) {
  if (t.empty()) return {};
  const std::string name(to_string(t.front().which));
  svg::Panel pe{"E_r vs " + name, name, "E_r (" + unit + ")", {}};
  svg::Panel pg{"Gamma vs " + name, name, "Gamma (" + unit + ")", {}};
  for (std::size_t k = 0; k < t.size(); ++k) {
    svg::Series se{"", {}, svg::Style::Line, svg::palette(k)};
    svg::Series sg{"", {}, svg::Style::Line, svg::palette(k)};
    for (std::size_t i = 0; i < t[k].points.size(); ++i) {
      if (!t[k].points[i]) continue;
      se.points.emplace_back(t[k].grid[i], t[k].points[i]->E_r);
      sg.points.emplace_back(t[k].grid[i], t[k].points[i]->Gamma);
    }
    pe.series.push_back(std::move(se));
    pg.series.push_back(std::move(sg));
  }
  return {pe, pg};
}

Table potential_curves(double r_max, int points) {
  Table t;
  t.schema = "csm-potential";
  t.columns = {"panel", "V0", "r0", "alpha", "r", "V"};
  const ModelParams base = reference::table1_params();
  struct Curve {
    std::string panel;
    ScanParameter which;
    double value;
  };
  const std::vector<Curve> curves = {
      {"a", ScanParameter::V0, 1.0},    {"a", ScanParameter::V0, 6.0},    {"a", ScanParameter::V0, 10.0},
      {"b", ScanParameter::r0, 3.0},    {"b", ScanParameter::r0, 4.0},    {"b", ScanParameter::r0, 5.0},
      {"c", ScanParameter::alpha, 0.2}, {"c", ScanParameter::alpha, 0.3}, {"c", ScanParameter::alpha, 0.4},
  };
  for (const auto& c : curves) {
    const ModelParams p = with_parameter(base, c.which, c.value);
    for (double r : linspace(0.0, r_max, points)) {
      t.rows.push_back({c.panel, p.V0, p.r0, p.alpha, r, morse_potential(p, cplx{r, 0.0}).real()});
    }
  }
  return t;
}

std::vector<svg::Panel> potential_panels(const Table& curves) {
  const std::size_t cp = curves.column("panel"), cv = curves.column("V0"), cr0 = curves.column("r0"),
                    ca = curves.column("alpha"), cr = curves.column("r"), cV = curves.column("V");
  std::map<std::string, std::map<std::string, svg::Series>> by_panel;
  for (const auto& row : curves.rows) {
    const std::string panel = text(row[cp]);
    const std::string key = "V0=" + text(row[cv]) + " r0=" + text(row[cr0]) + " alpha=" + text(row[ca]);
    auto& s = by_panel[panel][key];
    s.name = key;
    s.style = svg::Style::Line;
    s.points.emplace_back(number(row[cr]), number(row[cV]));
  }
  std::vector<svg::Panel> out;
  for (auto& [panel, series] : by_panel) {
    svg::Panel p{"(" + panel + ")", "r (fm)", "V (fm^-2)", {}};
    std::size_t k = 0;
    for (auto& [key, s] : series) {
      s.color = svg::palette(k++);
      p.series.push_back(s);
    }
    out.push_back(std::move(p));
  }
  return out;
}

svg::Panel doublet_panel(const DoubletReport& r) {
  svg::Panel p;
  p.title = "kappa = " + std::to_string(r.kappa_a) + " and " + std::to_string(r.kappa_b);
  p.xlabel = "E_r (au)";
  p.ylabel = "E_i (au)";
  svg::Series a{"kappa=" + std::to_string(r.kappa_a), {}, svg::Style::Markers, svg::palette(0)};
  svg::Series b{"kappa=" + std::to_string(r.kappa_b), {}, svg::Style::OpenMarkers, svg::palette(1)};
  for (const auto& m : r.members) {
    a.points.emplace_back(m.a.E_r, -0.5 * m.a.Gamma);
    b.points.emplace_back(m.b.E_r, -0.5 * m.b.Gamma);
  }
  for (const auto& u : r.unpaired_a) a.points.emplace_back(u.E_r, -0.5 * u.Gamma);
  for (const auto& u : r.unpaired_b) b.points.emplace_back(u.E_r, -0.5 * u.Gamma);
  p.series = {a, b};
  return p;
}

std::vector<svg::Panel> splitting_panels(ScanParameter which, const std::vector<SplittingPoint>& scan) {
  const std::string name(to_string(which));
  svg::Panel pe{"dE vs " + name, name, "dE (au)", {}};
  svg::Panel pg{"dGamma vs " + name, name, "dGamma (au)", {}};
  std::map<int, std::pair<svg::Series, svg::Series>> by_index;
  for (const auto& pt : scan) {
    for (const auto& m : pt.report.members) {
      auto& [se, sg] = by_index[m.a.index];
      se.points.emplace_back(pt.value, m.dE);
      sg.points.emplace_back(pt.value, m.dGamma);
    }
  }
  std::size_t k = 0;
  for (auto& [n, s] : by_index) {
    s.first.name = s.second.name = "n=" + std::to_string(n);
    s.first.style = s.second.style = svg::Style::Line;
    s.first.color = s.second.color = svg::palette(k++);
    pe.series.push_back(s.first);
    pg.series.push_back(s.second);
  }
  return {pe, pg};
}

}  // namespace csm
