#include "csm/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "csm/error.hpp"
#include "csm/hamiltonian.hpp"
#include "csm/io.hpp"
#include "csm/pss.hpp"
#include "csm/reference_data.hpp"
#include "csm/reproduce.hpp"
#include "csm/scan.hpp"
#include "csm/spectrum.hpp"
#include "csm/svg.hpp"

namespace csm {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct RunConfig {
  std::string units = "au";
  double V0 = 0.0;
  double r0 = 0.0;
  double alpha = 0.0;
  double M = 1.0;
  int kappa = 0;
  double theta_deg = 70.0;
  int N_max = 200;
  double b0 = 0.0;
  int quad_order = 0;
  double c_factor = 1.0;
  std::string out = "-";
  std::string format = "csv";
  std::string precision = "auto";
  double bound_tol = Thresholds{}.bound_tol;
  double stab_tol = Thresholds{}.stab_tol;
  double companion_deg = 5.0;

  std::string param = "V0";
  double from = 0.0;
  double to = 0.0;
  int points = 10;
  bool scan_requested = false;

  double b0_from = 0.3;
  double b0_to = 1.0;
  int b0_points = 8;

  std::string which;
  std::string out_dir = ".";

  [[nodiscard]] ModelParams params() const {
    ModelParams p;
    p.units = parse_unit_system(units);
    p.V0 = V0;
    p.r0 = r0;
    p.alpha = alpha;
    p.M = M;
    p.kappa = kappa;
    p.c_factor = c_factor;
    p.validate();
    return p;
  }

  [[nodiscard]] BasisSpec spec() const {
    BasisSpec s;
    s.N_max = N_max;
    s.b0 = b0;
    s.theta = theta_deg * kDeg;
    s.quad_order = quad_order;
    return s;
  }

  [[nodiscard]] SolveOptions options() const {
    SolveOptions o;
    o.thresholds.bound_tol = bound_tol;
    o.thresholds.stab_tol = stab_tol;
    o.companion_offsets = {-companion_deg * kDeg, companion_deg * kDeg};
    if (precision == "double") o.precision = Precision::Double;
    if (precision == "extended") o.precision = Precision::Extended;
    return o;
  }
};

void add_model_options(CLI::App* app, RunConfig& cfg, bool kappa_required = true) {
  app->add_option("--units", cfg.units, "Unit system")->check(CLI::IsMember({"fm", "au"}))->capture_default_str();
  app->add_option("--V0", cfg.V0, "Potential strength (fm^-2 times 2M, or hartree)")->required();
  app->add_option("--r0", cfg.r0, "Equilibrium distance")->required();
  app->add_option("--alpha", cfg.alpha, "Decay-length parameter, > 0")->required();
  app->add_option("--M", cfg.M, "Particle mass (fm^-1, or 1 in au)")->capture_default_str();
  auto* k = app->add_option("--kappa", cfg.kappa, "Dirac quantum number, nonzero");
  if (kappa_required) k->required();
  app->add_option("--theta", cfg.theta_deg, "Rotation angle, degrees")->capture_default_str();
  app->add_option("--Nmax", cfg.N_max, "Major-shell cutoff (even)")->capture_default_str();
  app->add_option("--b0", cfg.b0, "Oscillator length (default: heuristic)")->check(CLI::PositiveNumber);
  app->add_option("--quad-order", cfg.quad_order, "Radial quadrature nodes (default 2 n_max + 40)");
  app->add_option("--c-factor", cfg.c_factor, "Speed-of-light multiplier")->capture_default_str();
  app->add_option("--precision", cfg.precision, "QR working precision")
      ->check(CLI::IsMember({"auto", "double", "extended"}))
      ->capture_default_str();
  app->add_option("--bound-tol", cfg.bound_tol, "Largest |E_i| of a bound state")->capture_default_str();
  app->add_option("--stab-tol", cfg.stab_tol, "Largest theta displacement of a stable state")->capture_default_str();
  app->add_option("--companion", cfg.companion_deg, "Offset of the stability angles, degrees")->capture_default_str();
}

void add_output_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--out", cfg.out, "Output file, '-' for stdout")->capture_default_str();
  app->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary);
    if (!file_) throw ArgumentError("cannot open '" + path + "' for writing");
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

void emit(const RunConfig& cfg, std::ostream& out, const Table& table, const std::vector<svg::Panel>& panels,
          int columns = 2) {
  Output o(cfg.out, out);
  if (cfg.format == "csv") {
    write_csv(o.get(), table);
  } else if (cfg.format == "json") {
    write_json(o.get(), table);
  } else {
    o.get() << svg::render(panels, columns);
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open '" + path.string() + "' for writing");
  f << content;
}

std::string render_table(const Table& t, const std::string& format) {
  std::ostringstream s;
  if (format == "json") {
    write_json(s, t);
  } else {
    write_csv(s, t);
  }
  return s.str();
}

std::string unit_name(const ModelParams& p) { return p.units == UnitSystem::NaturalFm ? "fm^-2" : "au"; }

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p = cfg.params();
  const Spectrum s = solve(p, cfg.spec(), cfg.options());
  emit(cfg, out, spectrum_table(s), {spectrum_panel(s, "kappa = " + std::to_string(p.kappa), 100.0)}, 1);
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p = cfg.params();
  const ScanParameter which = parse_scan_parameter(cfg.param);
  const auto grid = linspace(cfg.from, cfg.to, cfg.points);
  const auto traj = scan_parameter(p, cfg.spec(), which, grid, cfg.options());
  emit(cfg, out, trajectory_table(traj), trajectory_panels(traj, unit_name(p)));
  return kExitOk;
}

int cmd_pss(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p = cfg.params();
  check_pseudospin_partners(p.kappa, 1 - p.kappa);
  if (cfg.scan_requested) {
    const ScanParameter which = parse_scan_parameter(cfg.param);
    const auto grid = linspace(cfg.from, cfg.to, cfg.points);
    const auto scan = splitting_scan(p, cfg.spec(), which, grid, p.kappa, cfg.options());
    emit(cfg, out, splitting_table(which, scan), splitting_panels(which, scan));
    return kExitOk;
  }
  ModelParams pb = p;
  pb.kappa = 1 - p.kappa;
  const DoubletReport r = pair_doublets(solve(p, cfg.spec(), cfg.options()), solve(pb, cfg.spec(), cfg.options()));
  emit(cfg, out, doublet_table(r), {doublet_panel(r)}, 1);
  return kExitOk;
}

int cmd_plateau(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p = cfg.params();
  const auto grid = linspace(cfg.b0_from, cfg.b0_to, cfg.b0_points);
  const auto scan = b0_plateau_scan(p, cfg.spec(), grid, cfg.options());
  svg::Panel panel{"b0 plateau", "b0", "drift", {}};
  svg::Series s{"drift", {}, svg::Style::Line, svg::palette(0)};
  for (const auto& pt : scan) s.points.emplace_back(pt.b0, pt.drift);
  panel.series.push_back(s);
  emit(cfg, out, plateau_table(scan), {panel}, 1);
  return kExitOk;
}

int cmd_dump(const RunConfig& cfg, std::ostream& out) {
  const ModelParams p = cfg.params();
  const BasisSpec s = resolve(cfg.spec(), p);
  Output o(cfg.out, out);
  write_matrix_dump(o.get(), assemble(p, s));
  return kExitOk;
}

int report_table(const std::string& name, const TableReport& r, const RunConfig& cfg, std::ostream& out,
                 std::ostream& err) {
  const std::filesystem::path file = std::filesystem::path(cfg.out_dir) / (name + (cfg.format == "json" ? ".json" : ".csv"));
  write_file(file, render_table(comparison_table(r), cfg.format));
  const auto failures = r.failures();
  out << name << ": " << r.rows.size() - failures.size() << "/" << r.rows.size() << " rows within tolerance -> "
      << file.string() << '\n';
  if (failures.empty()) return kExitOk;
  for (const auto& f : failures) {
    err << name << " " << f.column << " row " << f.row << ": computed " << f.computed.real() << " " << f.computed.imag()
        << "i, reference " << f.reference.real() << " " << f.reference.imag() << "i, |dE_r| " << f.dE_r()
        << ", |dE_i| " << f.dE_i() << " > " << f.tolerance << '\n';
  }
  return kExitTolerance;
}

int cmd_reproduce(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  const std::string& w = cfg.which;
  if (w == "table1" || w == "table2") {
    const bool one = w == "table1";
    const ModelParams p = one ? reference::table1_params() : reference::table2_params();
    const double b0 = one ? reference::table1_b0 : reference::table2_b0;
    const Spectrum rel = benchmark_spectrum(p, b0, false);
    const Spectrum nonrel = benchmark_spectrum(p, b0, true);
    return report_table(w, one ? compare_table1(rel, nonrel) : compare_table2(rel, nonrel), cfg, out, err);
  }
  if (w == "fig1") {
    const Spectrum s = benchmark_spectrum(reference::table1_params(), reference::table1_b0, false);
    write_file(dir / "fig1.csv", render_table(spectrum_table(s), "csv"));
    write_file(dir / "fig1.svg", svg::render({spectrum_panel(s, "kappa = -1, theta = 70 deg", 60.0)}, 1));
  } else if (w == "fig2") {
    Table all;
    std::vector<svg::Panel> panels;
    for (const auto& range : fig2_ranges()) {
      const auto traj = scan_parameter(reference::table1_params(), fig2_basis(), range.which, range.grid());
      Table t = trajectory_table(traj);
      if (all.columns.empty()) {
        all = std::move(t);
      } else {
        all.rows.insert(all.rows.end(), t.rows.begin(), t.rows.end());
      }
      for (auto& p : trajectory_panels(traj, "fm^-2")) panels.push_back(std::move(p));
    }
    write_file(dir / "fig2.csv", render_table(all, "csv"));
    write_file(dir / "fig2.svg", svg::render(panels, 2));
  } else if (w == "fig3") {
    const Table curves = potential_curves();
    write_file(dir / "fig3.csv", render_table(curves, "csv"));
    write_file(dir / "fig3.svg", svg::render(potential_panels(curves), 3));
  } else if (w == "fig4") {
    Table all;
    std::vector<svg::Panel> panels;
    for (int ka = -1; ka >= -4; --ka) {
      const DoubletReport r = pair_doublets(solve(reference::pss_params(ka), pss_basis()),
                                            solve(reference::pss_params(1 - ka), pss_basis()));
      Table t = doublet_table(r);
      if (all.columns.empty()) {
        all = std::move(t);
      } else {
        all.rows.insert(all.rows.end(), t.rows.begin(), t.rows.end());
      }
      panels.push_back(doublet_panel(r));
    }
    write_file(dir / "fig4.csv", render_table(all, "csv"));
    write_file(dir / "fig4.svg", svg::render(panels, 2));
  } else if (w == "fig5") {
    Table all;
    std::vector<svg::Panel> panels;
    for (const auto& range : fig5_ranges()) {
      const auto scan = splitting_scan(reference::pss_params(-1), pss_basis(), range.which, range.grid(), -1);
      Table t = splitting_table(range.which, scan);
      if (all.columns.empty()) {
        all = std::move(t);
      } else {
        all.rows.insert(all.rows.end(), t.rows.begin(), t.rows.end());
      }
      for (auto& p : splitting_panels(range.which, scan)) panels.push_back(std::move(p));
    }
    write_file(dir / "fig5.csv", render_table(all, "csv"));
    write_file(dir / "fig5.svg", svg::render(panels, 2));
  } else {
    throw ArgumentError("unknown reproduction target '" + w + "'");
  }
  out << w << ": wrote " << (dir / (w + ".csv")).string() << " and " << (dir / (w + ".svg")).string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Dirac resonances in a Morse potential by complex scaling in an oscillator basis", "morse_csm"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "Spectrum of H_theta with bound/resonance/continuum labels");
  add_model_options(solve_cmd, cfg);
  add_output_options(solve_cmd, cfg);

  auto* scan_cmd = app.add_subcommand("scan", "Resonance trajectories over a parameter grid");
  add_model_options(scan_cmd, cfg);
  add_output_options(scan_cmd, cfg);
  scan_cmd->add_option("--param", cfg.param, "Scanned parameter")->check(CLI::IsMember({"V0", "r0", "alpha"}))->required();
  scan_cmd->add_option("--from", cfg.from, "First grid value")->required();
  scan_cmd->add_option("--to", cfg.to, "Last grid value")->required();
  scan_cmd->add_option("--points", cfg.points, "Grid size")->capture_default_str();

  auto* pss_cmd = app.add_subcommand("pss", "Pseudospin doublets of kappa (< 0) and 1 - kappa");
  add_model_options(pss_cmd, cfg);
  add_output_options(pss_cmd, cfg);
  auto* pss_param = pss_cmd->add_option("--param", cfg.param, "Scan this parameter instead of a single point")
                        ->check(CLI::IsMember({"V0", "r0", "alpha"}));
  auto* pss_from = pss_cmd->add_option("--from", cfg.from, "First grid value");
  auto* pss_to = pss_cmd->add_option("--to", cfg.to, "Last grid value");
  pss_cmd->add_option("--points", cfg.points, "Grid size")->capture_default_str();
  pss_param->needs(pss_from)->needs(pss_to);
  pss_from->needs(pss_param);
  pss_to->needs(pss_param);

  auto* plateau_cmd = app.add_subcommand("plateau", "Sweep b0 and report the drift of the physical states");
  add_model_options(plateau_cmd, cfg);
  add_output_options(plateau_cmd, cfg);
  plateau_cmd->add_option("--b0-from", cfg.b0_from, "Smallest b0")->capture_default_str();
  plateau_cmd->add_option("--b0-to", cfg.b0_to, "Largest b0")->capture_default_str();
  plateau_cmd->add_option("--b0-points", cfg.b0_points, "Number of b0 values")->capture_default_str();

  auto* dump_cmd = app.add_subcommand("dump-matrix", "Write H_theta as 'row col re im' lines");
  add_model_options(dump_cmd, cfg);
  dump_cmd->add_option("--out", cfg.out, "Output file, '-' for stdout")->capture_default_str();

  auto* repro_cmd = app.add_subcommand("reproduce", "Regenerate a benchmark table or figure");
  repro_cmd->add_option("which", cfg.which, "table1, table2, fig1 ... fig5")
      ->check(CLI::IsMember({"table1", "table2", "fig1", "fig2", "fig3", "fig4", "fig5"}))
      ->required();
  repro_cmd->add_option("--out-dir", cfg.out_dir, "Directory for the emitted files")->capture_default_str();
  repro_cmd->add_option("--format", cfg.format, "Format of table comparison files")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.scan_requested = pss_param->count() > 0;

  try {
    if (*solve_cmd) return cmd_solve(cfg, out);
    if (*scan_cmd) return cmd_scan(cfg, out);
    if (*pss_cmd) return cmd_pss(cfg, out);
    if (*plateau_cmd) return cmd_plateau(cfg, out);
    if (*dump_cmd) return cmd_dump(cfg, out);
    if (*repro_cmd) return cmd_reproduce(cfg, out, err);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace csm
